"""Parsing of knowledge-base documents written in a small RDF/XML dialect.

Two document shapes are recognized:

* **Schema documents** -- an ``rdf:RDF`` root containing ``rdfs:Class``
  elements (optionally carrying ``rdfs:subClassOf`` children) and
  ``rdf:Property`` elements (carrying ``rdfs:domain`` / ``rdfs:range``
  children).  A single class or property element may also stand alone as
  the document root.
* **Instance documents** -- a single root element whose name is the class
  of the instance, with an ``rdf:ID`` attribute and one child element per
  property assertion.  A child either holds literal text or points at
  another resource through ``rdf:resource="#name"``.

The dialect is strict.  Namespace URIs must equal `RDF_NS` / `RDFS_NS`
exactly, identifiers are introduced with ``rdf:ID`` only (``rdf:about``
is rejected), and any element or attribute outside the dialect raises
`UnknownConstructError` instead of being skipped.  ``xml:base`` is
accepted and ignored; references are resolved by their fragment alone,
so every ``rdf:resource`` value must have the form ``#name``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from xml.parsers import expat
from xml.sax.saxutils import escape, quoteattr

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XML_NS = "http://www.w3.org/XML/1998/namespace"

# Names: word characters or hyphens, no whitespace. Compared case-insensitively.
NAME_RE = re.compile(r"[\w-]+")
_FRAGMENT_REF_RE = re.compile(r"#([\w-]+)")

# Placeholder vocabulary namespace used when serializing; parsing never
# records the domain namespace, so any URI round-trips.
DEFAULT_DOMAIN_NS = "http://example.org/kb#"


def name_key(name: str) -> str:
    """Canonical form of a name for case-insensitive comparison."""
    return name.casefold()


def is_valid_name(text: str) -> bool:
    return bool(NAME_RE.fullmatch(text))


@dataclass(frozen=True)
class Source:
    """Location of a declaration: document id plus 1-based line span."""

    doc_id: str
    line_start: int
    line_end: int


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class ResourceRef:
    target: str


Value = Literal | ResourceRef


@dataclass(frozen=True)
class Assertion:
    property: str
    value: Value


@dataclass(frozen=True)
class ClassDecl:
    name: str
    source: Source = field(compare=False)


@dataclass(frozen=True)
class SubclassLink:
    child: str
    parent: str
    source: Source = field(compare=False)


@dataclass(frozen=True)
class PropertyDecl:
    name: str
    domains: tuple[str, ...]
    ranges: tuple[str, ...]
    source: Source = field(compare=False)


@dataclass(frozen=True)
class InstanceDecl:
    id: str
    class_name: str
    assertions: tuple[Assertion, ...]
    source: Source = field(compare=False)


Declaration = ClassDecl | SubclassLink | PropertyDecl | InstanceDecl


class ParseError(Exception):
    """A document could not be parsed into declarations."""

    def __init__(self, message: str, doc_id: str, line: int | None = None):
        self.doc_id = doc_id
        self.line = line
        where = doc_id if line is None else f"{doc_id}:{line}"
        super().__init__(f"{where}: {message}")


class MalformedXmlError(ParseError):
    """The input is not well-formed XML."""


class UnknownConstructError(ParseError):
    """An element, attribute, or text node falls outside the dialect."""


class MissingIdError(ParseError):
    """A class, property, or instance element lacks a usable rdf:ID."""


class BadReferenceError(ParseError):
    """An rdf:resource value is missing or not of the form ``#name``."""


class _Node:
    """Minimal element-tree node with namespace-split names and line spans."""

    __slots__ = ("ns", "local", "attrs", "text", "children", "line_start", "line_end")

    def __init__(self, ns: str, local: str, attrs: dict[tuple[str, str], str], line: int):
        self.ns = ns
        self.local = local
        self.attrs = attrs
        self.text = ""
        self.children: list[_Node] = []
        self.line_start = line
        self.line_end = line


def _split_ns(name: str) -> tuple[str, str]:
    ns, _, local = name.rpartition(" ")
    return ns, local


def _read_tree(text: str, doc_id: str) -> _Node:
    parser = expat.ParserCreate(namespace_separator=" ")
    parser.buffer_text = True
    parser.SetParamEntityParsing(expat.XML_PARAM_ENTITY_PARSING_NEVER)

    root: list[_Node] = []
    stack: list[_Node] = []

    def start(name: str, attrs: dict[str, str]) -> None:
        ns, local = _split_ns(name)
        node = _Node(ns, local, {_split_ns(k): v for k, v in attrs.items()},
                     parser.CurrentLineNumber)
        if stack:
            stack[-1].children.append(node)
        else:
            root.append(node)
        stack.append(node)

    def end(name: str) -> None:
        stack[-1].line_end = parser.CurrentLineNumber
        stack.pop()

    def chars(data: str) -> None:
        if stack:
            stack[-1].text += data

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars

    try:
        parser.Parse(text, True)
    except expat.ExpatError as exc:
        raise MalformedXmlError(expat.errors.messages[exc.code], doc_id, exc.lineno) from exc
    if not root:
        raise MalformedXmlError("document has no root element", doc_id)
    return root[0]


def _source(node: _Node, doc_id: str) -> Source:
    return Source(doc_id, node.line_start, node.line_end)


def _describe(node: _Node) -> str:
    return f"{{{node.ns}}}{node.local}" if node.ns else node.local


def _check_attrs(node: _Node, doc_id: str, allowed: set[tuple[str, str]]) -> None:
    for (ns, local) in node.attrs:
        if ns == XML_NS:
            continue  # xml:base and friends are accepted and ignored
        if (ns, local) not in allowed:
            attr = f"{{{ns}}}{local}" if ns else local
            raise UnknownConstructError(
                f"attribute {attr} is not part of the dialect on <{_describe(node)}>",
                doc_id, node.line_start)


def _check_no_text(node: _Node, doc_id: str) -> None:
    if node.text.strip():
        raise UnknownConstructError(
            f"unexpected text content inside <{_describe(node)}>",
            doc_id, node.line_start)


# The attribute set for elements that are named by _require_id: rdf:about
# is let through the generic attribute check so it gets the pointed error.
_ID_ATTRS = {(RDF_NS, "ID"), (RDF_NS, "about")}


def _require_id(node: _Node, doc_id: str) -> str:
    if (RDF_NS, "about") in node.attrs:
        raise MissingIdError(
            f"<{_describe(node)}> uses rdf:about, which is not supported; "
            "use rdf:ID", doc_id, node.line_start)
    value = node.attrs.get((RDF_NS, "ID"))
    if value is None:
        raise MissingIdError(
            f"<{_describe(node)}> has no rdf:ID", doc_id, node.line_start)
    if not is_valid_name(value):
        raise MissingIdError(
            f"rdf:ID {value!r} is not a valid name", doc_id, node.line_start)
    return value


def _require_ref(node: _Node, doc_id: str) -> str:
    value = node.attrs.get((RDF_NS, "resource"))
    if value is None:
        raise BadReferenceError(
            f"<{_describe(node)}> is missing rdf:resource", doc_id, node.line_start)
    match = _FRAGMENT_REF_RE.fullmatch(value)
    if match is None:
        raise BadReferenceError(
            f"rdf:resource {value!r} is not of the form \"#name\"",
            doc_id, node.line_start)
    return match.group(1)


def _parse_class(node: _Node, doc_id: str) -> list[Declaration]:
    _check_attrs(node, doc_id, _ID_ATTRS)
    _check_no_text(node, doc_id)
    name = _require_id(node, doc_id)
    decls: list[Declaration] = [ClassDecl(name, _source(node, doc_id))]
    for child in node.children:
        if (child.ns, child.local) == (RDFS_NS, "subClassOf"):
            _check_attrs(child, doc_id, {(RDF_NS, "resource")})
            _check_no_text(child, doc_id)
            if child.children:
                raise UnknownConstructError(
                    "rdfs:subClassOf must be empty", doc_id, child.line_start)
            decls.append(SubclassLink(name, _require_ref(child, doc_id),
                                      _source(child, doc_id)))
        else:
            raise UnknownConstructError(
                f"<{_describe(child)}> is not allowed inside rdfs:Class",
                doc_id, child.line_start)
    return decls


def _parse_property(node: _Node, doc_id: str) -> PropertyDecl:
    _check_attrs(node, doc_id, _ID_ATTRS)
    _check_no_text(node, doc_id)
    name = _require_id(node, doc_id)
    domains: list[str] = []
    ranges: list[str] = []
    for child in node.children:
        if (child.ns, child.local) == (RDFS_NS, "domain"):
            bucket = domains
        elif (child.ns, child.local) == (RDFS_NS, "range"):
            bucket = ranges
        else:
            raise UnknownConstructError(
                f"<{_describe(child)}> is not allowed inside rdf:Property",
                doc_id, child.line_start)
        _check_attrs(child, doc_id, {(RDF_NS, "resource")})
        _check_no_text(child, doc_id)
        if child.children:
            raise UnknownConstructError(
                f"rdfs:{child.local} must be empty", doc_id, child.line_start)
        bucket.append(_require_ref(child, doc_id))
    return PropertyDecl(name, tuple(domains), tuple(ranges), _source(node, doc_id))


def _parse_instance(node: _Node, doc_id: str) -> InstanceDecl:
    if not is_valid_name(node.local):
        raise UnknownConstructError(
            f"element name {node.local!r} is not a valid class name",
            doc_id, node.line_start)
    _check_attrs(node, doc_id, _ID_ATTRS)
    _check_no_text(node, doc_id)
    instance_id = _require_id(node, doc_id)
    assertions: list[Assertion] = []
    for child in node.children:
        if child.ns in (RDF_NS, RDFS_NS):
            raise UnknownConstructError(
                f"<{_describe(child)}> is not a property assertion",
                doc_id, child.line_start)
        if not is_valid_name(child.local):
            raise UnknownConstructError(
                f"element name {child.local!r} is not a valid property name",
                doc_id, child.line_start)
        if child.children:
            raise UnknownConstructError(
                "property assertions cannot contain nested elements",
                doc_id, child.line_start)
        _check_attrs(child, doc_id, {(RDF_NS, "resource")})
        if (RDF_NS, "resource") in child.attrs:
            if child.text.strip():
                raise BadReferenceError(
                    f"<{child.local}> carries both rdf:resource and text",
                    doc_id, child.line_start)
            value: Value = ResourceRef(_require_ref(child, doc_id))
        else:
            value = Literal(child.text.strip())
        assertions.append(Assertion(child.local, value))
    return InstanceDecl(instance_id, node.local, tuple(assertions),
                        _source(node, doc_id))


def parse_document(text: str, doc_id: str = "<string>") -> list[Declaration]:
    """Parse one document into declarations, in document order.

    Schema documents yield class declarations, subclass links, and property
    declarations; instance documents yield exactly one instance declaration
    whose assertions preserve child-element order.
    """
    root = _read_tree(text, doc_id)
    if (root.ns, root.local) == (RDF_NS, "RDF"):
        _check_attrs(root, doc_id, set())
        _check_no_text(root, doc_id)
        decls: list[Declaration] = []
        for child in root.children:
            if (child.ns, child.local) == (RDFS_NS, "Class"):
                decls.extend(_parse_class(child, doc_id))
            elif (child.ns, child.local) == (RDF_NS, "Property"):
                decls.append(_parse_property(child, doc_id))
            else:
                raise UnknownConstructError(
                    f"<{_describe(child)}> is not allowed inside rdf:RDF",
                    doc_id, child.line_start)
        return decls
    if (root.ns, root.local) == (RDFS_NS, "Class"):
        return _parse_class(root, doc_id)
    if (root.ns, root.local) == (RDF_NS, "Property"):
        return [_parse_property(root, doc_id)]
    if root.ns in (RDF_NS, RDFS_NS):
        raise UnknownConstructError(
            f"<{_describe(root)}> cannot be a document root", doc_id, root.line_start)
    return [_parse_instance(root, doc_id)]


def _check_serializable_name(text: str) -> str:
    if not is_valid_name(text):
        raise ValueError(f"{text!r} is not a serializable name")
    return text


def serialize_document(decls: list[Declaration] | tuple[Declaration, ...],
                       domain_ns: str = DEFAULT_DOMAIN_NS) -> str:
    """Render declarations back to dialect syntax.

    A single instance declaration becomes an instance document; any other
    list becomes a schema document.  Subclass links must directly follow
    the class declaration they belong to, which is how `parse_document`
    always emits them.  Re-parsing the output yields declarations equal to
    the input (sources aside).
    """
    decls = list(decls)
    if any(isinstance(d, InstanceDecl) for d in decls):
        if len(decls) != 1:
            raise ValueError("an instance document holds exactly one instance")
        return _serialize_instance(decls[0], domain_ns)

    lines = [
        '<?xml version="1.0"?>',
        "<rdf:RDF",
        f'    xmlns:rdf={quoteattr(RDF_NS)}',
        f'    xmlns:rdfs={quoteattr(RDFS_NS)}>',
    ]
    i = 0
    while i < len(decls):
        decl = decls[i]
        if isinstance(decl, ClassDecl):
            name = _check_serializable_name(decl.name)
            links: list[SubclassLink] = []
            while (i + 1 < len(decls)
                   and isinstance(decls[i + 1], SubclassLink)
                   and name_key(decls[i + 1].child) == name_key(name)):
                links.append(decls[i + 1])
                i += 1
            if links:
                lines.append(f'  <rdfs:Class rdf:ID="{name}">')
                for link in links:
                    parent = _check_serializable_name(link.parent)
                    lines.append(f'    <rdfs:subClassOf rdf:resource="#{parent}"/>')
                lines.append("  </rdfs:Class>")
            else:
                lines.append(f'  <rdfs:Class rdf:ID="{name}"/>')
        elif isinstance(decl, PropertyDecl):
            name = _check_serializable_name(decl.name)
            if not decl.domains and not decl.ranges:
                lines.append(f'  <rdf:Property rdf:ID="{name}"/>')
            else:
                lines.append(f'  <rdf:Property rdf:ID="{name}">')
                for domain in decl.domains:
                    lines.append(f'    <rdfs:domain rdf:resource='
                                 f'"#{_check_serializable_name(domain)}"/>')
                for rng in decl.ranges:
                    lines.append(f'    <rdfs:range rdf:resource='
                                 f'"#{_check_serializable_name(rng)}"/>')
                lines.append("  </rdf:Property>")
        elif isinstance(decl, SubclassLink):
            raise ValueError(
                f"subclass link {decl.child}->{decl.parent} does not follow "
                "its class declaration")
        else:
            raise ValueError(f"cannot serialize {type(decl).__name__}")
        i += 1
    lines.append("</rdf:RDF>")
    return "\n".join(lines) + "\n"


def _serialize_instance(decl: InstanceDecl, domain_ns: str) -> str:
    cls = _check_serializable_name(decl.class_name)
    instance_id = _check_serializable_name(decl.id)
    head = (f'<{cls} rdf:ID="{instance_id}"\n'
            f'    xmlns:rdf={quoteattr(RDF_NS)}\n'
            f'    xmlns={quoteattr(domain_ns)}')
    if not decl.assertions:
        return f'<?xml version="1.0"?>\n{head}/>\n'
    lines = ['<?xml version="1.0"?>', head + ">"]
    for assertion in decl.assertions:
        prop = _check_serializable_name(assertion.property)
        if isinstance(assertion.value, ResourceRef):
            target = _check_serializable_name(assertion.value.target)
            lines.append(f'  <{prop} rdf:resource="#{target}"/>')
        else:
            lines.append(f"  <{prop}>{escape(assertion.value.text)}</{prop}>")
    lines.append(f"</{cls}>")
    return "\n".join(lines) + "\n"

"""In-memory knowledge base built from parsed declarations.

`build` folds declarations from any number of documents into a
`KnowledgeBase`: a forest of classes (each class has at most one parent),
a property table keyed by name, and an instance table keyed by id.  All
names are compared case-insensitively; the first spelling seen (smallest
by case-folded then raw comparison) is kept for display.

Validation is eager and total: `build` collects every problem it can
find and raises `ValidationError` carrying the full list, so a bad
knowledge base reports all of its defects in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .rdf_parser import (
    Assertion,
    ClassDecl,
    Declaration,
    InstanceDecl,
    Literal,
    PropertyDecl,
    ResourceRef,
    Source,
    SubclassLink,
    name_key,
)

# Issue kinds, in the order build checks for them.
CYCLE = "cycle"
UNDEFINED_REFERENCE = "undefined_reference"
DUPLICATE_ID = "duplicate_id"
DOMAIN_VIOLATION = "domain_violation"
MULTIPLE_PARENTS = "multiple_parents"


@dataclass(frozen=True)
class Issue:
    kind: str
    message: str
    source: Source | None = None

    def render(self) -> str:
        if self.source is None:
            return f"[{self.kind}] {self.message}"
        src = self.source
        return f"[{self.kind}] {src.doc_id}:{src.line_start}: {self.message}"


class ValidationError(Exception):
    """The declarations do not form a consistent knowledge base."""

    def __init__(self, issues: list[Issue]):
        self.issues = issues
        summary = "; ".join(issue.render() for issue in issues)
        super().__init__(f"{len(issues)} problem(s): {summary}")


class UnknownClassError(LookupError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown class: {name}")


class UnknownInstanceError(LookupError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown instance: {name}")


class UnknownPropertyError(LookupError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown property: {name}")


@dataclass(frozen=True)
class PropertyDef:
    name: str
    domains: tuple[str, ...]
    ranges: tuple[str, ...]


@dataclass(frozen=True)
class InstanceRecord:
    id: str
    class_name: str
    assertions: tuple[Assertion, ...]


@dataclass(frozen=True)
class PropertyMatch:
    """Properties found at one (domain_level, range_level) pair.

    Levels count upward steps from the starting classes: level 0 is the
    class itself, level 1 its parent, and so on.  When several properties
    connect the same pair of levels they are reported together, sorted
    by name.
    """

    properties: tuple[PropertyDef, ...]
    domain_level: int
    range_level: int


@dataclass(frozen=True)
class KnowledgeBase:
    classes: tuple[str, ...]
    doc_count: int
    _display: Mapping[str, str] = field(repr=False)
    _parent: Mapping[str, str] = field(repr=False)
    _children: Mapping[str, tuple[str, ...]] = field(repr=False)
    _properties: Mapping[str, PropertyDef] = field(repr=False)
    _instances: Mapping[str, InstanceRecord] = field(repr=False)
    _instances_of: Mapping[str, tuple[str, ...]] = field(repr=False)

    # -- class queries ----------------------------------------------------

    def has_class(self, name: str) -> bool:
        return name_key(name) in self._display

    def class_display(self, name: str) -> str:
        try:
            return self._display[name_key(name)]
        except KeyError:
            raise UnknownClassError(name) from None

    def parent_of(self, name: str) -> str | None:
        key = name_key(self.class_display(name))
        parent = self._parent.get(key)
        return None if parent is None else self._display[parent]

    def children_of(self, name: str) -> tuple[str, ...]:
        key = name_key(self.class_display(name))
        return tuple(self._display[c] for c in self._children.get(key, ()))

    def roots(self) -> tuple[str, ...]:
        return tuple(c for c in self.classes if name_key(c) not in self._parent)

    def ancestors(self, name: str) -> tuple[str, ...]:
        """Chain from the class itself up to its root, inclusive."""
        chain = [self.class_display(name)]
        seen = {name_key(chain[0])}
        while True:
            parent = self._parent.get(name_key(chain[-1]))
            if parent is None:
                return tuple(chain)
            if parent in seen:  # cycles are rejected at build time
                raise AssertionError(f"cycle through {parent}")
            seen.add(parent)
            chain.append(self._display[parent])

    # -- instance queries --------------------------------------------------

    def has_instance(self, name: str) -> bool:
        return name_key(name) in self._instances

    def instance(self, name: str) -> InstanceRecord:
        try:
            return self._instances[name_key(name)]
        except KeyError:
            raise UnknownInstanceError(name) from None

    def class_of(self, instance_name: str) -> str:
        return self.instance(instance_name).class_name

    def direct_instances(self, class_name: str) -> tuple[str, ...]:
        key = name_key(self.class_display(class_name))
        return self._instances_of.get(key, ())

    def subtree_instances(self, class_name: str) -> tuple[str, ...]:
        """Instances of a class and all classes below it.

        Order is deterministic: depth-first over the class subtree with
        children visited in name order, instances of each class in name
        order.
        """
        out: list[str] = []
        stack = [name_key(self.class_display(class_name))]
        while stack:
            key = stack.pop()
            out.extend(self._instances_of.get(key, ()))
            stack.extend(reversed(self._children.get(key, ())))
        return tuple(out)

    def value_of(self, instance_name: str, property_name: str) -> tuple[Literal | ResourceRef, ...]:
        record = self.instance(instance_name)
        prop_key = name_key(self.property(property_name).name)
        return tuple(a.value for a in record.assertions
                     if name_key(a.property) == prop_key)

    # -- property queries ---------------------------------------------------

    def has_property(self, name: str) -> bool:
        return name_key(name) in self._properties

    def property(self, name: str) -> PropertyDef:
        try:
            return self._properties[name_key(name)]
        except KeyError:
            raise UnknownPropertyError(name) from None

    def properties(self) -> tuple[PropertyDef, ...]:
        return tuple(self._properties[key] for key in sorted(self._properties))

    def find_property(self, domain_chain: Iterable[str],
                      range_chain: Iterable[str]) -> PropertyMatch | None:
        """Find properties connecting two ancestor chains.

        Level pairs are tried in order of combined height, lower sums
        first; within one sum the pair with the deeper domain comes
        first, so the domain side is lifted before the range side.
        Returns every property matching the first pair that has any,
        or None when no pair matches.
        """
        domains = [name_key(c) for c in domain_chain]
        ranges = [name_key(c) for c in range_chain]
        if not domains or not ranges:
            return None
        pairs = sorted(((d, r) for d in range(len(domains))
                        for r in range(len(ranges))),
                       key=lambda p: (p[0] + p[1], p[1]))
        for d, r in pairs:
            found = [prop for key, prop in self._properties.items()
                     if domains[d] in self._prop_domain_keys(prop)
                     and ranges[r] in self._prop_range_keys(prop)]
            if found:
                found.sort(key=lambda p: name_key(p.name))
                return PropertyMatch(tuple(found), d, r)
        return None

    def _prop_domain_keys(self, prop: PropertyDef) -> set[str]:
        return {name_key(d) for d in prop.domains}

    def _prop_range_keys(self, prop: PropertyDef) -> set[str]:
        return {name_key(r) for r in prop.ranges}


def _canonical_spelling(spellings: Iterable[str]) -> str:
    # Deterministic under any document/declaration order.
    return min(spellings, key=lambda s: (name_key(s), s))


def build(decls: Iterable[Declaration], doc_count: int = 0) -> KnowledgeBase:
    """Assemble declarations into a validated knowledge base.

    Raises `ValidationError` listing every detected problem: subclass
    cycles, references to undefined classes or properties, conflicting
    duplicate ids, assertions whose subject class is outside the
    property's domain, and classes with more than one distinct parent.
    """
    decls = list(decls)
    issues: list[Issue] = []

    class_spellings: dict[str, list[str]] = {}
    class_sources: dict[str, Source] = {}
    for decl in decls:
        if isinstance(decl, ClassDecl):
            key = name_key(decl.name)
            class_spellings.setdefault(key, []).append(decl.name)
            class_sources.setdefault(key, decl.source)
    display = {key: _canonical_spelling(names)
               for key, names in class_spellings.items()}

    # Subclass links: one parent per class; identical re-statements are fine.
    parent: dict[str, str] = {}
    for decl in decls:
        if not isinstance(decl, SubclassLink):
            continue
        child, par = name_key(decl.child), name_key(decl.parent)
        if child not in display:
            issues.append(Issue(UNDEFINED_REFERENCE,
                                f"subclass link names undefined class {decl.child}",
                                decl.source))
            continue
        if par not in display:
            issues.append(Issue(UNDEFINED_REFERENCE,
                                f"{decl.child} names undefined parent {decl.parent}",
                                decl.source))
            continue
        if child in parent and parent[child] != par:
            issues.append(Issue(
                MULTIPLE_PARENTS,
                f"{display[child]} has parents {display[parent[child]]} "
                f"and {display[par]}",
                decl.source))
            continue
        parent[child] = par

    issues.extend(_find_cycles(parent, display, class_sources))

    properties: dict[str, PropertyDef] = {}
    for decl in decls:
        if not isinstance(decl, PropertyDecl):
            continue
        key = name_key(decl.name)
        if key in properties:
            issues.append(Issue(DUPLICATE_ID,
                                f"property {decl.name} is declared twice",
                                decl.source))
            continue
        if key in display:
            issues.append(Issue(DUPLICATE_ID,
                                f"{decl.name} is already the name of a class",
                                decl.source))
            continue
        for ref in (*decl.domains, *decl.ranges):
            if name_key(ref) not in display:
                issues.append(Issue(
                    UNDEFINED_REFERENCE,
                    f"property {decl.name} names undefined class {ref}",
                    decl.source))
        properties[key] = PropertyDef(
            decl.name,
            tuple(sorted(decl.domains, key=name_key)),
            tuple(sorted(decl.ranges, key=name_key)),
        )

    instances: dict[str, InstanceRecord] = {}
    for decl in decls:
        if not isinstance(decl, InstanceDecl):
            continue
        key = name_key(decl.id)
        if key in instances:
            issues.append(Issue(DUPLICATE_ID,
                                f"instance id {decl.id} is declared twice",
                                decl.source))
            continue
        if key in display or key in properties:
            taken = "class" if key in display else "property"
            issues.append(Issue(DUPLICATE_ID,
                                f"{decl.id} is already the name of a {taken}",
                                decl.source))
            continue
        class_key = name_key(decl.class_name)
        if class_key not in display:
            issues.append(Issue(UNDEFINED_REFERENCE,
                                f"instance {decl.id} has undefined class "
                                f"{decl.class_name}",
                                decl.source))
            continue
        instances[key] = InstanceRecord(decl.id, display[class_key],
                                        decl.assertions)
        issues.extend(_check_assertions(decl, display, parent, properties))

    if issues:
        raise ValidationError(issues)

    children: dict[str, list[str]] = {}
    for child, par in parent.items():
        children.setdefault(par, []).append(child)
    instances_of: dict[str, list[str]] = {}
    for key in sorted(instances, key=lambda k: (k, instances[k].id)):
        record = instances[key]
        instances_of.setdefault(name_key(record.class_name), []).append(record.id)

    return KnowledgeBase(
        classes=tuple(display[key] for key in sorted(display)),
        doc_count=doc_count,
        _display=display,
        _parent=parent,
        _children={par: tuple(sorted(kids)) for par, kids in children.items()},
        _properties=properties,
        _instances=instances,
        _instances_of={key: tuple(ids) for key, ids in instances_of.items()},
    )


def _find_cycles(parent: Mapping[str, str], display: Mapping[str, str],
                 sources: Mapping[str, Source]) -> list[Issue]:
    issues: list[Issue] = []
    state: dict[str, int] = {}  # 1 = on current path, 2 = done
    for start in sorted(parent):
        if state.get(start):
            continue
        path: list[str] = []
        node: str | None = start
        while node is not None and not state.get(node):
            state[node] = 1
            path.append(node)
            node = parent.get(node)
        if node is not None and state[node] == 1:
            loop = path[path.index(node):] + [node]
            issues.append(Issue(
                CYCLE,
                "subclass cycle: " + " -> ".join(display[k] for k in loop),
                sources.get(node)))
        for key in path:
            state[key] = 2
    return issues


def _ancestor_keys(class_key: str, parent: Mapping[str, str]) -> set[str]:
    keys = {class_key}
    node = class_key
    while node in parent:
        node = parent[node]
        if node in keys:
            break  # cycle, reported separately
        keys.add(node)
    return keys


def _check_assertions(decl: InstanceDecl, display: Mapping[str, str],
                      parent: Mapping[str, str],
                      properties: Mapping[str, PropertyDef]) -> list[Issue]:
    issues: list[Issue] = []
    ancestry = _ancestor_keys(name_key(decl.class_name), parent)
    for assertion in decl.assertions:
        prop = properties.get(name_key(assertion.property))
        if prop is None:
            issues.append(Issue(
                UNDEFINED_REFERENCE,
                f"instance {decl.id} asserts undeclared property "
                f"{assertion.property}",
                decl.source))
            continue
        if prop.domains and not any(name_key(d) in ancestry for d in prop.domains):
            issues.append(Issue(
                DOMAIN_VIOLATION,
                f"instance {decl.id} of class {display[name_key(decl.class_name)]} "
                f"asserts {prop.name}, whose domain is "
                f"{', '.join(prop.domains)}",
                decl.source))
    return issues

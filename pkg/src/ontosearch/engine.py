"""Query answering over the knowledge base.

A query is plain text like ``"season required for mango"``.  The engine
extracts class and instance mentions with longest-match lookup against
the synonym tables, then resolves the pair in one of two directions:

* **forward** -- the class names what is being asked about and the
  instance is the subject: find a property whose domain covers the
  instance's class and whose range covers the mentioned class, lifting
  each side up its superclass chain as needed, and read the instance's
  values for it.
* **inverse** -- the instance is a value and the answer is the set of
  instances below the mentioned class that point back at it.  This
  direction is only tried when the instance is written before the class,
  as in ``"K123 required for which crops"``.

Resolution failures raise a `QueryError` subclass carrying a stable
``code`` string, which the service and CLI map onto status and exit
codes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from .lexicon import MAX_SURFACE_WORDS, SynonymTable, normalize_surface
from .rdf_parser import Literal, ResourceRef, name_key
from .store import KnowledgeBase, PropertyMatch

TOKEN_RE = re.compile(r"[\w-]+")

# Connective words that cannot begin a mention.  They may still occur
# inside a multi-word surface form ("cost of seed" could be a synonym).
STOP_WORDS = frozenset({
    "required", "for", "which", "what", "is", "the", "a", "of", "in",
    "to", "do", "does",
})

MODE_FORWARD = "forward"
MODE_INVERSE = "inverse"


class QueryError(Exception):
    """Base for query failures; ``code`` is stable across releases."""

    code = "query_error"


class MalformedQueryError(QueryError):
    code = "malformed_query"


class NoRelationError(QueryError):
    code = "no_relation"


class EmptyResultError(QueryError):
    code = "empty_result"


@dataclass(frozen=True)
class Mention:
    kind: str  # "class" or "instance"
    name: str  # canonical display name
    start: int  # index of first token covered, in the original token sequence
    end: int  # index one past the last token covered


@dataclass(frozen=True)
class Extraction:
    mentions: tuple[Mention, ...]
    dropped: tuple[str, ...]  # non-stop-word tokens no table matched


@dataclass(frozen=True)
class ResultGroup:
    property: str
    values: tuple[str, ...]


@dataclass(frozen=True)
class ExplanationTrace:
    domain_chain_used: tuple[str, ...]
    range_chain_used: tuple[str, ...]
    matched_domain: str
    matched_range: str
    levels_walked: int


@dataclass(frozen=True)
class Answer:
    query: str
    mode: str
    class_mention: str
    instance_mention: str
    results: tuple[ResultGroup, ...]
    trace: ExplanationTrace


def tokenize(query: str) -> list[str]:
    return TOKEN_RE.findall(query)


def extract(class_table: SynonymTable, instance_table: SynonymTable,
            query: str) -> Extraction:
    """Find class and instance mentions in a query, longest match first.

    At each position the instance table is consulted for every window
    length (longest first), then the class table, so an instance named
    like a class wins e.g. ``"winter"`` as a value over a hypothetical
    class.  Matched spans are consumed; leftover tokens that are not
    stop words are reported as dropped.
    """
    tokens = tokenize(query)
    folded = [normalize_surface(t) for t in tokens]
    mentions: list[Mention] = []
    dropped: list[str] = []
    i = 0
    while i < len(tokens):
        if folded[i] in STOP_WORDS:
            i += 1
            continue
        hit = None
        for table in (instance_table, class_table):
            for width in range(min(MAX_SURFACE_WORDS, len(tokens) - i), 0, -1):
                canonical = table.entries.get(" ".join(folded[i:i + width]))
                if canonical is not None:
                    hit = Mention(table.kind, canonical, i, i + width)
                    break
            if hit is not None:
                break
        if hit is None:
            dropped.append(tokens[i])
            i += 1
        else:
            mentions.append(hit)
            i = hit.end
    return Extraction(tuple(mentions), tuple(dropped))


def _render_value(kb: KnowledgeBase, value: Literal | ResourceRef) -> str:
    if isinstance(value, ResourceRef):
        if kb.has_instance(value.target):
            return kb.instance(value.target).id
        return value.target
    return value.text


def _value_names(kb: KnowledgeBase, instance_id: str, prop_name: str) -> set[str]:
    names = set()
    for value in kb.value_of(instance_id, prop_name):
        target = value.target if isinstance(value, ResourceRef) else value.text
        names.add(name_key(target.strip()))
    return names


def _forward(kb: KnowledgeBase, instance: str, cls: str
             ) -> tuple[tuple[ResultGroup, ...], PropertyMatch] | None:
    match = kb.find_property(kb.ancestors(kb.class_of(instance)),
                             kb.ancestors(cls))
    if match is None:
        return None
    groups = []
    for prop in match.properties:
        values = tuple(_render_value(kb, v) for v in kb.value_of(instance, prop.name))
        if values:
            groups.append(ResultGroup(prop.name, values))
    return tuple(groups), match


def _inverse(kb: KnowledgeBase, instance: str, cls: str
             ) -> tuple[tuple[ResultGroup, ...], PropertyMatch] | None:
    match = kb.find_property(kb.ancestors(cls),
                             kb.ancestors(kb.class_of(instance)))
    if match is None:
        return None
    wanted = name_key(instance)
    groups = []
    for prop in match.properties:
        members = tuple(member for member in kb.subtree_instances(cls)
                        if wanted in _value_names(kb, member, prop.name))
        if members:
            groups.append(ResultGroup(prop.name, members))
    return tuple(groups), match


def _trace(kb: KnowledgeBase, domain_start: str, range_start: str,
           match: PropertyMatch) -> ExplanationTrace:
    domain_chain = kb.ancestors(domain_start)
    range_chain = kb.ancestors(range_start)
    return ExplanationTrace(
        domain_chain_used=domain_chain[:match.domain_level + 1],
        range_chain_used=range_chain[:match.range_level + 1],
        matched_domain=domain_chain[match.domain_level],
        matched_range=range_chain[match.range_level],
        levels_walked=match.domain_level + match.range_level,
    )


def resolve(kb: KnowledgeBase, query: str, extraction: Extraction) -> Answer:
    """Resolve an extraction into an answer.

    Requires exactly one class mention and one instance mention.  The
    forward direction is preferred regardless of word order; the inverse
    direction is attempted only when the instance was written before the
    class.  A relation with no recorded values raises `EmptyResultError`;
    no relation at all raises `NoRelationError`.
    """
    classes = [m for m in extraction.mentions if m.kind == "class"]
    instances = [m for m in extraction.mentions if m.kind == "instance"]
    if len(classes) != 1 or len(instances) != 1:
        raise MalformedQueryError(
            f"need exactly one class and one instance mention, found "
            f"{len(classes)} class(es) and {len(instances)} instance(s) "
            f"in {query!r}")
    cls, inst = classes[0], instances[0]

    forward = _forward(kb, inst.name, cls.name)
    if forward is not None and forward[0]:
        groups, match = forward
        return Answer(query, MODE_FORWARD, cls.name, inst.name, groups,
                      _trace(kb, kb.class_of(inst.name), cls.name, match))

    inverse = None
    if inst.start < cls.start:
        inverse = _inverse(kb, inst.name, cls.name)
        if inverse is not None and inverse[0]:
            groups, match = inverse
            return Answer(query, MODE_INVERSE, cls.name, inst.name, groups,
                          _trace(kb, cls.name, kb.class_of(inst.name), match))

    if forward is not None or inverse is not None:
        raise EmptyResultError(
            f"{inst.name} and {cls.name} are related, but no values are "
            f"recorded for {inst.name}" if forward is not None else
            f"no instance under {cls.name} refers to {inst.name}")
    raise NoRelationError(
        f"no relation: no property connects {kb.class_of(inst.name)} "
        f"(class of {inst.name}) with {cls.name} in either direction")


def answer_query(kb: KnowledgeBase, class_table: SynonymTable,
                 instance_table: SynonymTable, query: str) -> Answer:
    """Extract and resolve in one step."""
    if not query.strip():
        raise MalformedQueryError("query is empty")
    extraction = extract(class_table, instance_table, query)
    return resolve(kb, query, extraction)


def answer_to_dict(answer: Answer) -> dict[str, Any]:
    """JSON-friendly view of an answer, shared by the service and the CLI."""
    return {
        "query": answer.query,
        "mode": answer.mode,
        "class": answer.class_mention,
        "instance": answer.instance_mention,
        "results": [
            {"property": group.property, "values": list(group.values)}
            for group in answer.results
        ],
        "trace": {
            "domain_chain_used": list(answer.trace.domain_chain_used),
            "range_chain_used": list(answer.trace.range_chain_used),
            "matched_domain": answer.trace.matched_domain,
            "matched_range": answer.trace.matched_range,
            "levels_walked": answer.trace.levels_walked,
        },
    }

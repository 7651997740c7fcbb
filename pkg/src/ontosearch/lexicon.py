"""Surface-form tables mapping query words to ontology names.

Every class and instance name matches itself; `build_tables` seeds those
identity rows and then layers optional synonym rows on top, one table
for classes and one for instances.  Surfaces are compared after
whitespace normalization and case folding, and may span up to
`MAX_SURFACE_WORDS` words so multi-word synonyms like "market location"
resolve as a unit.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .rdf_parser import name_key
from .store import KnowledgeBase

MAX_SURFACE_WORDS = 4

KIND_CLASS = "class"
KIND_INSTANCE = "instance"

_HEADER = ("kind", "canonical", "surface")


class LexiconError(Exception):
    """A synonym row cannot be added to the tables."""


class BadRowError(LexiconError):
    def __init__(self, message: str, row_num: int | None = None):
        self.row_num = row_num
        where = "" if row_num is None else f"row {row_num}: "
        super().__init__(where + message)


class UnknownCanonicalError(LexiconError):
    def __init__(self, kind: str, canonical: str):
        self.kind = kind
        self.canonical = canonical
        super().__init__(f"synonym target is not a known {kind}: {canonical}")


class ConflictingSynonymError(LexiconError):
    def __init__(self, surface: str, existing: str, new: str):
        self.surface = surface
        super().__init__(
            f"surface {surface!r} already maps to {existing}, cannot remap to {new}")


@dataclass(frozen=True)
class SynonymRow:
    kind: str
    canonical: str
    surface: str


@dataclass(frozen=True)
class SynonymTable:
    """One lookup table: normalized surface form to canonical display name."""

    kind: str
    entries: Mapping[str, str]

    def lookup(self, phrase: str) -> str | None:
        return self.entries.get(normalize_surface(phrase))

    def surfaces(self) -> tuple[str, ...]:
        return tuple(sorted(self.entries))


def normalize_surface(phrase: str) -> str:
    return " ".join(phrase.split()).casefold()


def _identity_entries(names: Iterable[str]) -> dict[str, str]:
    return {name_key(name): name for name in names}


def build_tables(kb: KnowledgeBase,
                 rows: Iterable[SynonymRow] = ()) -> tuple[SynonymTable, SynonymTable]:
    """Build the (class, instance) tables for a knowledge base.

    Identity rows come first, then the given synonym rows.  A surface may
    not be claimed twice for different targets within a table, though the
    same row stated twice is harmless.  Raises a `LexiconError` subclass
    on the first bad row.
    """
    class_entries = _identity_entries(kb.classes)
    instance_entries = _identity_entries(
        kb.instance(name).id
        for root in kb.roots() for name in kb.subtree_instances(root))

    for num, row in enumerate(rows, start=1):
        if row.kind == KIND_CLASS:
            entries = class_entries
            known = kb.has_class(row.canonical)
            canonical = kb.class_display(row.canonical) if known else row.canonical
        elif row.kind == KIND_INSTANCE:
            entries = instance_entries
            known = kb.has_instance(row.canonical)
            canonical = kb.instance(row.canonical).id if known else row.canonical
        else:
            raise BadRowError(
                f"kind must be {KIND_CLASS!r} or {KIND_INSTANCE!r}, "
                f"got {row.kind!r}", num)
        if not known:
            raise UnknownCanonicalError(row.kind, row.canonical)
        surface = normalize_surface(row.surface)
        if not surface:
            raise BadRowError("surface is empty", num)
        if len(surface.split()) > MAX_SURFACE_WORDS:
            raise BadRowError(
                f"surface {row.surface!r} is longer than "
                f"{MAX_SURFACE_WORDS} words", num)
        existing = entries.get(surface)
        if existing is not None and name_key(existing) != name_key(canonical):
            raise ConflictingSynonymError(surface, existing, canonical)
        entries[surface] = canonical

    return (SynonymTable(KIND_CLASS, class_entries),
            SynonymTable(KIND_INSTANCE, instance_entries))


def read_synonym_rows(path: str | Path) -> list[SynonymRow]:
    """Read synonym rows from a CSV file.

    The file must start with a ``kind,canonical,surface`` header.  Blank
    lines and lines starting with ``#`` are skipped.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        filtered = (line for line in handle
                    if line.strip() and not line.lstrip().startswith("#"))
        reader = csv.reader(filtered)
        try:
            header = next(reader)
        except StopIteration:
            raise BadRowError(f"{path}: file is empty") from None
        if tuple(cell.strip() for cell in header) != _HEADER:
            raise BadRowError(
                f"{path}: header must be {','.join(_HEADER)}")
        rows = []
        for num, cells in enumerate(reader, start=2):
            if len(cells) != 3:
                raise BadRowError(f"{path}: expected 3 columns, got {len(cells)}", num)
            kind, canonical, surface = (cell.strip() for cell in cells)
            rows.append(SynonymRow(kind, canonical, surface))
    return rows

"""Loading a knowledge base directory from disk.

A knowledge base directory holds any number of ``*.rdf`` documents
(searched recursively) plus an optional ``synonyms.csv``.  `load_kb`
parses everything, builds the store, and prepares the synonym tables,
accumulating problems so one load reports every broken document at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import lexicon, rdf_parser, store


class LoadError(Exception):
    """The directory does not load as a knowledge base."""

    def __init__(self, kb_dir: Path, problems: list[str]):
        self.kb_dir = kb_dir
        self.problems = problems
        head = f"cannot load knowledge base from {kb_dir}"
        super().__init__("\n".join([head, *("  " + p for p in problems)]))


@dataclass(frozen=True)
class LoadedKb:
    kb: store.KnowledgeBase
    class_table: lexicon.SynonymTable
    instance_table: lexicon.SynonymTable
    files: tuple[str, ...]


def load_kb(kb_dir: str | Path) -> LoadedKb:
    kb_dir = Path(kb_dir)
    if not kb_dir.is_dir():
        raise LoadError(kb_dir, ["not a directory"])
    files = sorted(kb_dir.rglob("*.rdf"))
    if not files:
        raise LoadError(kb_dir, ["no *.rdf documents found"])

    problems: list[str] = []
    decls: list[rdf_parser.Declaration] = []
    doc_ids: list[str] = []
    for path in files:
        doc_id = path.relative_to(kb_dir).as_posix()
        doc_ids.append(doc_id)
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            problems.append(f"{doc_id}: {exc}")
            continue
        try:
            decls.extend(rdf_parser.parse_document(text, doc_id))
        except rdf_parser.ParseError as exc:
            problems.append(str(exc))
    if problems:
        raise LoadError(kb_dir, problems)

    try:
        kb = store.build(decls, doc_count=len(files))
    except store.ValidationError as exc:
        raise LoadError(kb_dir, [issue.render() for issue in exc.issues]) from exc

    rows: list[lexicon.SynonymRow] = []
    synonyms_path = kb_dir / "synonyms.csv"
    if synonyms_path.is_file():
        try:
            rows = lexicon.read_synonym_rows(synonyms_path)
        except lexicon.LexiconError as exc:
            raise LoadError(kb_dir, [str(exc)]) from exc
    try:
        class_table, instance_table = lexicon.build_tables(kb, rows)
    except lexicon.LexiconError as exc:
        raise LoadError(kb_dir, [f"synonyms.csv: {exc}"]) from exc

    return LoadedKb(kb, class_table, instance_table, tuple(doc_ids))

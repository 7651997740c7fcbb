"""Ontology-based exact-answer search over a small RDF knowledge base."""

from .engine import Answer, answer_query, answer_to_dict
from .loader import LoadedKb, LoadError, load_kb
from .store import KnowledgeBase

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "KnowledgeBase",
    "LoadError",
    "LoadedKb",
    "answer_query",
    "answer_to_dict",
    "load_kb",
    "__version__",
]

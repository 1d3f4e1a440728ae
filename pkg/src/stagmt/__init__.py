"""Synchronous TAG transfer engine for free-word-order source languages."""

from .model import Grammar, SyncPair, ElementaryTree, TreeNode, GornAddress
from .grammar_io import load_grammar, dump_grammar, builtin_grammar_names
from .pipeline import translate_line

__all__ = [
    "Grammar",
    "SyncPair",
    "ElementaryTree",
    "TreeNode",
    "GornAddress",
    "load_grammar",
    "dump_grammar",
    "builtin_grammar_names",
    "translate_line",
]

__version__ = "0.1.0"

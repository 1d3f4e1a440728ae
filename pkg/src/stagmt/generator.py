"""Target-side realization: compose target trees and read off a sentence."""

from __future__ import annotations

from dataclasses import dataclass

from .derive import (
    Attachment,
    DerivedTree,
    OP_SUBST,
    _apply_adjoin,
    _apply_subst,
    fragment_root,
    instantiate,
)
from .errors import IllegalAttachmentError, UnfilledSlotError
from .model import KIND_FOOT, KIND_LEX, KIND_SUBST, ROOT, Grammar
from .transfer import TargetDerivation

# Target trees are single components; this stands in for a component index.
TARGET = -1


@dataclass(frozen=True)
class Realization:
    """A realized translation: the composed target tree and its surface."""

    derived: DerivedTree
    surface: str


def realize(target_derivation: TargetDerivation, grammar: Grammar) -> DerivedTree:
    """Compose the target derivation into a target derived tree."""
    registry: dict = {}
    for use, name in enumerate(target_derivation.uses):
        instantiate(grammar.pair(name).target, use, TARGET, registry)

    for att in sorted(target_derivation.attachments, key=lambda a: a.use):
        generic = Attachment(use=att.use, comp=TARGET, host=att.host,
                             host_comp=TARGET, site=att.site, op=att.op)
        if att.op == OP_SUBST:
            _apply_subst(registry, generic)
        else:
            aux = grammar.pair(target_derivation.uses[att.use]).target
            _apply_adjoin(registry, generic, aux)

    root = fragment_root(registry[(target_derivation.root, TARGET, ROOT)])
    tree = DerivedTree(root=root, registry=registry, derivation=None)
    for node in tree.preorder():
        if node.kind == KIND_SUBST:
            raise UnfilledSlotError(node.provenance, node.cat)
        if node.kind == KIND_FOOT:
            raise IllegalAttachmentError(f"stranded foot node {node.provenance}")
    return tree


def _is_marked_nominal(node) -> bool:
    """A phrase whose children are exactly a lexical N then a lexical P."""
    if len(node.children) != 2:
        return False
    n, p = node.children
    return (n.kind == KIND_LEX and p.kind == KIND_LEX
            and n.cat == "N" and p.cat == "P")


def yield_surface(tree: DerivedTree, punct: str = ".") -> str:
    """Flatten lexical leaves to a sentence string.

    Case particles attach to their noun with a hyphen: within a phrase whose
    children are exactly N followed by P, the two lexical items join as one
    word. Everything else is space-separated, with punct appended.
    """
    words: list[str] = []

    def walk(node) -> None:
        if _is_marked_nominal(node):
            words.append(f"{node.children[0].word}-{node.children[1].word}")
            return
        if node.kind == KIND_LEX:
            words.append(node.word)
            return
        for child in node.children:
            walk(child)

    walk(tree.root)
    return " ".join(words) + punct

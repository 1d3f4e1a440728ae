"""Core tree and grammar data model.

Elementary trees are immutable ordered trees whose nodes are addressed by
Gorn addresses (paths of 1-based child positions). A synchronous pair couples
a source-side tree set (one or more components, a designated head, dominance
requirements between components) with a single target tree plus explicit
node-to-node links. Everything here is plain data; composition lives in
:mod:`stagmt.derive` and file handling in :mod:`stagmt.grammar_io`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import DuplicatePairNameError, NoStartPairError

KIND_INTERIOR = "interior"
KIND_SUBST = "subst_slot"
KIND_FOOT = "foot"
KIND_LEX = "lex"
KIND_EMPTY = "empty"
KINDS = (KIND_INTERIOR, KIND_SUBST, KIND_FOOT, KIND_LEX, KIND_EMPTY)

ADJOIN_ALLOW = "allow"
ADJOIN_NA = "na"
ADJOIN_OA = "oa"
ADJOIN_VALUES = (ADJOIN_ALLOW, ADJOIN_NA, ADJOIN_OA)

SET_VARIABLE = "@set"
TRACE_FEATURE = "trace"


@dataclass(frozen=True, order=True)
class GornAddress:
    """Path of 1-based child positions; the empty path is the root."""

    path: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "GornAddress":
        if text == "e":
            return cls(())
        parts = text.split(".")
        if not all(p.isdigit() for p in parts):
            raise ValueError(f"bad address {text!r}")
        path = tuple(int(p) for p in parts)
        if any(p < 1 for p in path):
            raise ValueError(f"bad address {text!r}")
        return cls(path)

    def __str__(self) -> str:
        return "e" if not self.path else ".".join(str(p) for p in self.path)

    def __repr__(self) -> str:
        return f"GornAddress({str(self)!r})"

    @property
    def is_root(self) -> bool:
        return not self.path

    def child(self, position: int) -> "GornAddress":
        return GornAddress(self.path + (position,))

    def parent(self) -> "GornAddress":
        if not self.path:
            raise ValueError("root has no parent")
        return GornAddress(self.path[:-1])

    def strictly_dominates(self, other: "GornAddress") -> bool:
        return len(self.path) < len(other.path) and other.path[: len(self.path)] == self.path

    @property
    def depth(self) -> int:
        return len(self.path)


ROOT = GornAddress(())


@dataclass(frozen=True)
class TreeNode:
    """One node of an elementary tree.

    ``feats`` is stored as a sorted tuple of (name, value) pairs so nodes
    stay hashable; values are atomic strings, or the set variable "@set"
    inside multi-component sets.
    """

    cat: str
    kind: str = KIND_INTERIOR
    adjoin: str = ADJOIN_ALLOW
    word: str | None = None
    feats: tuple[tuple[str, str], ...] = ()
    children: tuple["TreeNode", ...] = ()

    def feat(self, name: str) -> str | None:
        for key, value in self.feats:
            if key == name:
                return value
        return None

    @property
    def feats_dict(self) -> dict[str, str]:
        return dict(self.feats)

    @property
    def is_leaf_kind(self) -> bool:
        return self.kind in (KIND_SUBST, KIND_FOOT, KIND_LEX, KIND_EMPTY)


def _norm_feats(feats) -> tuple[tuple[str, str], ...]:
    if not feats:
        return ()
    if isinstance(feats, dict):
        feats = feats.items()
    return tuple(sorted((str(k), str(v)) for k, v in feats))


def interior(cat: str, *children: TreeNode, feats=None, adjoin: str = ADJOIN_ALLOW) -> TreeNode:
    return TreeNode(cat=cat, kind=KIND_INTERIOR, adjoin=adjoin,
                    feats=_norm_feats(feats), children=tuple(children))


def subst(cat: str) -> TreeNode:
    return TreeNode(cat=cat, kind=KIND_SUBST)


def foot(cat: str) -> TreeNode:
    return TreeNode(cat=cat, kind=KIND_FOOT)


def lex(cat: str, word: str) -> TreeNode:
    return TreeNode(cat=cat, kind=KIND_LEX, word=word)


def empty(cat: str = "e") -> TreeNode:
    return TreeNode(cat=cat, kind=KIND_EMPTY)


@dataclass(frozen=True)
class ElementaryTree:
    """A whole elementary tree; auxiliary iff it contains a foot node."""

    root: TreeNode

    @cached_property
    def nodes(self) -> dict[GornAddress, TreeNode]:
        out: dict[GornAddress, TreeNode] = {}

        def walk(node: TreeNode, addr: GornAddress) -> None:
            out[addr] = node
            for i, child in enumerate(node.children, start=1):
                walk(child, addr.child(i))

        walk(self.root, ROOT)
        return out

    def node_at(self, addr: GornAddress) -> TreeNode | None:
        return self.nodes.get(addr)

    @cached_property
    def foot_address(self) -> GornAddress | None:
        for addr, node in self.nodes.items():
            if node.kind == KIND_FOOT:
                return addr
        return None

    @property
    def is_auxiliary(self) -> bool:
        return self.foot_address is not None

    @property
    def root_cat(self) -> str:
        return self.root.cat

    @cached_property
    def subst_addresses(self) -> tuple[GornAddress, ...]:
        return tuple(a for a, n in self.nodes.items() if n.kind == KIND_SUBST)

    @cached_property
    def lex_words(self) -> tuple[str, ...]:
        return tuple(n.word for n in self.nodes.values() if n.kind == KIND_LEX)

    def operable(self, addr: GornAddress) -> bool:
        """True if the node can be the site of a substitution or adjunction."""
        node = self.node_at(addr)
        if node is None:
            return False
        if node.kind == KIND_SUBST:
            return True
        return node.kind == KIND_INTERIOR and node.adjoin != ADJOIN_NA


@dataclass(frozen=True)
class SourceSet:
    """Source side of a pair: components, head index, dominance links."""

    components: tuple[ElementaryTree, ...]
    head: int = 0
    dominance: tuple[tuple[int, int], ...] = ()

    @property
    def is_multi(self) -> bool:
        return len(self.components) > 1

    @property
    def head_tree(self) -> ElementaryTree:
        return self.components[self.head]


@dataclass(frozen=True)
class Link:
    comp: int
    src: GornAddress
    tgt: GornAddress


@dataclass(frozen=True)
class SyncPair:
    name: str
    source: SourceSet
    target: ElementaryTree
    links: tuple[Link, ...] = ()
    priority: int = 1

    def component(self, index: int) -> ElementaryTree:
        return self.source.components[index]

    @property
    def n_components(self) -> int:
        return len(self.source.components)

    def link_for(self, comp: int, src: GornAddress) -> Link | None:
        for link in self.links:
            if link.comp == comp and link.src == src:
                return link
        return None


@dataclass(frozen=True)
class Particle:
    form: str
    case: str


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding; errors invalidate the pair, warnings do not."""

    pair: str
    rule: str
    message: str
    address: str | None = None
    severity: str = "error"

    def __str__(self) -> str:
        where = f" at {self.address}" if self.address else ""
        return f"[{self.severity}] {self.pair}{where}: {self.message} ({self.rule})"


@dataclass(frozen=True)
class Grammar:
    """Validated pair inventory plus the derived lookup tables.

    Immutable after construction; safe to share across concurrent parses.
    """

    source_language: str
    target_language: str
    start_symbol: str
    pairs: tuple[SyncPair, ...]
    particles: tuple[Particle, ...]

    @cached_property
    def pair_by_name(self) -> dict[str, SyncPair]:
        return {p.name: p for p in self.pairs}

    def pair(self, name: str) -> SyncPair:
        return self.pair_by_name[name]

    @cached_property
    def particle_map(self) -> dict[str, str]:
        return {p.form: p.case for p in self.particles}

    @cached_property
    def anchor_index(self) -> dict[str, tuple[str, ...]]:
        """Content lex word -> sorted pair names; particle forms are excluded."""
        particles = {p.form for p in self.particles}
        index: dict[str, set[str]] = {}
        for pair in self.pairs:
            for comp in pair.source.components:
                for word in comp.lex_words:
                    if word in particles:
                        continue
                    index.setdefault(word, set()).add(pair.name)
        return {w: tuple(sorted(names)) for w, names in sorted(index.items())}


def _tree_diagnostics(pair_name: str, label: str, tree: ElementaryTree,
                      in_multi: bool) -> list[Diagnostic]:
    out: list[Diagnostic] = []

    def diag(rule, message, addr=None, severity="error"):
        out.append(Diagnostic(pair=pair_name, rule=rule, message=message,
                              address=f"{label}:{addr}" if addr is not None else label,
                              severity=severity))

    if tree.root.kind != KIND_INTERIOR:
        diag("root-kind", f"tree root must be an interior node, not {tree.root.kind}")

    feet = []
    for addr, node in tree.nodes.items():
        if node.kind not in KINDS:
            diag("node-kind", f"unknown node kind {node.kind!r}", addr)
            continue
        if node.adjoin not in ADJOIN_VALUES:
            diag("adjoin-value", f"unknown adjoining constraint {node.adjoin!r}", addr)
        if node.is_leaf_kind and node.children:
            diag("leaf-children", f"{node.kind} node may not have children", addr)
        if node.kind == KIND_INTERIOR and not node.children:
            diag("interior-children", "interior node must have children", addr)
        if node.kind == KIND_LEX and not node.word:
            diag("lex-word", "lex node needs a word", addr)
        if node.kind != KIND_LEX and node.word is not None:
            diag("word-on-nonlex", f"{node.kind} node may not carry a word", addr)
        if node.kind == KIND_FOOT:
            feet.append(addr)
        for key, value in node.feats:
            if value == SET_VARIABLE and not in_multi:
                diag("set-variable", f"{SET_VARIABLE} feature {key!r} outside a "
                                     "multi-component set", addr)

    if len(feet) > 1:
        diag("multiple-feet", f"{len(feet)} foot nodes, at most one allowed")
    elif len(feet) == 1:
        foot_node = tree.node_at(feet[0])
        if foot_node.cat != tree.root_cat:
            diag("foot-category",
                 f"foot category {foot_node.cat!r} differs from root {tree.root_cat!r}",
                 feet[0])
    return out


def validate_pair(pair: SyncPair) -> list[Diagnostic]:
    """Check every pair invariant; returns diagnostics, empty when valid.

    Deterministic and order-independent over links. Warnings (severity
    ``warning``) flag suspicious but admissible grammar, e.g. links on
    non-head components, which transfer ignores.
    """
    out: list[Diagnostic] = []

    def diag(rule, message, addr=None, severity="error"):
        out.append(Diagnostic(pair=pair.name, rule=rule, message=message,
                              address=addr, severity=severity))

    src = pair.source
    if not src.components:
        diag("empty-set", "source set has no components")
        return out

    multi = src.is_multi
    for i, comp in enumerate(src.components):
        out.extend(_tree_diagnostics(pair.name, f"source[{i}]", comp, multi))
    out.extend(_tree_diagnostics(pair.name, "target", pair.target, False))

    if not 0 <= src.head < len(src.components):
        diag("head-index", f"head index {src.head} out of range")
        return out
    if not multi and src.head != 0:
        diag("singleton-head", "singleton set must have head 0")
    if not multi and src.dominance:
        diag("singleton-dominance", "singleton set may not declare dominance")

    for d, e in src.dominance:
        if d == e or not (0 <= d < len(src.components)) or not (0 <= e < len(src.components)):
            diag("dominance-index", f"bad dominance pair ({d}, {e})")

    # Scrambled-argument convention: when the set has exactly one empty-yield
    # initial component (the place-holder), it must be the head and must be
    # dominated by a scrambled auxiliary component.
    if multi:
        placeholders = [i for i, c in enumerate(src.components)
                        if not c.is_auxiliary and not c.lex_words
                        and not c.subst_addresses]
        if len(placeholders) == 1:
            ph = placeholders[0]
            if src.head != ph:
                diag("head-convention",
                     f"place-holder component {ph} must be the head, not {src.head}")
            dominators = [d for d, e in src.dominance if e == ph]
            if not any(src.components[d].is_auxiliary for d in dominators):
                diag("placeholder-dominance",
                     "place-holder must be dominated by a scrambled auxiliary component")

    if pair.priority < 1:
        diag("priority", f"priority must be >= 1, got {pair.priority}")

    seen_src: set[tuple[int, GornAddress]] = set()
    seen_tgt: set[GornAddress] = set()
    for link in pair.links:
        if not 0 <= link.comp < len(src.components):
            diag("link-comp", f"link names component {link.comp}, out of range")
            continue
        comp = src.components[link.comp]
        if comp.node_at(link.src) is None:
            diag("link-src", f"link src {link.src} does not name a node",
                 addr=str(link.src))
        elif not comp.operable(link.src):
            diag("link-src", f"link src {link.src} is not an operable node",
                 addr=str(link.src))
        if pair.target.node_at(link.tgt) is None:
            diag("link-tgt", f"link tgt {link.tgt} does not name a node",
                 addr=str(link.tgt))
        elif not pair.target.operable(link.tgt):
            diag("link-tgt", f"link tgt {link.tgt} is not an operable node",
                 addr=str(link.tgt))
        if (link.comp, link.src) in seen_src:
            diag("duplicate-link-src", f"two links share source ({link.comp}, {link.src})")
        if link.tgt in seen_tgt:
            diag("duplicate-link-tgt", f"two links share target {link.tgt}")
        seen_src.add((link.comp, link.src))
        seen_tgt.add(link.tgt)
        if link.comp != src.head:
            diag("nonhead-link",
                 f"link on non-head component {link.comp} is ignored by transfer",
                 severity="warning")

    # Substitution slots in the head component and target must be linked;
    # other components may be unlinked.
    head_tree = src.components[src.head] if 0 <= src.head < len(src.components) else None
    if head_tree is not None:
        for addr in head_tree.subst_addresses:
            if pair.link_for(src.head, addr) is None:
                diag("unlinked-substitution",
                     f"substitution slot {addr} in head component has no link",
                     addr=str(addr))
    linked_tgts = {l.tgt for l in pair.links}
    for addr in pair.target.subst_addresses:
        if addr not in linked_tgts:
            diag("unlinked-substitution",
                 f"substitution slot {addr} in target tree has no link",
                 addr=str(addr))

    return out


def pair_errors(pair: SyncPair) -> list[Diagnostic]:
    return [d for d in validate_pair(pair) if d.severity == "error"]


def index_grammar(pairs, *, source_language: str, target_language: str,
                  start_symbol: str, particles) -> Grammar:
    """Assemble a Grammar, rejecting duplicate names and missing start pairs."""
    pairs = tuple(pairs)
    seen: set[str] = set()
    for pair in pairs:
        if pair.name in seen:
            raise DuplicatePairNameError(f"duplicate pair name {pair.name!r}")
        seen.add(pair.name)
    has_start = any(
        not p.source.head_tree.is_auxiliary and p.source.head_tree.root_cat == start_symbol
        for p in pairs
    )
    if not has_start:
        raise NoStartPairError(
            f"no pair has an initial head component rooted in {start_symbol!r}")
    return Grammar(source_language=source_language, target_language=target_language,
                   start_symbol=start_symbol, pairs=pairs, particles=tuple(particles))

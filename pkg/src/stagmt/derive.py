"""Derivations and tree composition.

A derivation names a multiset of pair uses and says, for every component of
every use except the root's head, where that component attaches (host use,
host component, site address, operation). Composition turns a derivation
into a derived tree by instantiating each component and splicing instances
together with substitution and adjunction.

Instances are mutable node graphs with parent pointers; every node remembers
which (use, component, elementary address) it came from, so attachment sites
stay resolvable no matter how earlier operations rearranged the tree. When
an instance is planted somewhere, the whole fragment it currently belongs to
moves with it, which makes the result independent of application order
(stacked adjunctions compose the same way whichever is applied first).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CategoryMismatchError,
    CompositionError,
    DoubleAdjunctionError,
    IllegalAttachmentError,
    NAViolationError,
    NotASlotError,
    ObligatoryAdjunctionError,
    UnfilledSlotError,
)
from .model import (
    ADJOIN_NA,
    ADJOIN_OA,
    KIND_EMPTY,
    KIND_FOOT,
    KIND_INTERIOR,
    KIND_LEX,
    KIND_SUBST,
    ROOT,
    ElementaryTree,
    GornAddress,
    Grammar,
    SET_VARIABLE,
    TreeNode,
)

OP_SUBST = "subst"
OP_ADJOIN = "adjoin"


@dataclass(frozen=True)
class Attachment:
    """Component (use, comp) attaches at address site of (host, host_comp)."""

    use: int
    comp: int
    host: int
    host_comp: int
    site: GornAddress
    op: str

    def sort_key(self):
        return (self.use, self.comp)


@dataclass(frozen=True)
class Derivation:
    """uses[i] is the pair name of use i; root is the index of the root use."""

    uses: tuple[str, ...]
    root: int
    attachments: tuple[Attachment, ...]

    def cost(self, grammar: Grammar) -> int:
        return sum(grammar.pair(name).priority - 1 for name in self.uses)

    def attachment_of(self, use: int, comp: int) -> Attachment | None:
        for att in self.attachments:
            if att.use == use and att.comp == comp:
                return att
        return None


def make_derivation(uses, root, attachments) -> Derivation:
    return Derivation(uses=tuple(uses), root=root,
                      attachments=tuple(sorted(attachments, key=Attachment.sort_key)))


class DNode:
    """Mutable node of a derived tree, tagged with its provenance."""

    __slots__ = ("cat", "kind", "adjoin", "word", "feats", "children", "parent",
                 "use", "comp", "addr", "adjunction_applied", "consumed")

    def __init__(self, src: TreeNode, use: int, comp: int, addr: GornAddress):
        self.cat = src.cat
        self.kind = src.kind
        self.adjoin = src.adjoin
        self.word = src.word
        self.feats = dict(src.feats)
        self.children: list[DNode] = []
        self.parent: DNode | None = None
        self.use = use
        self.comp = comp
        self.addr = addr
        self.adjunction_applied = False
        self.consumed = False

    @property
    def provenance(self) -> str:
        return f"u{self.use}/c{self.comp}:{self.addr}"

    def __repr__(self) -> str:
        return f"<DNode {self.cat} {self.provenance}>"


Key = tuple[int, int]


def instantiate(tree: ElementaryTree, use: int, comp: int,
                registry: dict[tuple[int, int, GornAddress], DNode]) -> DNode:
    """Clone an elementary tree into DNodes, filling the provenance registry."""

    def walk(node: TreeNode, addr: GornAddress) -> DNode:
        dnode = DNode(node, use, comp, addr)
        registry[(use, comp, addr)] = dnode
        for i, child in enumerate(node.children, start=1):
            dchild = walk(child, addr.child(i))
            dchild.parent = dnode
            dnode.children.append(dchild)
        return dnode

    return walk(tree.root, ROOT)


def fragment_root(node: DNode) -> DNode:
    while node.parent is not None:
        node = node.parent
    return node


def _replace_child(parent: DNode, old: DNode, new: DNode) -> None:
    for i, child in enumerate(parent.children):
        if child is old:
            parent.children[i] = new
            new.parent = parent
            old.parent = None
            return
    raise AssertionError("old node is not a child of parent")


def _check_subst_site(slot: DNode, inst_root: DNode) -> None:
    if slot.kind != KIND_SUBST:
        raise NotASlotError(f"substitution into {slot.kind} node {slot.provenance}")
    if slot.consumed:
        raise IllegalAttachmentError(f"slot {slot.provenance} already filled")
    if inst_root.cat != slot.cat:
        raise CategoryMismatchError(
            f"cannot substitute {inst_root.cat} into {slot.cat} slot")


def _check_adjoin_site(site: DNode, aux_root: DNode) -> None:
    if site.kind != KIND_INTERIOR:
        raise IllegalAttachmentError(f"adjunction at {site.kind} node {site.provenance}")
    if site.adjoin == ADJOIN_NA:
        raise NAViolationError(f"adjunction at null-adjoining node {site.provenance}")
    if site.adjunction_applied:
        raise DoubleAdjunctionError(f"second adjunction at {site.provenance}")
    if aux_root.cat != site.cat:
        raise CategoryMismatchError(
            f"cannot adjoin {aux_root.cat} auxiliary at {site.cat} node")


def _apply_subst(registry, att: Attachment) -> None:
    slot = registry.get((att.host, att.host_comp, att.site))
    if slot is None:
        raise IllegalAttachmentError(f"no node at site {att.site} of use {att.host}")
    inst_root = registry[(att.use, att.comp, ROOT)]
    if slot.parent is None:
        raise IllegalAttachmentError(f"slot {slot.provenance} has no parent")
    _check_subst_site(slot, inst_root)
    frag = fragment_root(inst_root)
    if frag is fragment_root(slot):
        raise IllegalAttachmentError(
            f"cyclic attachment of use {att.use} at {slot.provenance}")
    _replace_child(slot.parent, slot, frag)
    slot.consumed = True


def _apply_adjoin(registry, att: Attachment, aux: ElementaryTree) -> None:
    site = registry.get((att.host, att.host_comp, att.site))
    if site is None:
        raise IllegalAttachmentError(f"no node at site {att.site} of use {att.host}")
    if aux.foot_address is None:
        raise IllegalAttachmentError(
            f"component {att.comp} of use {att.use} is not auxiliary")
    aux_root = registry[(att.use, att.comp, ROOT)]
    foot = registry[(att.use, att.comp, aux.foot_address)]
    _check_adjoin_site(site, aux_root)
    frag = fragment_root(aux_root)
    if frag is fragment_root(site):
        raise IllegalAttachmentError(
            f"cyclic adjunction of use {att.use} at {site.provenance}")
    parent = site.parent
    if parent is not None:
        _replace_child(parent, site, frag)
    else:
        site.parent = None
        frag.parent = None
    _replace_child(foot.parent, foot, site)
    foot.consumed = True
    site.adjunction_applied = True


def node_at(root: DNode, address: GornAddress) -> DNode:
    """Follow a Gorn address through the working tree as it currently stands."""
    node = root
    for step in address.path:
        if not 1 <= step <= len(node.children):
            raise IllegalAttachmentError(f"no node at address {address}")
        node = node.children[step - 1]
    return node


def substitute_at(host: DNode, address: GornAddress, child: DNode) -> DNode:
    """Fill the substitution slot at a working-tree address with a child tree.

    The address is read off the host tree as it currently stands (not off any
    elementary tree). Returns the root of the updated working tree.
    """
    slot = node_at(host, address)
    _check_subst_site(slot, child)
    if slot.parent is None:
        slot.consumed = True
        return child
    _replace_child(slot.parent, slot, child)
    slot.consumed = True
    return fragment_root(host)


def adjoin_at(host: DNode, address: GornAddress, aux: DNode) -> DNode:
    """Adjoin an auxiliary working tree at a working-tree address.

    The site node is excised, the auxiliary takes its place, and the site
    hangs where the auxiliary's foot was. Returns the updated tree's root,
    which differs from ``host`` exactly when adjoining at the root.
    """
    feet = [n for n in preorder(aux) if n.kind == KIND_FOOT]
    if len(feet) != 1:
        raise IllegalAttachmentError("adjoined tree is not auxiliary (needs one foot)")
    foot = feet[0]
    site = node_at(host, address)
    _check_adjoin_site(site, aux)
    parent = site.parent
    if parent is not None:
        _replace_child(parent, site, aux)
    _replace_child(foot.parent, foot, site)
    foot.consumed = True
    site.adjunction_applied = True
    return fragment_root(site)


def preorder(root: DNode):
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


@dataclass
class DerivedTree:
    root: DNode
    registry: dict[tuple[int, int, GornAddress], DNode]
    derivation: Derivation | None

    def preorder(self):
        yield from preorder(self.root)

    def yield_lex(self) -> tuple[str, ...]:
        return tuple(n.word for n in self.preorder() if n.kind == KIND_LEX)

    def instance_root(self, use: int, comp: int) -> DNode:
        return self.registry[(use, comp, ROOT)]


def _shape_errors(derivation: Derivation, grammar: Grammar) -> str | None:
    n = len(derivation.uses)
    if not 0 <= derivation.root < n:
        return f"root index {derivation.root} out of range"
    seen: set[Key] = set()
    for att in derivation.attachments:
        if not (0 <= att.use < n and 0 <= att.host < n):
            return f"attachment references unknown use ({att.use}, {att.host})"
        pair = grammar.pair(derivation.uses[att.use])
        host_pair = grammar.pair(derivation.uses[att.host])
        if not 0 <= att.comp < pair.n_components:
            return f"use {att.use} has no component {att.comp}"
        if not 0 <= att.host_comp < host_pair.n_components:
            return f"use {att.host} has no component {att.host_comp}"
        if att.op not in (OP_SUBST, OP_ADJOIN):
            return f"unknown operation {att.op!r}"
        if (att.use, att.comp) in seen:
            return f"component ({att.use}, {att.comp}) attaches twice"
        seen.add((att.use, att.comp))
    root_pair = grammar.pair(derivation.uses[derivation.root])
    root_head = root_pair.source.head
    for use in range(n):
        pair = grammar.pair(derivation.uses[use])
        for comp in range(pair.n_components):
            is_root_head = use == derivation.root and comp == root_head
            attached = (use, comp) in seen
            if is_root_head and attached:
                return "root head component must not attach anywhere"
            if not is_root_head and not attached:
                return (f"missing component: ({use}, {comp}) of "
                        f"{derivation.uses[use]} never attaches")
    return None


def build_derived_tree(derivation: Derivation, grammar: Grammar) -> DerivedTree:
    """Compose the derivation into a source derived tree, checking as we go.

    Raises a CompositionError subclass when the derivation is not realizable
    (bad sites, category clashes, NA/double adjunction, cycles, unfilled
    slots, unsatisfied obligatory adjunction). Dominance requirements are a
    separate judgement, see check_set_constraints.
    """
    problem = _shape_errors(derivation, grammar)
    if problem is not None:
        raise IllegalAttachmentError(problem)

    registry: dict[tuple[int, int, GornAddress], DNode] = {}
    for use, name in enumerate(derivation.uses):
        pair = grammar.pair(name)
        for comp, tree in enumerate(pair.source.components):
            instantiate(tree, use, comp, registry)

    for att in sorted(derivation.attachments, key=Attachment.sort_key):
        if att.op == OP_SUBST:
            _apply_subst(registry, att)
        else:
            aux = grammar.pair(derivation.uses[att.use]).component(att.comp)
            _apply_adjoin(registry, att, aux)

    root_pair = grammar.pair(derivation.uses[derivation.root])
    root = fragment_root(registry[(derivation.root, root_pair.source.head, ROOT)])

    tree = DerivedTree(root=root, registry=registry, derivation=derivation)
    for node in tree.preorder():
        if node.kind == KIND_SUBST:
            raise UnfilledSlotError(node.provenance, node.cat)
        if node.kind == KIND_FOOT:
            raise IllegalAttachmentError(f"stranded foot node {node.provenance}")
        if node.adjoin == ADJOIN_OA and not node.adjunction_applied:
            raise ObligatoryAdjunctionError(
                f"no adjunction at obligatory-adjoining node {node.provenance}")
    return tree


def _dominates(ancestor: DNode, node: DNode) -> bool:
    cursor = node.parent
    while cursor is not None:
        if cursor is ancestor:
            return True
        cursor = cursor.parent
    return False


def dominance_violations(tree: DerivedTree, grammar: Grammar) -> list[str]:
    """Dominance requirements of set uses that fail in the composed tree."""
    out = []
    derivation = tree.derivation
    for use, name in enumerate(derivation.uses):
        pair = grammar.pair(name)
        for dominator, dominated in pair.source.dominance:
            upper = tree.instance_root(use, dominator)
            lower = tree.instance_root(use, dominated)
            if not _dominates(upper, lower):
                out.append(f"dominance: use {use} ({name}) component {dominator}"
                           f" does not dominate component {dominated}")
    return out


@dataclass(frozen=True)
class SetCheck:
    """Outcome of checking a derivation's set constraints; truthy iff clean."""

    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def check_set_constraints(derivation: Derivation, grammar: Grammar) -> SetCheck:
    """Judge the multi-component side conditions of a derivation.

    Checks that every component of every use is accounted for (the root
    use contributes its head; everything else attaches exactly once), that
    the attachments compose, and that each set's dominance requirements
    hold between instance roots in the composed tree. Violations are
    reported rather than raised so callers can filter candidate
    derivations without try/except scaffolding.
    """
    problem = _shape_errors(derivation, grammar)
    if problem is not None:
        return SetCheck(ok=False, violations=(problem,))
    try:
        tree = build_derived_tree(derivation, grammar)
    except CompositionError as exc:
        return SetCheck(ok=False, violations=(f"{exc.code}: {exc}",))
    violations = dominance_violations(tree, grammar)
    return SetCheck(ok=not violations, violations=tuple(violations))


def display_indexes(tree: DerivedTree, grammar: Grammar) -> dict[int, int]:
    """Coindexation numbers for set uses, by first appearance in preorder."""
    out: dict[int, int] = {}
    for node in tree.preorder():
        if node.use in out:
            continue
        pair = grammar.pair(tree.derivation.uses[node.use])
        if pair.source.is_multi:
            out[node.use] = len(out) + 1
    return out


def render_node(node: DNode, indexes: dict[int, int]) -> str:
    label = node.cat
    if SET_VARIABLE in node.feats.values() and node.use in indexes:
        label += f"<{indexes[node.use]}>"
    if node.kind == KIND_LEX:
        return f"({label} {node.word})"
    if node.kind == KIND_EMPTY:
        return "e"
    if node.kind == KIND_SUBST:
        return f"({label} _)"
    if node.kind == KIND_FOOT:
        return f"({label} *)"
    inner = " ".join(render_node(c, indexes) for c in node.children)
    return f"({label} {inner})"


def render_tree(tree: DerivedTree, grammar: Grammar) -> str:
    return render_node(tree.root, display_indexes(tree, grammar))


def canonicalize(derivation: Derivation, grammar: Grammar) -> Derivation:
    """Renumber uses by first appearance in the composed tree's preorder walk.

    Two derivations that differ only in use numbering canonicalize to equal
    values, which is what parser/oracle comparison and deduplication rely on.
    """
    tree = build_derived_tree(derivation, grammar)
    order: dict[int, int] = {}
    for node in tree.preorder():
        if node.use not in order:
            order[node.use] = len(order)
    # Components with no surface material still occupy the registry, so every
    # use appears somewhere in the walk; guard anyway for odd grammars.
    for use in range(len(derivation.uses)):
        order.setdefault(use, len(order))
    uses = tuple(name for _, name in sorted(
        (order[i], name) for i, name in enumerate(derivation.uses)))
    attachments = tuple(
        Attachment(use=order[a.use], comp=a.comp, host=order[a.host],
                   host_comp=a.host_comp, site=a.site, op=a.op)
        for a in derivation.attachments)
    return make_derivation(uses, order[derivation.root], attachments)


def render_derivation(derivation: Derivation, grammar: Grammar) -> str:
    """Stable one-line-per-use description of a derivation."""
    lines = []
    for use, name in enumerate(derivation.uses):
        pair = grammar.pair(name)
        if use == derivation.root:
            lines.append(f"u{use} {name} (root)")
            continue
        parts = []
        for comp in range(pair.n_components):
            att = derivation.attachment_of(use, comp)
            if att is None:
                continue
            where = f"u{att.host}/c{att.host_comp}@{att.site}"
            if pair.n_components > 1:
                parts.append(f"c{comp} {att.op} {where}")
            else:
                parts.append(f"{att.op} {where}")
        lines.append(f"u{use} {name}: " + ", ".join(parts))
    return "\n".join(lines)

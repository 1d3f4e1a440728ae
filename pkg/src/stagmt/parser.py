"""Source-side parsing: from a token stream to ranked derivations.

Parsing happens in two phases. Phase 1 treats every component of every pair
as a free-standing tree and enumerates instance trees over the lexical
stream by span recursion: a substitution slot is filled by any initial
component of the right category, any interior node may host one adjunction
by any auxiliary component of the right category, and auxiliary components
parse with a foot gap. Recursion is bounded by an instance budget so that
pathological grammars (zero-width auxiliaries) still terminate.

Phase 2 restores set discipline: instances of multi-component pairs are
grouped into uses by bijective matching per component, each grouping is
composed, and groupings whose dominance requirements fail are discarded.
Surviving derivations are canonicalized, deduplicated, and ranked by cost
(sum of use priorities minus one, so priority-1 pairs are free).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .derive import (
    OP_ADJOIN,
    OP_SUBST,
    Attachment,
    Derivation,
    build_derived_tree,
    canonicalize,
    dominance_violations,
    make_derivation,
    render_derivation,
)
from .errors import LexicalGapError, NoParseError
from .model import (
    ADJOIN_NA,
    ADJOIN_OA,
    KIND_EMPTY,
    KIND_FOOT,
    KIND_INTERIOR,
    KIND_LEX,
    KIND_SUBST,
    ROOT,
    GornAddress,
    Grammar,
)
from .morphotok import TokenizedSentence


@dataclass(frozen=True)
class Op:
    """An attachment into the instance being parsed, at elementary site."""

    site: GornAddress
    op: str
    inst: "InstParse"


@dataclass(frozen=True)
class InstParse:
    """One component instance covering lex[i:j], with a foot gap if auxiliary."""

    pair: str
    comp: int
    i: int
    j: int
    gap: tuple[int, int] | None
    ops: tuple[Op, ...]
    size: int


@dataclass(frozen=True)
class PriorityLevel:
    cost: int
    derivations: tuple[Derivation, ...]


def _lex_stream(sentence) -> tuple[str, ...]:
    if isinstance(sentence, TokenizedSentence):
        return sentence.lex_stream
    out: list[str] = []
    for token in sentence:
        out.extend(token.lex)
    return tuple(out)


class _SpanParser:
    def __init__(self, lex: tuple[str, ...], grammar: Grammar, budget: int):
        self.lex = lex
        self.g = grammar
        self.budget = budget
        self._inst_memo: dict = {}
        self._below_memo: dict = {}
        self.subst_candidates: dict[str, list[tuple[str, int]]] = {}
        self.adjoin_candidates: dict[str, list[tuple[str, int]]] = {}
        for pair in grammar.pairs:
            for ci, comp in enumerate(pair.source.components):
                table = (self.adjoin_candidates if comp.is_auxiliary
                         else self.subst_candidates)
                table.setdefault(comp.root_cat, []).append((pair.name, ci))

    def instances(self, pair_name: str, comp: int, i: int, j: int,
                  budget: int) -> tuple[InstParse, ...]:
        """All parses of one whole component instance over lex[i:j]."""
        key = (pair_name, comp, i, j, budget)
        hit = self._inst_memo.get(key)
        if hit is not None:
            return hit
        if budget < 1:
            self._inst_memo[key] = ()
            return ()
        out = tuple(
            InstParse(pair=pair_name, comp=comp, i=i, j=j, gap=gap, ops=ops,
                      size=1 + size)
            for gap, ops, size in self.at(pair_name, comp, ROOT, i, j, budget - 1))
        self._inst_memo[key] = out
        return out

    def at(self, pair_name: str, comp: int, addr: GornAddress, i: int, j: int,
           budget: int):
        """Parses of the subtree at addr, allowing one adjunction at addr."""
        node = self.g.pair(pair_name).component(comp).node_at(addr)
        results = []
        if node.adjoin != ADJOIN_OA:
            results.extend(self.below(pair_name, comp, addr, i, j, budget))
        if node.kind == KIND_INTERIOR and node.adjoin != ADJOIN_NA:
            for aux_pair, aux_comp in self.adjoin_candidates.get(node.cat, ()):
                for aux in self.instances(aux_pair, aux_comp, i, j, budget):
                    gi, gj = aux.gap
                    inner = self.below(pair_name, comp, addr, gi, gj,
                                       budget - aux.size)
                    for gap, ops, size in inner:
                        results.append((gap, ops + (Op(addr, OP_ADJOIN, aux),),
                                        size + aux.size))
        return results

    def below(self, pair_name: str, comp: int, addr: GornAddress, i: int, j: int,
              budget: int):
        """Parses of the subtree at addr with no adjunction at addr itself."""
        key = (pair_name, comp, addr, i, j, budget)
        hit = self._below_memo.get(key)
        if hit is not None:
            return hit
        node = self.g.pair(pair_name).component(comp).node_at(addr)
        results: list[tuple] = []
        if node.kind == KIND_LEX:
            if j == i + 1 and self.lex[i] == node.word:
                results.append((None, (), 0))
        elif node.kind == KIND_EMPTY:
            if i == j:
                results.append((None, (), 0))
        elif node.kind == KIND_FOOT:
            results.append(((i, j), (), 0))
        elif node.kind == KIND_SUBST:
            for sub_pair, sub_comp in self.subst_candidates.get(node.cat, ()):
                for inst in self.instances(sub_pair, sub_comp, i, j, budget):
                    results.append((None, (Op(addr, OP_SUBST, inst),), inst.size))
        else:
            child_addrs = [addr.child(k) for k in range(1, len(node.children) + 1)]
            results.extend(self._split(pair_name, comp, child_addrs, i, j, budget))
        results = tuple(results)
        self._below_memo[key] = results
        return results

    def _split(self, pair_name: str, comp: int, addrs, i: int, j: int, budget: int):
        """Partition lex[i:j] over sibling subtrees, threading gap and budget."""
        if not addrs:
            return [(None, (), 0)] if i == j else []
        head, rest = addrs[0], addrs[1:]
        out = []
        for k in range(i, j + 1):
            firsts = self.at(pair_name, comp, head, i, k, budget)
            for gap1, ops1, size1 in firsts:
                for gap2, ops2, size2 in self._split(
                        pair_name, comp, rest, k, j, budget - size1):
                    if gap1 is not None and gap2 is not None:
                        continue
                    out.append((gap1 or gap2, ops1 + ops2, size1 + size2))
        return out


def _collect_instances(root: InstParse):
    """Flatten an instance tree into (instances, edges by child index)."""
    instances: list[InstParse] = []
    edges: dict[int, tuple[int, Op]] = {}

    def walk(inst: InstParse) -> int:
        idx = len(instances)
        instances.append(inst)
        for op in inst.ops:
            child_idx = walk(op.inst)
            edges[child_idx] = (idx, op)
        return idx

    walk(root)
    return instances, edges


def _groupings(instances, grammar: Grammar):
    """Yield use assignments: instance index -> use id.

    Singleton-pair instances each get their own use. Instances of a
    multi-component pair are grouped by matching the instance lists of its
    components bijectively; every bijection is one candidate reading.
    """
    by_pair_comp: dict[tuple[str, int], list[int]] = {}
    for idx, inst in enumerate(instances):
        if grammar.pair(inst.pair).source.is_multi:
            by_pair_comp.setdefault((inst.pair, inst.comp), []).append(idx)

    multi_pairs = sorted({name for name, _ in by_pair_comp})
    match_spaces = []
    for name in multi_pairs:
        pair = grammar.pair(name)
        lists = [by_pair_comp.get((name, c), []) for c in range(pair.n_components)]
        base = lists[0]
        if any(len(lst) != len(base) for lst in lists):
            return
        # one matching = for each further component, a permutation aligning
        # its instances with component 0's, position by position
        perms_per_comp = [itertools.permutations(lst) for lst in lists[1:]]
        matchings = []
        for combo in itertools.product(*perms_per_comp):
            groups = []
            for pos, anchor_idx in enumerate(base):
                group = (anchor_idx,) + tuple(perm[pos] for perm in combo)
                groups.append(group)
            matchings.append(tuple(groups))
        match_spaces.append(matchings)

    for chosen in itertools.product(*match_spaces):
        assignment: dict[int, int] = {}
        next_use = 0
        grouped: dict[int, tuple[int, ...]] = {}
        for matching in chosen:
            for group in matching:
                for idx in group:
                    grouped[idx] = group
        seen_groups: dict[tuple[int, ...], int] = {}
        for idx in range(len(instances)):
            if idx in assignment:
                continue
            group = grouped.get(idx)
            if group is None:
                assignment[idx] = next_use
                next_use += 1
            else:
                if group not in seen_groups:
                    seen_groups[group] = next_use
                    next_use += 1
                for member in group:
                    assignment[member] = seen_groups[group]
        yield assignment, next_use


def all_derivations(sentence, grammar: Grammar, *,
                    max_uses: int | None = None) -> tuple[Derivation, ...]:
    """Every valid derivation of the sentence, canonical and sorted.

    Derivations use at most max_uses pairs (default: token count plus two,
    enough for any set stacking the lexicon supports).
    """
    lex = _lex_stream(sentence)
    for word in lex:
        if word not in grammar.anchor_index and word not in grammar.particle_map:
            raise LexicalGapError(word)

    if max_uses is None:
        max_uses = len(lex) + 2
    max_comps = max((p.n_components for p in grammar.pairs), default=1)
    span = _SpanParser(lex, grammar, budget=max_uses * max_comps)

    found: set[Derivation] = set()
    for pair in grammar.pairs:
        head = pair.source.head
        head_tree = pair.source.head_tree
        if head_tree.is_auxiliary or head_tree.root_cat != grammar.start_symbol:
            continue
        for root_inst in span.instances(pair.name, head, 0, len(lex), span.budget):
            instances, edges = _collect_instances(root_inst)
            for assignment, n_uses in _groupings(instances, grammar):
                if n_uses > max_uses:
                    continue
                uses = [""] * n_uses
                for idx, inst in enumerate(instances):
                    uses[assignment[idx]] = inst.pair
                attachments = []
                for idx, (parent_idx, op) in edges.items():
                    attachments.append(Attachment(
                        use=assignment[idx], comp=instances[idx].comp,
                        host=assignment[parent_idx],
                        host_comp=instances[parent_idx].comp,
                        site=op.site, op=op.op))
                derivation = make_derivation(uses, assignment[0], attachments)
                tree = build_derived_tree(derivation, grammar)
                assert tree.yield_lex() == lex
                if dominance_violations(tree, grammar):
                    continue
                found.add(canonicalize(derivation, grammar))

    def order(d: Derivation):
        return (d.cost(grammar), tuple(sorted(d.uses)),
                tuple(str(a.site) for a in d.attachments),
                render_derivation(d, grammar))

    return tuple(sorted(found, key=order))


def rank_by_priority(derivations, grammar: Grammar) -> tuple[PriorityLevel, ...]:
    levels: dict[int, list[Derivation]] = {}
    for derivation in derivations:
        levels.setdefault(derivation.cost(grammar), []).append(derivation)
    return tuple(PriorityLevel(cost=cost, derivations=tuple(devs))
                 for cost, devs in sorted(levels.items()))


def parse(sentence, grammar: Grammar, *, all_levels: bool = False,
          max_uses: int | None = None):
    """Parse and rank; returns the minimal-cost derivations, or all levels.

    Only when the cheapest reading level is wanted (the default) do callers
    see a flat tuple; with all_levels=True the full ranking comes back as
    PriorityLevel records, cheapest first.
    """
    derivations = all_derivations(sentence, grammar, max_uses=max_uses)
    if not derivations:
        raise NoParseError("no derivation covers the input")
    levels = rank_by_priority(derivations, grammar)
    if all_levels:
        return levels
    return levels[0].derivations

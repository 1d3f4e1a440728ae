"""Data model: addresses, trees, pair validation, grammar indexing."""

import pytest
from hypothesis import given, strategies as st

from stagmt.errors import DuplicatePairNameError, NoStartPairError
from stagmt.model import (
    ADJOIN_NA,
    ADJOIN_OA,
    ElementaryTree,
    GornAddress,
    Link,
    Particle,
    ROOT,
    SourceSet,
    SyncPair,
    TreeNode,
    empty,
    foot,
    index_grammar,
    interior,
    lex,
    pair_errors,
    subst,
    validate_pair,
)

addresses = st.lists(st.integers(min_value=1, max_value=9), max_size=5).map(
    lambda p: GornAddress(tuple(p)))


class TestGornAddress:
    def test_root_spellings(self):
        assert GornAddress.parse("e") == ROOT
        assert str(ROOT) == "e"
        assert ROOT.is_root

    def test_parse_dotted(self):
        assert GornAddress.parse("2.2").path == (2, 2)
        assert GornAddress.parse("1").path == (1,)

    @pytest.mark.parametrize("bad", ["", "0", "1.0", "a", "1..2", "-1", "e.1"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            GornAddress.parse(bad)

    @given(addresses)
    def test_str_round_trip(self, addr):
        assert GornAddress.parse(str(addr)) == addr

    def test_child_and_parent(self):
        a = GornAddress.parse("2.1")
        assert a.child(3) == GornAddress.parse("2.1.3")
        assert a.parent() == GornAddress.parse("2")
        with pytest.raises(ValueError):
            ROOT.parent()

    @given(addresses, addresses)
    def test_dominance_is_prefix_order(self, a, b):
        dominates = a.strictly_dominates(b)
        assert dominates == (len(a.path) < len(b.path)
                             and b.path[: len(a.path)] == a.path)
        if dominates:
            assert not b.strictly_dominates(a)

    def test_root_dominates_everything_else(self):
        assert ROOT.strictly_dominates(GornAddress.parse("1"))
        assert not ROOT.strictly_dominates(ROOT)


class TestTreeNode:
    def test_factories(self):
        node = interior("S", subst("NP"), lex("V", "chases"))
        assert node.children[0].kind == "subst_slot"
        assert node.children[1].word == "chases"
        assert empty().kind == "empty"
        assert foot("S").kind == "foot"

    def test_feats_are_sorted_pairs(self):
        a = interior("OP", feats={"trace": "@set", "case": "acc"})
        b = interior("OP", feats=[("case", "acc"), ("trace", "@set")])
        assert a == b
        assert a.feat("trace") == "@set"
        assert a.feat("missing") is None
        assert a.feats_dict == {"case": "acc", "trace": "@set"}

    def test_nodes_are_hashable(self):
        assert len({lex("N", "Tom"), lex("N", "Tom"), lex("N", "Jerry")}) == 2


class TestElementaryTree:
    def make_aux(self):
        return ElementaryTree(interior(
            "S", interior("OP", subst("N")), foot("S")))

    def test_addressing(self):
        tree = self.make_aux()
        assert tree.node_at(ROOT).cat == "S"
        assert tree.node_at(GornAddress.parse("1.1")).kind == "subst_slot"
        assert tree.node_at(GornAddress.parse("9")) is None

    def test_foot_and_auxiliary(self):
        tree = self.make_aux()
        assert tree.is_auxiliary
        assert tree.foot_address == GornAddress.parse("2")
        initial = ElementaryTree(interior("NP", lex("N", "Tom")))
        assert not initial.is_auxiliary
        assert initial.foot_address is None

    def test_slot_and_lex_tables(self):
        tree = ElementaryTree(interior(
            "S", subst("SP"), subst("OP"), lex("V", "ccossnunta")))
        assert [str(a) for a in tree.subst_addresses] == ["1", "2"]
        assert tree.lex_words == ("ccossnunta",)

    def test_operable(self):
        tree = ElementaryTree(interior(
            "S", subst("SP"), interior("VP", feats=None, adjoin=ADJOIN_NA),
            lex("V", "x")))
        assert tree.operable(GornAddress.parse("1"))      # slot
        assert tree.operable(ROOT)                        # interior, allow
        assert not tree.operable(GornAddress.parse("2"))  # interior, na
        assert not tree.operable(GornAddress.parse("3"))  # lex leaf
        assert not tree.operable(GornAddress.parse("8"))  # absent


def _singleton(name, tree, target=None, links=(), priority=1):
    return SyncPair(name=name, source=SourceSet(components=(ElementaryTree(tree),)),
                    target=ElementaryTree(target if target is not None else tree),
                    links=tuple(links), priority=priority)


def _beta(name="beta_x", head=1, dominance=((0, 1),), priority=2):
    scrambled = ElementaryTree(interior(
        "S",
        interior("OP", lex("N", "X"), lex("P", "lul"), feats={"trace": "@set"}),
        foot("S")))
    placeholder = ElementaryTree(interior("OP", empty(), feats={"trace": "@set"}))
    return SyncPair(
        name=name,
        source=SourceSet(components=(scrambled, placeholder), head=head,
                         dominance=tuple(dominance)),
        target=ElementaryTree(interior("NP", lex("N", "X"))),
        links=(), priority=priority)


class TestValidatePair:
    def test_shipped_pairs_are_clean(self, g_chase, g_ditransitive, g_embedded):
        for grammar in (g_chase, g_ditransitive, g_embedded):
            for pair in grammar.pairs:
                assert pair_errors(pair) == []

    def test_well_formed_beta_is_clean(self):
        assert pair_errors(_beta()) == []

    def test_head_must_be_place_holder(self):
        swapped = _beta(head=0, dominance=())
        rules = {d.rule for d in pair_errors(swapped)}
        assert "head-convention" in rules

    def test_place_holder_must_be_dominated(self):
        undominated = _beta(dominance=())
        rules = {d.rule for d in pair_errors(undominated)}
        assert "placeholder-dominance" in rules

    def test_dominance_indices_checked(self):
        bad = _beta(dominance=((0, 5),))
        rules = {d.rule for d in pair_errors(bad)}
        assert "dominance-index" in rules

    def test_singletons_may_not_use_set_variable(self):
        pair = _singleton("alpha_bad", interior(
            "OP", empty(), feats={"trace": "@set"}))
        rules = {d.rule for d in pair_errors(pair)}
        assert "set-variable" in rules

    def test_link_must_name_operable_node(self):
        tree = interior("S", subst("SP"), lex("V", "x"))
        pair = _singleton("gamma_bad", tree,
                          links=[Link(comp=0, src=GornAddress.parse("2"),
                                      tgt=ROOT)])
        rules = {d.rule for d in pair_errors(pair)}
        assert "link-src" in rules

    def test_duplicate_link_sources_rejected(self):
        tree = interior("S", subst("SP"), lex("V", "x"))
        target = interior("S", subst("NP"), subst("NP"))
        pair = _singleton("gamma_dup", tree, target=target, links=[
            Link(comp=0, src=GornAddress.parse("1"), tgt=GornAddress.parse("1")),
            Link(comp=0, src=GornAddress.parse("1"), tgt=GornAddress.parse("2")),
        ])
        rules = {d.rule for d in pair_errors(pair)}
        assert "duplicate-link-src" in rules

    def test_unlinked_target_slot_rejected(self):
        tree = interior("S", subst("SP"), lex("V", "x"))
        target = interior("S", subst("NP"), subst("NP"))
        pair = _singleton("gamma_gap", tree, target=target, links=[
            Link(comp=0, src=GornAddress.parse("1"), tgt=GornAddress.parse("1"))])
        rules = {d.rule for d in pair_errors(pair)}
        assert "unlinked-substitution" in rules

    def test_priority_must_be_positive(self):
        pair = _singleton("alpha_zero", interior("NP", lex("N", "Tom")), priority=0)
        rules = {d.rule for d in pair_errors(pair)}
        assert "priority" in rules

    def test_lex_needs_word_and_interior_needs_children(self):
        no_word = _singleton("alpha_noword", interior(
            "NP", TreeNode(cat="N", kind="lex")))
        assert "lex-word" in {d.rule for d in pair_errors(no_word)}
        bare = _singleton("alpha_bare", interior("NP"))
        assert "interior-children" in {d.rule for d in pair_errors(bare)}

    def test_two_feet_rejected(self):
        double = SyncPair(
            name="beta_twofeet",
            source=SourceSet(components=(
                ElementaryTree(interior("S", foot("S"), foot("S"))),)),
            target=ElementaryTree(interior("NP", lex("N", "X"))))
        assert "multiple-feet" in {d.rule for d in pair_errors(double)}

    def test_diagnostics_name_pair_and_rule(self):
        diag = pair_errors(_beta(head=0, dominance=()))[0]
        assert diag.pair == "beta_x"
        assert diag.rule
        assert str(diag)  # renders without crashing

    def test_validate_pair_ignores_link_order(self):
        tree = interior("S", subst("SP"), subst("OP"), lex("V", "x"))
        target = interior("S", subst("NP"), interior("VP", lex("V", "y"), subst("NP")))
        links = [
            Link(comp=0, src=GornAddress.parse("1"), tgt=GornAddress.parse("1")),
            Link(comp=0, src=GornAddress.parse("2"), tgt=GornAddress.parse("2.2")),
        ]
        forward = _singleton("gamma_two", tree, target=target, links=links)
        backward = _singleton("gamma_two", tree, target=target, links=links[::-1])
        assert ({d.rule for d in validate_pair(forward)}
                == {d.rule for d in validate_pair(backward)})


class TestIndexGrammar:
    def test_duplicate_names_rejected(self):
        a = _singleton("alpha_tom", interior("NP", lex("N", "Tom")))
        with pytest.raises(DuplicatePairNameError):
            index_grammar([a, a], source_language="ko", target_language="en",
                          start_symbol="S", particles=[])

    def test_start_pair_required(self):
        a = _singleton("alpha_tom", interior("NP", lex("N", "Tom")))
        with pytest.raises(NoStartPairError):
            index_grammar([a], source_language="ko", target_language="en",
                          start_symbol="S", particles=[])

    def test_anchor_index_excludes_particles(self, g_chase):
        assert g_chase.anchor_index == {
            "Jerry": ("alpha_jerry_op", "alpha_jerry_sp",
                      "beta_jerry_op", "beta_jerry_sp"),
            "Tom": ("alpha_tom_op", "alpha_tom_sp", "beta_tom_sp"),
            "ccossnunta": ("gamma_chase",),
        }

    def test_particle_map(self, g_chase):
        assert g_chase.particle_map == {
            "i": "nom", "ka": "nom", "lul": "acc", "ul": "acc"}

    def test_pair_lookup(self, g_chase):
        assert g_chase.pair("gamma_chase").priority == 1
        assert g_chase.pair("beta_jerry_op").priority == 2
        assert g_chase.pair("beta_jerry_op").source.is_multi

    def test_grammar_is_immutable_and_shareable(self, g_chase):
        pair = g_chase.pair("gamma_chase")
        with pytest.raises(AttributeError):
            pair.priority = 5


def test_obligatory_adjoin_value_is_modelled():
    tree = ElementaryTree(interior("S", interior(
        "VP", lex("V", "x"), adjoin=ADJOIN_OA)))
    node = tree.node_at(GornAddress.parse("1"))
    assert node.adjoin == ADJOIN_OA


def test_particle_record():
    assert Particle(form="lul", case="acc").case == "acc"

"""Elementary-tree validation, lexicalization, CFG composition and the
grammar text format."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import tagforge as tf
from tagforge.errors import CompositionError, GrammarFormatError
from tagforge.grammar import Word

from conftest import random_auxiliary, random_initial

# The little English CFG used throughout: S -> NP VP, VP -> really VP,
# VP -> V NP, V -> likes, NP -> John, NP -> Lyn.
RULES = [
    tf.CfgRule("S", ("NP", "VP")),
    tf.CfgRule("VP", (Word("really"), "VP")),
    tf.CfgRule("VP", ("V", "NP")),
    tf.CfgRule("V", (Word("likes"),)),
    tf.CfgRule("NP", (Word("John"),)),
    tf.CfgRule("NP", (Word("Lyn"),)),
]

ALPHA1_SRC = '(S NP! (VP (V "likes"@) NP!))'
BETA1_SRC = '(VP "really"@ VP*)'


def test_validate_alpha1():
    tree = tf.ElementaryTree("alpha1", "initial", tf.parse_tree_expr(ALPHA1_SRC))
    report = tf.validate_tree(tree)
    assert report.ok
    assert not report.warnings
    assert tree.anchor_lexeme == "likes"


def test_validate_beta1():
    tree = tf.ElementaryTree("beta1", "aux", tf.parse_tree_expr(BETA1_SRC))
    report = tf.validate_tree(tree)
    assert report.ok
    assert tree.node_at((2,)).kind == "foot"
    assert tree.node_at((2,)).label == tree.root.label == "VP"


def test_validate_foot_root_mismatch():
    bad = tf.ElementaryTree("bad", "aux", tf.parse_tree_expr('(VP "really"@ S*)'))
    report = tf.validate_tree(bad)
    assert not report.ok
    assert any("foot/root label mismatch" in v for v in report.violations)


def test_validate_initial_with_foot():
    bad = tf.ElementaryTree("bad", "initial", tf.parse_tree_expr('(VP "x"@ VP*)'))
    report = tf.validate_tree(bad)
    assert any("may not contain a foot node" in v for v in report.violations)


def test_validate_auxiliary_without_foot():
    bad = tf.ElementaryTree("bad", "aux", tf.parse_tree_expr('(VP "x"@)'))
    report = tf.validate_tree(bad)
    assert any("exactly one foot node" in v for v in report.violations)


def test_validate_anchorless_is_warning_not_violation():
    tree = tf.ElementaryTree("r1", "initial", tf.parse_tree_expr("(S NP! VP!)"))
    report = tf.validate_tree(tree)
    assert report.ok
    assert any("no anchor" in w for w in report.warnings)


def test_check_lexicalized_cfg_rules_flags_anchorless():
    trees = tf.cfg_to_trees(RULES)
    grammar = tf.Grammar(trees={t.id: t for t in trees}, start_symbol="S")
    report = tf.check_lexicalized(grammar)
    assert not report.lexicalized
    # r1 is S -> NP VP and r3 is VP -> V NP: the two purely nonterminal rules.
    assert set(report.offenders) == {"r1", "r3"}
    assert report.census["r2"] == 1  # VP -> really VP anchors "really"


def test_check_lexicalized_tsg(english):
    report = tf.check_lexicalized(english)
    assert report.lexicalized
    assert set(report.census.values()) == {1}


def test_check_lexicalized_empty_grammar():
    assert tf.check_lexicalized(tf.Grammar()).lexicalized


def test_check_lexicalized_includes_set_members(german_mc):
    report = tf.check_lexicalized(german_mc)
    assert report.lexicalized
    assert "beta_a" in report.census and "beta_b" in report.census


def test_check_lexicalized_order_independent(english):
    report = tf.check_lexicalized(english)
    shuffled = tf.Grammar(
        trees=dict(reversed(list(english.trees.items()))),
        start_symbol=english.start_symbol,
    )
    other = tf.check_lexicalized(shuffled)
    assert report.lexicalized == other.lexicalized
    assert report.census == other.census


def test_compose_rules_builds_alpha1():
    # (1a) expanded by (1c) at RHS position 2, then (1d) at position 1.
    composed = tf.compose_rules(RULES, [(0, 0), (2, 2), (3, 1)], tree_id="alpha1")
    expected = tf.parse_tree_expr(ALPHA1_SRC)
    assert composed.root == expected
    assert tf.validate_tree(composed).ok
    assert composed.anchor_lexeme == "likes"


def test_compose_single_lexical_rule():
    composed = tf.compose_rules(RULES, [(4, 0)], tree_id="alpha2")
    assert composed.root == tf.parse_tree_expr('(NP "John"@)')


def test_compose_rules_broken_spine():
    with pytest.raises(CompositionError):
        # (1d) V -> likes cannot rewrite the NP at position 1 of (1a).
        tf.compose_rules(RULES, [(0, 0), (3, 1)])


def test_compose_rules_position_out_of_range():
    with pytest.raises(CompositionError):
        tf.compose_rules(RULES, [(0, 0), (2, 5)])


def test_merge_rules_flattening():
    merged = tf.merge_rules(RULES, [(0, 0), (2, 2), (3, 1)])
    assert merged == tf.CfgRule("S", ("NP", Word("likes"), "NP"))


def test_cfg_to_trees_shapes():
    trees = tf.cfg_to_trees(RULES)
    assert len(trees) == 6
    john = trees[4]
    assert john.root == tf.parse_tree_expr('(NP "John"@)')
    s_rule = trees[0]
    assert [c.kind for c in s_rule.root.children] == ["substitution", "substitution"]


def test_grammar_format_round_trip(english, english_wh, dutch, german_mc):
    for grammar in (english, english_wh, dutch, german_mc):
        text = tf.serialize_grammar(grammar)
        again = tf.parse_grammar(text)
        assert again.start_symbol == grammar.start_symbol
        assert set(again.trees) == set(grammar.trees)
        for tid, tree in grammar.trees.items():
            assert again.trees[tid].root == tree.root
            assert again.trees[tid].shape == tree.shape
        assert set(again.tree_sets) == set(grammar.tree_sets)
        for sid, ts in grammar.tree_sets.items():
            assert [m.root for m in again.tree_sets[sid].members] == [
                m.root for m in ts.members
            ]


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9), shape=st.sampled_from(["initial", "aux"]))
def test_random_tree_round_trip(seed, shape):
    rng = random.Random(seed)
    if shape == "initial":
        tree = random_initial(rng, "S")
    else:
        tree = random_auxiliary(rng, "S")
    text = tf.serialize_grammar(
        tf.Grammar(trees={tree.id: tree}, start_symbol="S")
    )
    again = tf.parse_grammar(text)
    assert again.trees[tree.id].root == tree.root


def test_parse_grammar_errors():
    with pytest.raises(GrammarFormatError):
        tf.parse_grammar("tree a initial (S)")  # childless interior node
    with pytest.raises(GrammarFormatError):
        tf.parse_grammar("tree a initial (S NP)")  # unmarked frontier label
    with pytest.raises(GrammarFormatError):
        tf.parse_grammar("tree a sideways (S NP!)")
    with pytest.raises(GrammarFormatError):
        tf.parse_grammar("set s { missing }")


def test_start_symbol_inferred():
    g = tf.parse_grammar('tree a initial (NP "John"@)')
    assert g.start_symbol == "NP"
    g2 = tf.parse_grammar('start S\ntree a initial (NP "John"@)')
    assert g2.start_symbol == "S"

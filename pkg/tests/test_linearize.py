"""Two-segment syntagm linearization: the Dutch cross-serial rules, the
projective English rules, and the rule DSL's error behavior."""
import pytest

import tagforge as tf
from tagforge import corpus
from tagforge.dependency import resolve_order
from tagforge.errors import AmbiguousRule, GrammarFormatError, NoRule, TagError

from conftest import load_script


@pytest.fixture(scope="module")
def dutch_rules():
    return tf.parse_rules(corpus.read("dutch.syn"))


@pytest.fixture(scope="module")
def fig18():
    return tf.parse_dependency(corpus.read("fig18.dep"))


def test_zwemmen_leaf_pair(dutch_rules, fig18):
    pairs = tf.segment_pairs(fig18, dutch_rules)
    assert pairs["zwemmen"].as_strings() == ("", "zwemmen")


def test_leren_pair(dutch_rules, fig18):
    pairs = tf.segment_pairs(fig18, dutch_rules)
    assert pairs["leren"].as_strings() == ("de kinderen", "leren zwemmen")


def test_helpen_pair(dutch_rules, fig18):
    pairs = tf.segment_pairs(fig18, dutch_rules)
    assert pairs["helpen"].as_strings() == (
        "Jan Marie de kinderen",
        "helpen leren zwemmen",
    )


def test_full_dutch_linearization(dutch_rules, fig18):
    words = tf.linearize(fig18, dutch_rules)
    assert " ".join(words) == (
        "omdat Wim Jan Marie de kinderen zien helpen leren zwemmen"
    )


def test_single_node_tree(dutch_rules):
    tree = tf.parse_dependency("dep Jan")
    assert tf.linearize(tree, dutch_rules) == ["Jan"]


def test_english_projective_rules(english):
    rules = tf.parse_rules(corpus.read("english_projective.syn"))
    script = load_script("fig7.drv", english)
    dep = tf.derivation_to_dependency(script, english)
    derived_sentence = tf.run_derivation(english, script)[1]
    words = tf.linearize(dep, rules)
    assert " ".join(words) == derived_sentence == "John really likes Lyn"
    # Projective degenerate case: the produced order is projective.
    order = resolve_order(dep, words)
    assert tf.is_projective(dep, order).projective


def test_cross_validation_with_tag_derivation(dutch, dutch_rules, fig18):
    # The linearizer's order over the dependency tree matches the TAG
    # derivation's yield, modulo the inflected matrix verb (zag vs zien).
    script = load_script("fig13.drv", dutch)
    _, tag_sentence = tf.run_derivation(dutch, script)
    lin_sentence = " ".join(tf.linearize(fig18, dutch_rules))
    assert lin_sentence.replace("zien", "zag") == tag_sentence


def test_no_rule_error():
    ruleset = tf.parse_rules(
        "class V = a\nrule only when head.lex=a { y1 = empty ; y2 = head }"
    )
    tree = tf.parse_dependency("dep b")
    with pytest.raises(NoRule):
        tf.linearize(tree, ruleset)


def test_ambiguous_rule_error():
    ruleset = tf.parse_rules(
        "rule r1 when any { y1 = empty ; y2 = head }\n"
        "rule r2 when any { y1 = head ; y2 = empty }"
    )
    tree = tf.parse_dependency("dep x")
    with pytest.raises(AmbiguousRule) as excinfo:
        tf.linearize(tree, ruleset)
    assert set(excinfo.value.rule_names) == {"r1", "r2"}


def test_word_conservation_guard():
    # A rule that drops its dependent's segments is rejected.
    ruleset = tf.parse_rules(
        "rule drop when exists dep { y1 = empty ; y2 = head }\n"
        "rule leaf when not exists dep { y1 = head ; y2 = empty }"
    )
    tree = tf.parse_dependency("dep x { y:1 }")
    with pytest.raises(TagError):
        tf.linearize(tree, ruleset)


def test_head_placed_twice_guard():
    ruleset = tf.parse_rules("rule twice when any { y1 = head ++ head ; y2 = empty }")
    tree = tf.parse_dependency("dep x")
    with pytest.raises(TagError):
        tf.linearize(tree, ruleset)


def test_error_names_node_path():
    ruleset = tf.parse_rules("rule leaf when not exists dep { y1 = head ; y2 = empty }")
    tree = tf.parse_dependency("dep a { b:1 { c:1 } }")
    with pytest.raises(NoRule) as excinfo:
        tf.linearize(tree, ruleset)
    assert "a/b" in str(excinfo.value)


def test_covert_nodes_contribute_nothing(dutch_rules):
    tree = tf.parse_dependency(
        "dep leren { (PRO):1 zwemmen:2 }"
    )
    # With the covert subject invisible, leren has only a verbal dependent.
    words = tf.linearize(tree, dutch_rules)
    assert words == ["leren", "zwemmen"]


def test_rule_file_errors():
    with pytest.raises(GrammarFormatError):
        tf.parse_rules("rule r when any { y1 = head }")  # y2 missing
    with pytest.raises(GrammarFormatError):
        tf.parse_rules("rule r when any { y1 = head ; y2 = bogus() }")
    with pytest.raises(GrammarFormatError):
        tf.parse_rules("not a rule file at all")
    with pytest.raises(GrammarFormatError):
        tf.parse_rules(
            "rule r when any { y1 = head ; y2 = empty }\n"
            "rule r when any { y1 = head ; y2 = empty }"
        )  # duplicate names


def test_deps_term_keeps_input_order():
    ruleset = tf.parse_rules(
        "rule noun when exists dep.rel=ATTR { y1 = deps(ATTR) ++ head ; y2 = empty }\n"
        "rule leaf when not exists dep { y1 = head ; y2 = empty }"
    )
    tree = tf.parse_dependency("dep kinderen { de:ATTR }")
    assert tf.linearize(tree, ruleset) == ["de", "kinderen"]


def test_nominals_sorted_by_actant_index():
    ruleset = tf.parse_rules(
        "rule clause when exists dep { y1 = nominals(byActant) ++ head ; y2 = empty }\n"
        "rule leaf when not exists dep { y1 = head ; y2 = empty }"
    )
    # Declared object-first; nominals(byActant) still orders by index.
    tree = tf.parse_dependency("dep helpt { Marie:2 Jan:1 }")
    assert tf.linearize(tree, ruleset) == ["Jan", "Marie", "helpt"]

"""tagforge: lexicalized Tree Adjoining Grammar engine.

Derives sentences by substitution, adjunction and set adjunction, keeps
the derivation tree as a dependency structure, parses with a polynomial
chart recognizer, checks projectivity, and linearizes dependency trees
through two-segment syntagm rules.
"""

from .chart import ParseResult, enumerate_language, parse, recognize
from .dependency import (
    DependencyTree,
    DepNode,
    derivation_to_dependency,
    is_projective,
    parse_dependency,
    serialize_dependency,
)
from .derive import (
    DerivationStep,
    DerivationTree,
    PhraseTree,
    adjoin,
    adjoin_set,
    parse_script,
    run_derivation,
    substitute,
)
from .grammar import (
    CfgRule,
    ElementaryTree,
    Grammar,
    TreeSet,
    Word,
    cfg_to_trees,
    check_lexicalized,
    compose_rules,
    merge_rules,
    validate_tree,
)
from .grammar_io import parse_grammar, parse_tree_expr, serialize_grammar
from .linearize import SegmentPair, linearize, linearize_node, parse_rules, segment_pairs

__version__ = "0.1.0"

__all__ = [
    "CfgRule",
    "DependencyTree",
    "DepNode",
    "DerivationStep",
    "DerivationTree",
    "ElementaryTree",
    "Grammar",
    "ParseResult",
    "PhraseTree",
    "SegmentPair",
    "TreeSet",
    "Word",
    "adjoin",
    "adjoin_set",
    "cfg_to_trees",
    "check_lexicalized",
    "compose_rules",
    "derivation_to_dependency",
    "enumerate_language",
    "is_projective",
    "linearize",
    "linearize_node",
    "merge_rules",
    "parse",
    "parse_dependency",
    "parse_grammar",
    "parse_rules",
    "parse_script",
    "parse_tree_expr",
    "recognize",
    "run_derivation",
    "segment_pairs",
    "serialize_dependency",
    "serialize_grammar",
    "substitute",
    "validate_tree",
]

"""Grammars, elementary trees, well-formedness checks and CFG composition."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import CompositionError
from .trees import (
    ANCHOR,
    FOOT,
    INTERIOR,
    SUBSTITUTION,
    TERMINAL,
    Address,
    TreeNode,
    format_address,
    walk,
)

INITIAL = "initial"
AUXILIARY = "aux"


class Word(str):
    """A terminal word on the right-hand side of a CFG rule.

    Plain strings in a rule RHS are nonterminal category labels; wrapping
    a string in ``Word`` marks it as a surface terminal.
    """

    __slots__ = ()

    def __repr__(self):
        return f"Word({str.__repr__(self)})"


@dataclass(frozen=True)
class CfgRule:
    lhs: str
    rhs: tuple[str, ...]

    def __post_init__(self):
        if not self.rhs:
            raise ValueError("CFG rule needs a nonempty right-hand side")


@dataclass(frozen=True)
class ElementaryTree:
    """An initial or auxiliary tree with at most one lexical anchor."""

    id: str
    shape: str  # INITIAL or AUXILIARY
    root: TreeNode

    @property
    def anchor_lexeme(self) -> str | None:
        anchors = self.anchor_addresses()
        if len(anchors) != 1:
            return None
        return self.node_at(anchors[0]).label

    def node_at(self, address: Address) -> TreeNode:
        from .trees import node_at

        return node_at(self.root, address)

    def anchor_addresses(self) -> list[Address]:
        return [a for a, n in walk(self.root) if n.kind == ANCHOR]

    def foot_addresses(self) -> list[Address]:
        return [a for a, n in walk(self.root) if n.kind == FOOT]

    def substitution_addresses(self) -> list[Address]:
        return [a for a, n in walk(self.root) if n.kind == SUBSTITUTION]

    def interior_addresses(self) -> list[Address]:
        return [a for a, n in walk(self.root) if n.kind == INTERIOR]


@dataclass(frozen=True)
class TreeSet:
    """Trees that must all be adjoined in one step (non-local MC-TAG)."""

    id: str
    members: tuple[ElementaryTree, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError(f"tree set {self.id!r} has no members")
        ids = [m.id for m in self.members]
        if len(set(ids)) != len(ids):
            raise ValueError(f"tree set {self.id!r} has duplicate member ids")


@dataclass
class Grammar:
    trees: dict[str, ElementaryTree] = field(default_factory=dict)
    tree_sets: dict[str, TreeSet] = field(default_factory=dict)
    start_symbol: str | None = None

    @property
    def nonterminals(self) -> frozenset[str]:
        labels = set()
        for tree in self.all_trees():
            for _, node in walk(tree.root):
                if node.kind in (INTERIOR, SUBSTITUTION, FOOT):
                    labels.add(node.label)
        return frozenset(labels)

    def all_trees(self) -> list[ElementaryTree]:
        trees = list(self.trees.values())
        for ts in self.tree_sets.values():
            trees.extend(ts.members)
        return trees

    def tree(self, tree_id: str) -> ElementaryTree:
        if tree_id in self.trees:
            return self.trees[tree_id]
        for ts in self.tree_sets.values():
            for member in ts.members:
                if member.id == tree_id:
                    return member
        raise KeyError(f"no tree named {tree_id!r}")

    def initial_trees(self) -> list[ElementaryTree]:
        return [t for t in self.trees.values() if t.shape == INITIAL]

    def auxiliary_trees(self) -> list[ElementaryTree]:
        return [t for t in self.trees.values() if t.shape == AUXILIARY]


@dataclass
class ValidationReport:
    tree_id: str
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_tree(tree: ElementaryTree) -> ValidationReport:
    """Check the structural invariants of one elementary tree.

    Anchor-count problems are reported as warnings, not violations:
    anchorless trees are needed to encode plain CFG rules, and
    multi-anchor trees are how idioms would be written.  The
    lexicalization check rejects both.
    """
    report = ValidationReport(tree.id)
    for address, node in walk(tree.root):
        where = format_address(address)
        if node.kind == INTERIOR and not node.children:
            report.violations.append(f"{where}: interior node {node.label!r} has no children")
        if node.kind in (SUBSTITUTION, FOOT, ANCHOR, TERMINAL) and node.children:
            report.violations.append(f"{where}: {node.kind} node must be a frontier node")

    feet = tree.foot_addresses()
    if tree.shape == AUXILIARY:
        if len(feet) != 1:
            report.violations.append(
                f"0: auxiliary tree must have exactly one foot node, found {len(feet)}"
            )
        else:
            foot = tree.node_at(feet[0])
            if foot.label != tree.root.label:
                report.violations.append(
                    f"{format_address(feet[0])}: foot/root label mismatch "
                    f"({foot.label!r} under {tree.root.label!r})"
                )
    elif tree.shape == INITIAL:
        for address in feet:
            report.violations.append(
                f"{format_address(address)}: initial tree may not contain a foot node"
            )
    else:
        report.violations.append(f"0: unknown tree shape {tree.shape!r}")

    anchors = tree.anchor_addresses()
    if len(anchors) == 0:
        report.warnings.append("0: tree has no anchor (not lexicalized)")
    elif len(anchors) > 1:
        report.warnings.append(f"0: tree has {len(anchors)} anchors (idiom-style)")
    return report


@dataclass
class LexicalizationReport:
    lexicalized: bool
    census: dict[str, int]          # tree id -> anchor count
    offenders: list[str]            # ids of trees with anchor count != 1


def check_lexicalized(grammar: Grammar) -> LexicalizationReport:
    """True iff every elementary tree, tree-set members included, has
    exactly one anchor."""
    census = {}
    for tree in grammar.all_trees():
        census[tree.id] = len(tree.anchor_addresses())
    offenders = [tid for tid, n in census.items() if n != 1]
    return LexicalizationReport(not offenders, census, offenders)


def _rule_to_node(rule: CfgRule) -> TreeNode:
    children = []
    for item in rule.rhs:
        if isinstance(item, Word):
            children.append(TreeNode(TERMINAL, str(item)))
        else:
            children.append(TreeNode(SUBSTITUTION, item))
    return TreeNode(INTERIOR, rule.lhs, tuple(children))


def compose_rules(
    rules: Sequence[CfgRule],
    spine: Sequence[tuple[int, int]],
    tree_id: str = "composed",
) -> ElementaryTree:
    """Compose CFG rules along a spine into one elementary tree.

    ``spine`` lists (rule index, attachment position) pairs; each rule
    after the first expands the nonterminal at the given 1-based RHS
    position of its predecessor.  Unexpanded nonterminal leaves become
    substitution nodes; the first terminal introduced by the last spine
    rule becomes the anchor.
    """
    if not spine:
        raise CompositionError("empty spine")
    first_idx, _ = spine[0]
    root = _rule_to_node(rules[first_idx])
    prev_rule = rules[first_idx]
    prev_addr: tuple[int, ...] = ()
    for rule_idx, pos in spine[1:]:
        rule = rules[rule_idx]
        if not 1 <= pos <= len(prev_rule.rhs):
            raise CompositionError(
                f"rule {rule.lhs!r}: attachment position {pos} outside predecessor RHS"
            )
        target = prev_rule.rhs[pos - 1]
        if isinstance(target, Word) or target != rule.lhs:
            raise CompositionError(
                f"rule {rule.lhs!r} cannot rewrite RHS item {target!r} at position {pos}"
            )
        addr = prev_addr + (pos,)
        root = _replace_subst(root, addr, _rule_to_node(rule))
        prev_rule, prev_addr = rule, addr

    # Mark the anchor inside the expansion of the final spine rule.
    anchor_index = None
    for i, item in enumerate(prev_rule.rhs, start=1):
        if isinstance(item, Word):
            anchor_index = i
            break
    if anchor_index is not None:
        addr = prev_addr + (anchor_index,)
        from .trees import node_at, replace_at

        word = node_at(root, addr)
        root = replace_at(root, addr, TreeNode(ANCHOR, word.label))
    return ElementaryTree(tree_id, INITIAL, root)


def _replace_subst(root: TreeNode, address: Address, replacement: TreeNode) -> TreeNode:
    from .trees import node_at, replace_at

    old = node_at(root, address)
    if old.kind != SUBSTITUTION:
        raise CompositionError(f"node at {format_address(address)} already expanded")
    return replace_at(root, address, replacement)


def merge_rules(rules: Sequence[CfgRule], spine: Sequence[tuple[int, int]]) -> CfgRule:
    """Flatten a rule spine into a single rewrite rule instead of a tree."""
    if not spine:
        raise CompositionError("empty spine")
    first_idx, _ = spine[0]
    lhs = rules[first_idx].lhs
    rhs = list(rules[first_idx].rhs)
    # Track where each RHS item of the most recently merged rule now sits.
    offset = 0
    prev_rule = rules[first_idx]
    for rule_idx, pos in spine[1:]:
        rule = rules[rule_idx]
        if not 1 <= pos <= len(prev_rule.rhs):
            raise CompositionError(
                f"rule {rule.lhs!r}: attachment position {pos} outside predecessor RHS"
            )
        target = prev_rule.rhs[pos - 1]
        if isinstance(target, Word) or target != rule.lhs:
            raise CompositionError(
                f"rule {rule.lhs!r} cannot rewrite RHS item {target!r} at position {pos}"
            )
        at = offset + pos - 1
        rhs[at : at + 1] = list(rule.rhs)
        offset = at
        prev_rule = rule
    return CfgRule(lhs, tuple(rhs))


def cfg_to_trees(rules: Sequence[CfgRule], prefix: str = "r") -> list[ElementaryTree]:
    """Encode CFG rules one-to-one as depth-1 trees.

    The first terminal of a rule, if any, becomes the anchor; purely
    nonterminal rules yield anchorless trees that the lexicalization
    check will flag.
    """
    trees = []
    for i, rule in enumerate(rules, start=1):
        children = []
        anchored = False
        for item in rule.rhs:
            if isinstance(item, Word):
                kind = TERMINAL if anchored else ANCHOR
                anchored = True
                children.append(TreeNode(kind, str(item)))
            else:
                children.append(TreeNode(SUBSTITUTION, item))
        root = TreeNode(INTERIOR, rule.lhs, tuple(children))
        trees.append(ElementaryTree(f"{prefix}{i}", INITIAL, root))
    return trees

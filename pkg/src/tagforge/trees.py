"""Phrase-structure tree nodes and Gorn-style child-index addresses.

An address is a tuple of 1-based child indices from the root; the root
itself is the empty tuple, written ``0`` in the textual formats.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import GrammarFormatError

INTERIOR = "interior"
SUBSTITUTION = "substitution"
FOOT = "foot"
ANCHOR = "anchor"
TERMINAL = "terminal"

LEAF_KINDS = frozenset({SUBSTITUTION, FOOT, ANCHOR, TERMINAL})
WORD_KINDS = frozenset({ANCHOR, TERMINAL})

Address = tuple[int, ...]


@dataclass(frozen=True)
class TreeNode:
    """One node of an elementary or derived phrase-structure tree.

    ``label`` is a category label for interior, substitution and foot
    nodes, and a surface word for anchor and terminal nodes.
    """

    kind: str
    label: str
    children: tuple["TreeNode", ...] = ()

    def __post_init__(self):
        if self.kind in LEAF_KINDS and self.children:
            raise ValueError(f"{self.kind} node {self.label!r} must be a leaf")

    def is_leaf(self) -> bool:
        return self.kind in LEAF_KINDS


def interior(label: str, *children: TreeNode) -> TreeNode:
    return TreeNode(INTERIOR, label, tuple(children))


def subst_node(label: str) -> TreeNode:
    return TreeNode(SUBSTITUTION, label)


def foot_node(label: str) -> TreeNode:
    return TreeNode(FOOT, label)


def anchor(word: str) -> TreeNode:
    return TreeNode(ANCHOR, word)


def terminal(word: str) -> TreeNode:
    return TreeNode(TERMINAL, word)


def node_at(root: TreeNode, address: Address) -> TreeNode:
    node = root
    for index in address:
        if not 1 <= index <= len(node.children):
            raise KeyError(f"address {format_address(address)} out of bounds")
        node = node.children[index - 1]
    return node


def replace_at(root: TreeNode, address: Address, replacement: TreeNode) -> TreeNode:
    """Return a copy of ``root`` with the subtree at ``address`` replaced."""
    if not address:
        return replacement
    index = address[0]
    if not 1 <= index <= len(root.children):
        raise KeyError(f"address component {index} out of bounds")
    children = list(root.children)
    children[index - 1] = replace_at(children[index - 1], address[1:], replacement)
    return TreeNode(root.kind, root.label, tuple(children))


def walk(root: TreeNode, prefix: Address = ()) -> Iterator[tuple[Address, TreeNode]]:
    """Preorder traversal yielding (address, node) pairs."""
    yield prefix, root
    for i, child in enumerate(root.children, start=1):
        yield from walk(child, prefix + (i,))


def frontier(root: TreeNode) -> list[tuple[Address, TreeNode]]:
    return [(a, n) for a, n in walk(root) if n.is_leaf()]


def yield_words(root: TreeNode) -> list[str]:
    """Surface words on the frontier; substitution and foot nodes are skipped."""
    return [n.label for _, n in frontier(root) if n.kind in WORD_KINDS]


def count_nodes(root: TreeNode) -> int:
    return sum(1 for _ in walk(root))


def format_address(address: Address) -> str:
    return ".".join(str(i) for i in address) if address else "0"


def parse_address(text: str) -> Address:
    text = text.strip()
    if text in ("0", "", "e"):
        return ()
    try:
        parts = tuple(int(p) for p in text.split("."))
    except ValueError:
        raise GrammarFormatError(f"bad address {text!r}") from None
    if any(p < 1 for p in parts):
        raise GrammarFormatError(f"bad address {text!r}: indices are 1-based")
    return parts


def is_prefix(prefix: Address, address: Address) -> bool:
    return len(prefix) <= len(address) and address[: len(prefix)] == prefix

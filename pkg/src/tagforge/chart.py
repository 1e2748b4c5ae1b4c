"""Chart-based recognizer and parser for lexicalized TAG.

Bottom-up CKY-style recognition over elementary-tree nodes.  Items carry
a span and, inside auxiliary trees, the span of the material below the
foot node, giving the usual O(n^6) bound.  Tree sets are skipped with a
warning; general MC-TAG parsing is refused by design.

``enumerate_language`` is an independent brute-force oracle: it expands
every derivation using a bounded number of elementary trees, without
touching the chart machinery.
"""
from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator

from .derive import DerivationStep, DerivationTree, run_derivation
from .errors import RefuseUnbounded
from .grammar import AUXILIARY, INITIAL, ElementaryTree, Grammar, check_lexicalized
from .trees import ANCHOR, FOOT, INTERIOR, SUBSTITUTION, TERMINAL, Address, walk


class UnparsedSets(UserWarning):
    """The grammar contains tree sets, which the parser ignores."""


NOFOOT = (-1, -1)

# Item tags: T = node finished (adjunction included), B = children
# concatenated (before adjunction), P = first k children concatenated.
_T, _B, _P = "T", "B", "P"


@dataclass
class ParseResult:
    recognized: bool
    derivations: list[DerivationTree]
    stats: dict = field(default_factory=dict)


class _Chart:
    def __init__(self, grammar: Grammar, words: list[str]):
        self.grammar = grammar
        self.words = words
        self.n = len(words)
        self.start = grammar.start_symbol
        self.trees = dict(grammar.trees)
        self.nodes = {
            tid: dict(walk(t.root)) for tid, t in self.trees.items()
        }
        self.subst_leaves = [
            (tid, addr, node.label)
            for tid, t in self.trees.items()
            for addr, node in walk(t.root)
            if node.kind == SUBSTITUTION
        ]
        self.backpointers: dict[tuple, list[tuple]] = {}
        self.agenda: list[tuple] = []
        # Combination indexes.
        self.tops_by_start: dict[tuple, list[tuple]] = {}
        self.parts_by_end: dict[tuple, list[tuple]] = {}
        self.bots_by_span: dict[tuple, list[tuple]] = {}
        self.aux_by_foot: dict[tuple, list[tuple]] = {}
        self.goals: list[tuple] = []

    def run(self):
        self._axioms()
        while self.agenda:
            item = self.agenda.pop()
            kind = item[0]
            if kind == _T:
                self._process_top(item)
            elif kind == _P:
                self._process_part(item)
            else:
                self._process_bottom(item)
        return self

    # -- item admission ------------------------------------------------

    def _add(self, item: tuple, bp: tuple):
        bps = self.backpointers.get(item)
        if bps is None:
            self.backpointers[item] = [bp]
            self.agenda.append(item)
        elif bp not in bps:
            bps.append(bp)

    def _axioms(self):
        for tid, tree in self.trees.items():
            for addr, node in walk(tree.root):
                if node.kind in (ANCHOR, TERMINAL):
                    for i, word in enumerate(self.words):
                        if word == node.label:
                            self._add((_T, tid, addr, i, i + 1, *NOFOOT), ("lex", i))
                elif node.kind == FOOT:
                    for i in range(self.n + 1):
                        for j in range(i, self.n + 1):
                            self._add((_T, tid, addr, i, j, i, j), ("foot",))

    # -- inference -----------------------------------------------------

    def _process_top(self, item: tuple):
        _, tid, addr, i, j, p, q = item
        if addr:
            parent, k = addr[:-1], addr[-1]
            if k == 1:
                self._add((_P, tid, parent, 1, i, j, p, q), ("first", item))
            else:
                for part in self.parts_by_end.get((tid, parent, k - 1, i), []):
                    self._combine(part, item)
            self.tops_by_start.setdefault((tid, addr, i), []).append(item)
        else:
            self._process_complete(item)

    def _combine(self, part: tuple, top: tuple):
        _, tid, parent, k, i, _, p1, q1 = part
        _, _, child_addr, _, j2, p2, q2 = top
        if (p1, q1) != NOFOOT and (p2, q2) != NOFOOT:
            return  # one foot per elementary tree
        foot = (p1, q1) if (p1, q1) != NOFOOT else (p2, q2)
        self._add(
            (_P, tid, parent, child_addr[-1], i, j2, *foot), ("concat", part, top)
        )

    def _process_part(self, item: tuple):
        _, tid, addr, k, i, j, p, q = item
        node = self.nodes[tid][addr]
        if k == len(node.children):
            self._add((_B, tid, addr, i, j, p, q), ("children", item))
        else:
            for top in self.tops_by_start.get((tid, addr + (k + 1,), j), []):
                self._combine(item, top)
            self.parts_by_end.setdefault((tid, addr, k, j), []).append(item)

    def _process_bottom(self, item: tuple):
        _, tid, addr, i, j, p, q = item
        self._add((_T, tid, addr, i, j, p, q), ("noadj", item))
        label = self.nodes[tid][addr].label
        for aux in self.aux_by_foot.get((label, i, j), []):
            self._adjoin(item, aux)
        self.bots_by_span.setdefault((label, i, j), []).append(item)

    def _adjoin(self, bottom: tuple, aux_complete: tuple):
        _, tid, addr, _, _, p, q = bottom
        _, _, _, ai, aj, _, _ = aux_complete
        self._add((_T, tid, addr, ai, aj, p, q), ("adjoin", bottom, aux_complete))

    def _process_complete(self, item: tuple):
        _, tid, _, i, j, p, q = item
        tree = self.trees[tid]
        label = tree.root.label
        if tree.shape == INITIAL:
            for tid2, addr2, wanted in self.subst_leaves:
                if wanted == label:
                    self._add((_T, tid2, addr2, i, j, *NOFOOT), ("subst", item))
            if label == self.start and i == 0 and j == self.n:
                self.goals.append(item)
        else:
            for bottom in self.bots_by_span.get((label, p, q), []):
                self._adjoin(bottom, item)
            self.aux_by_foot.setdefault((label, p, q), []).append(item)

    # -- derivation extraction ----------------------------------------

    def _bp_key(self, bp: tuple):
        def flat(x):
            if isinstance(x, tuple):
                return tuple(flat(y) for y in x)
            return x

        return flat(bp)

    def derivations(self, item: tuple) -> Iterator[tuple]:
        """Yield (tree_id, ops) pairs for a complete-tree item, where ops
        is a list of ('substitute'|'adjoin', site, subderivation)."""
        tid = item[1]
        for ops in self._ops(item):
            yield (tid, ops)

    def _ops(self, item: tuple) -> Iterator[list]:
        for bp in sorted(self.backpointers[item], key=self._bp_key):
            kind = bp[0]
            if kind in ("lex", "foot"):
                yield []
            elif kind == "subst":
                site = item[2]
                for sub in self.derivations(bp[1]):
                    yield [("substitute", site, sub)]
            elif kind in ("noadj", "children", "first"):
                yield from self._ops(bp[1])
            elif kind == "concat":
                for left in self._ops(bp[1]):
                    for right in self._ops(bp[2]):
                        yield left + right
            elif kind == "adjoin":
                site = item[2]
                for below in self._ops(bp[1]):
                    for sub in self.derivations(bp[2]):
                        yield below + [("adjoin", site, sub)]
            else:  # pragma: no cover
                raise AssertionError(f"unknown backpointer {kind!r}")


def _substitution_rank(tree: ElementaryTree, site: Address) -> str:
    """MTT-style actant number: position of the site among the tree's
    substitution addresses in preorder."""
    ordered = sorted(tree.substitution_addresses())
    return str(ordered.index(site) + 1)


def _to_derivation_tree(grammar: Grammar, deriv: tuple) -> DerivationTree:
    counters: dict[str, int] = {}

    def fresh(tree_id: str) -> str:
        counters[tree_id] = counters.get(tree_id, 0) + 1
        if counters[tree_id] == 1:
            return tree_id
        return f"{tree_id}#{counters[tree_id]}"

    result = DerivationTree(root="")

    def build(node: tuple) -> str:
        tree_id, ops = node
        instance = fresh(tree_id)
        result.instances[instance] = tree_id
        for op, site, sub in ops:
            child = build(sub)
            if op == "substitute":
                label = _substitution_rank(grammar.tree(tree_id), site)
            else:
                aux_root = grammar.tree(sub[0]).root.label
                label = "S" if aux_root == grammar.start_symbol else "ATTR"
            result.steps.append(DerivationStep(op, child, instance, site, label))
        return instance

    result.root = build(deriv)
    return result


def _check_parseable(grammar: Grammar):
    if grammar.tree_sets:
        warnings.warn(
            f"grammar contains tree sets ({', '.join(grammar.tree_sets)}); "
            "they are skipped by the parser",
            UnparsedSets,
            stacklevel=3,
        )


def recognize(grammar: Grammar, words: list[str]) -> bool:
    """True iff some derivation over the grammar yields exactly ``words``."""
    _check_parseable(grammar)
    chart = _Chart(grammar, list(words)).run()
    return bool(chart.goals)


def parse(grammar: Grammar, words: list[str], cap: int = 100) -> ParseResult:
    """Recognize and enumerate up to ``cap`` derivations.

    Every returned derivation replays to the input string through
    ``run_derivation``; enumeration order follows the chart's canonical
    backpointer order (tree ids, then addresses, then spans).
    """
    _check_parseable(grammar)
    started = time.perf_counter()
    chart = _Chart(grammar, list(words)).run()
    derivations = []
    seen = set()
    if cap > 0:
        raw = (d for goal in chart.goals for d in chart.derivations(goal))
        for deriv in islice(raw, cap * 4):
            script = _to_derivation_tree(grammar, deriv)
            key = script.canonical()
            if key in seen:
                continue
            seen.add(key)
            _, sentence = run_derivation(grammar, script)
            if sentence != " ".join(words):  # pragma: no cover - self check
                raise AssertionError(
                    f"derivation replays to {sentence!r}, expected {' '.join(words)!r}"
                )
            derivations.append(script)
            if len(derivations) >= cap:
                break
    stats = {
        "items": len(chart.backpointers),
        "wall_time_s": time.perf_counter() - started,
        "words": len(words),
    }
    return ParseResult(bool(chart.goals), derivations, stats)


_FOOT_MARK = "\x00foot\x00"


def enumerate_language(grammar: Grammar, max_trees: int) -> set[str]:
    """All yields of complete derivations using at most ``max_trees``
    elementary trees, by exhaustive expansion."""
    report = check_lexicalized(
        Grammar(trees=grammar.trees, start_symbol=grammar.start_symbol)
    )
    if not report.lexicalized:
        raise RefuseUnbounded(
            "cannot bound enumeration for a non-lexicalized grammar; "
            f"anchorless or multi-anchored trees: {', '.join(report.offenders)}"
        )
    initials = [t for t in grammar.trees.values() if t.shape == INITIAL]
    auxes = [t for t in grammar.trees.values() if t.shape == AUXILIARY]
    memo: dict[tuple[str, int], list[tuple[tuple, int]]] = {}

    def gen_tree(tree: ElementaryTree, budget: int) -> list[tuple[tuple, int]]:
        if budget < 1:
            return []
        key = (tree.id, budget)
        if key not in memo:
            memo[key] = [(w, c + 1) for w, c in gen_node(tree.root, budget - 1)]
        return memo[key]

    def gen_node(node, budget: int) -> list[tuple[tuple, int]]:
        if node.kind in (ANCHOR, TERMINAL):
            return [((node.label,), 0)]
        if node.kind == FOOT:
            return [((_FOOT_MARK,), 0)]
        if node.kind == SUBSTITUTION:
            out = []
            for t2 in initials:
                if t2.root.label == node.label:
                    out.extend(gen_tree(t2, budget))
            return out
        # Interior: concatenate the children, then optionally adjoin.
        combos = [((), 0)]
        for child in node.children:
            combos = [
                (w1 + w2, c1 + c2)
                for w1, c1 in combos
                for w2, c2 in gen_node(child, budget - c1)
                if c1 + c2 <= budget
            ]
        results = list(combos)
        for t2 in auxes:
            if t2.root.label != node.label:
                continue
            for words, cost in combos:
                for aux_words, aux_cost in gen_tree(t2, budget - cost):
                    split = aux_words.index(_FOOT_MARK)
                    results.append(
                        (aux_words[:split] + words + aux_words[split + 1 :], cost + aux_cost)
                    )
        return results

    sentences = set()
    for tree in initials:
        if tree.root.label != grammar.start_symbol:
            continue
        for words, _ in gen_tree(tree, max_trees):
            if _FOOT_MARK not in words:
                sentences.add(" ".join(words))
    return sentences

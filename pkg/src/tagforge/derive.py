"""Substitution, adjunction, MC-TAG set adjunction and script replay.

All operations are persistent: they return a new :class:`PhraseTree` and
never mutate their arguments, so a grammar and any intermediate tree can
be shared freely between derivations.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    GrammarFormatError,
    IllegalSite,
    IncompleteDerivation,
    LabelMismatch,
    ScriptError,
    SetArity,
    TagError,
    WrongShape,
)
from .grammar import AUXILIARY, INITIAL, ElementaryTree, Grammar, TreeSet
from .trees import (
    ANCHOR,
    FOOT,
    INTERIOR,
    SUBSTITUTION,
    TERMINAL,
    Address,
    TreeNode,
    format_address,
    is_prefix,
    node_at,
    parse_address,
    replace_at,
    walk,
    yield_words,
)


@dataclass(frozen=True)
class PhraseTree:
    """A derived (or partially derived) phrase-structure tree.

    ``provenance`` maps each current address to the elementary-tree
    instance it came from and its address within that tree, which is how
    script sites stay valid across earlier splices.
    """

    root: TreeNode
    provenance: dict[Address, tuple[str, Address]]

    @classmethod
    def from_elementary(cls, tree: ElementaryTree, instance: str | None = None) -> "PhraseTree":
        instance = instance or tree.id
        prov = {addr: (instance, addr) for addr, _ in walk(tree.root)}
        return cls(tree.root, prov)

    def node_at(self, address: Address) -> TreeNode:
        return node_at(self.root, address)

    def frontier_words(self) -> list[str]:
        return yield_words(self.root)

    def sentence(self) -> str:
        return " ".join(self.frontier_words())

    def address_of(self, instance: str, original: Address) -> Address:
        """Current address of a node identified by its provenance."""
        for addr, origin in self.provenance.items():
            if origin == (instance, original):
                return addr
        raise IllegalSite(
            f"no node from {instance} at {format_address(original)} in this tree"
        )

    def foot_address(self) -> Address | None:
        feet = [a for a, n in walk(self.root) if n.kind == FOOT]
        if len(feet) > 1:
            raise WrongShape(f"tree has {len(feet)} foot nodes")
        return feet[0] if feet else None

    def is_complete(self) -> bool:
        return all(
            n.kind not in (SUBSTITUTION, FOOT) for _, n in walk(self.root)
        )


def _as_phrase(tree: ElementaryTree | PhraseTree, instance: str | None = None) -> PhraseTree:
    if isinstance(tree, ElementaryTree):
        return PhraseTree.from_elementary(tree, instance)
    return tree


def substitute(
    target: PhraseTree,
    site: Address,
    tree: ElementaryTree | PhraseTree,
    instance: str | None = None,
) -> PhraseTree:
    """Append an initial tree at a substitution node of ``target``."""
    sub = _as_phrase(tree, instance)
    if isinstance(tree, ElementaryTree) and tree.shape != INITIAL:
        raise WrongShape(f"cannot substitute auxiliary tree {tree.id!r}")
    if sub.foot_address() is not None:
        raise WrongShape("cannot substitute a tree containing a foot node")
    site_node = target.node_at(site)
    if site_node.kind != SUBSTITUTION:
        raise IllegalSite(
            f"node at {format_address(site)} is a {site_node.kind} node, not a substitution node"
        )
    if site_node.label != sub.root.label:
        raise LabelMismatch(
            f"substitution node {site_node.label!r} at {format_address(site)} "
            f"vs root label {sub.root.label!r}"
        )
    new_root = replace_at(target.root, site, sub.root)
    prov = {a: o for a, o in target.provenance.items() if a != site}
    for addr, origin in sub.provenance.items():
        prov[site + addr] = origin
    return PhraseTree(new_root, prov)


def adjoin(
    target: PhraseTree,
    site: Address,
    aux: ElementaryTree | PhraseTree,
    instance: str | None = None,
) -> PhraseTree:
    """Splice an auxiliary tree in at an interior node of ``target``."""
    if isinstance(aux, ElementaryTree) and aux.shape != AUXILIARY:
        raise WrongShape(f"cannot adjoin {aux.shape} tree {aux.id!r}")
    aux_pt = _as_phrase(aux, instance)
    foot = aux_pt.foot_address()
    if foot is None:
        raise WrongShape("adjoined tree has no foot node")
    site_node = target.node_at(site)
    if site_node.kind != INTERIOR:
        raise IllegalSite(
            f"node at {format_address(site)} is a {site_node.kind} node; "
            "adjunction needs an interior node"
        )
    foot_label = aux_pt.node_at(foot).label
    if site_node.label != aux_pt.root.label or site_node.label != foot_label:
        raise LabelMismatch(
            f"site label {site_node.label!r} at {format_address(site)} vs "
            f"auxiliary root/foot {aux_pt.root.label!r}/{foot_label!r}"
        )
    excised = site_node
    spliced = replace_at(aux_pt.root, foot, excised)
    new_root = replace_at(target.root, site, spliced)
    prov: dict[Address, tuple[str, Address]] = {}
    for addr, origin in target.provenance.items():
        if is_prefix(site, addr):
            prov[site + foot + addr[len(site):]] = origin
        else:
            prov[addr] = origin
    for addr, origin in aux_pt.provenance.items():
        if addr == foot:
            continue  # the excised subtree root occupies the foot position
        prov[site + addr] = origin
    return PhraseTree(new_root, prov)


def adjoin_set(
    target: PhraseTree,
    sites: list[Address],
    tree_set: TreeSet,
) -> PhraseTree:
    """Adjoin every member of a tree set in one atomic step.

    Sites are interpreted against the pre-step target; address shifts
    caused by earlier members are resolved internally.
    """
    if len(sites) != len(tree_set.members):
        raise SetArity(
            f"set {tree_set.id!r} has {len(tree_set.members)} members "
            f"but {len(sites)} sites were given"
        )
    if len(set(sites)) != len(sites):
        raise SetArity(f"set {tree_set.id!r}: sites must be pairwise distinct")
    # Validate everything against the original target before touching it.
    for site, member in zip(sites, tree_set.members):
        node = target.node_at(site)
        if node.kind != INTERIOR:
            raise IllegalSite(
                f"set member {member.id!r}: node at {format_address(site)} "
                f"is a {node.kind} node"
            )
        if member.shape != AUXILIARY:
            raise WrongShape(f"set member {member.id!r} is not auxiliary")
        feet = member.foot_addresses()
        if len(feet) != 1 or node.label != member.root.label:
            raise LabelMismatch(
                f"set member {member.id!r} does not fit site {format_address(site)}"
            )

    result = target
    applied: list[tuple[Address, Address]] = []  # (translated site, foot path)
    for site, member in zip(sites, tree_set.members):
        translated = site
        for prev_site, prev_foot in applied:
            if is_prefix(prev_site, translated):
                translated = prev_site + prev_foot + translated[len(prev_site):]
        foot = member.foot_addresses()[0]
        result = adjoin(result, translated, member)
        applied.append((translated, foot))
    return result


ACTANT_RE = re.compile(r"^[1-9][0-9]*$")


@dataclass(frozen=True)
class DerivationStep:
    op: str  # "substitute" | "adjoin" | "adjoin_set"
    child: str  # instance name (set id for adjoin_set)
    parent: str  # instance name
    site: Address | tuple[Address, ...]  # one address, or several for adjoin_set
    arc_label: str  # "1", "2", ..., "ATTR" or "S"


@dataclass
class DerivationTree:
    """One node per elementary tree (or set) occurrence, plus step edges."""

    root: str
    instances: dict[str, str] = field(default_factory=dict)  # instance -> tree/set id
    steps: list[DerivationStep] = field(default_factory=list)

    def children_of(self, instance: str) -> list[DerivationStep]:
        return [s for s in self.steps if s.parent == instance]

    def validate(self) -> None:
        if self.root not in self.instances:
            raise GrammarFormatError(f"root instance {self.root!r} not declared")
        parents = {}
        for step in self.steps:
            if step.child in parents:
                raise GrammarFormatError(f"instance {step.child!r} has two parents")
            if step.child == self.root:
                raise GrammarFormatError("root instance may not be a child")
            parents[step.child] = step.parent
        for step in self.steps:
            if step.parent != self.root and step.parent not in parents:
                raise GrammarFormatError(f"step parent {step.parent!r} is unreachable")
        # Reject cycles: every child must reach the root.
        for child in parents:
            seen = set()
            node = child
            while node != self.root:
                if node in seen:
                    raise GrammarFormatError(f"cycle through instance {node!r}")
                seen.add(node)
                node = parents.get(node)
                if node is None:
                    raise GrammarFormatError("disconnected derivation step")

    def canonical(self):
        """Order-independent structural form, for equality checks."""

        def canon(instance):
            kids = sorted(
                (
                    (s.op, s.site, s.arc_label, canon(s.child))
                    for s in self.children_of(instance)
                ),
            )
            return (self.instances[instance], tuple(kids))

        return canon(self.root)

    def __eq__(self, other):
        if not isinstance(other, DerivationTree):
            return NotImplemented
        return self.canonical() == other.canonical()


def run_derivation(grammar: Grammar, script: DerivationTree) -> tuple[PhraseTree, str]:
    """Replay a derivation tree; returns the derived tree and its yield."""
    script.validate()
    step_index = {id(step): i for i, step in enumerate(script.steps)}

    def build(instance: str) -> PhraseTree:
        tree_id = script.instances[instance]
        phrase = PhraseTree.from_elementary(grammar.tree(tree_id), instance)
        for step in script.children_of(instance):
            idx = step_index[id(step)]
            try:
                if step.op == "adjoin_set":
                    tree_set = grammar.tree_sets[script.instances[step.child]]
                    sites = step.site
                    if len(sites) != len(tree_set.members):
                        raise SetArity(
                            f"set {tree_set.id!r} needs {len(tree_set.members)} sites"
                        )
                    if len(set(sites)) != len(sites):
                        raise SetArity("set sites must be pairwise distinct")
                    for member, orig_site in zip(tree_set.members, sites):
                        member_pt = _build_member(member)
                        here = phrase.address_of(instance, orig_site)
                        phrase = adjoin(phrase, here, member_pt)
                else:
                    child_pt = build(step.child)
                    here = phrase.address_of(instance, step.site)
                    if step.op == "substitute":
                        phrase = substitute(phrase, here, child_pt)
                    elif step.op == "adjoin":
                        phrase = adjoin(phrase, here, child_pt)
                    else:
                        raise GrammarFormatError(f"unknown op {step.op!r}")
            except ScriptError:
                raise
            except TagError as exc:
                raise ScriptError(idx, exc) from exc
        return phrase

    def _build_member(member: ElementaryTree) -> PhraseTree:
        # Set members may have their own children, addressed by member id.
        if member.id in script.instances:
            return build(member.id)
        return PhraseTree.from_elementary(member, member.id)

    derived = build(script.root)
    if not derived.is_complete():
        open_leaves = [
            f"{format_address(a)} ({n.kind} {n.label!r})"
            for a, n in walk(derived.root)
            if n.kind in (SUBSTITUTION, FOOT)
        ]
        raise IncompleteDerivation("unfilled frontier nodes: " + ", ".join(open_leaves))
    return derived, derived.sentence()


_STEP_RE = re.compile(
    r"^(?P<op>subst|adjoin|adjoinset)\s+(?P<child>\S+?)(?:\s+as\s+(?P<alias>\S+))?"
    r"\s*->\s*(?P<parent>\S+)\s*@\s*(?P<sites>[\d.,\s]+?)\s+label\s+(?P<label>\S+)$"
)


def parse_script(text: str, grammar: Grammar | None = None) -> DerivationTree:
    """Parse the derivation script format.

    Statements are separated by ';' or newlines::

        use alpha1
        subst alpha2 -> alpha1 @ 1 label 1
        adjoin beta1 -> alpha1 @ 2 label ATTR
        adjoinset sigma1 -> alpha1 @ 1, 2.2 label S
    """
    root = None
    instances: dict[str, str] = {}
    steps: list[DerivationStep] = []
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for part in line.split(";"):
            part = part.strip()
            if part:
                statements.append((lineno, part))

    for lineno, stmt in statements:
        if stmt.startswith("use "):
            if root is not None:
                raise GrammarFormatError("only one 'use' statement is allowed", lineno)
            rest = stmt[4:].split()
            tree_id = rest[0]
            alias = rest[2] if len(rest) >= 3 and rest[1] == "as" else tree_id
            root = alias
            instances[alias] = tree_id
            continue
        m = _STEP_RE.match(stmt)
        if m is None:
            raise GrammarFormatError(f"cannot parse statement {stmt!r}", lineno)
        op = {"subst": "substitute", "adjoin": "adjoin", "adjoinset": "adjoin_set"}[m["op"]]
        child_id = m["child"]
        alias = m["alias"] or child_id
        if alias in instances:
            raise GrammarFormatError(
                f"instance {alias!r} already used; disambiguate with 'as'", lineno
            )
        instances[alias] = child_id
        sites = tuple(parse_address(s) for s in m["sites"].split(","))
        site: Address | tuple[Address, ...]
        if op == "adjoin_set":
            site = sites
        else:
            if len(sites) != 1:
                raise GrammarFormatError("subst/adjoin take exactly one site", lineno)
            site = sites[0]
        steps.append(DerivationStep(op, alias, m["parent"], site, m["label"]))

    if root is None:
        raise GrammarFormatError("script has no 'use' statement")
    script = DerivationTree(root, instances, steps)
    script.validate()
    if grammar is not None:
        for instance, tree_id in instances.items():
            if tree_id not in grammar.trees and tree_id not in grammar.tree_sets:
                try:
                    grammar.tree(tree_id)
                except KeyError:
                    raise GrammarFormatError(
                        f"script references unknown tree {tree_id!r}"
                    ) from None
    return script


def serialize_script(script: DerivationTree) -> str:
    lines = []
    root_tree = script.instances[script.root]
    if script.root == root_tree:
        lines.append(f"use {root_tree}")
    else:
        lines.append(f"use {root_tree} as {script.root}")
    for step in script.steps:
        op = {"substitute": "subst", "adjoin": "adjoin", "adjoin_set": "adjoinset"}[step.op]
        child_tree = script.instances[step.child]
        child = child_tree if step.child == child_tree else f"{child_tree} as {step.child}"
        if step.op == "adjoin_set":
            sites = ", ".join(format_address(a) for a in step.site)
        else:
            sites = format_address(step.site)
        lines.append(f"{op} {child} -> {step.parent} @ {sites} label {step.arc_label}")
    return "\n".join(lines) + "\n"

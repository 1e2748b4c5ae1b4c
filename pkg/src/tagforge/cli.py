"""tagforge command-line interface.

Verbs: validate, derive, parse, enumerate, dep, projective, linearize,
export.  Machine-readable output goes to stdout, diagnostics to stderr;
exit codes: 0 success, 1 domain error, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import chart, corpus, exports
from .dependency import derivation_to_dependency, is_projective, parse_dependency, resolve_order, serialize_dependency
from .derive import parse_script, run_derivation
from .errors import GrammarFormatError, TagError
from .grammar import check_lexicalized, validate_tree
from .grammar_io import parse_grammar, serialize_grammar
from .linearize import linearize, parse_rules


def _read(path: str) -> str:
    if path.startswith("corpus:"):
        return corpus.read(path[len("corpus:"):])
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_grammar(args):
    return parse_grammar(_read(args.grammar))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tagforge",
        description="Lexicalized TAG derivation, parsing, dependency "
        "conversion and syntagm linearization.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, help_text, **flags):
        p = sub.add_parser(name, help=help_text)
        if "g" in flags:
            p.add_argument("-g", "--grammar", required=flags["g"] == "req")
        if "s" in flags:
            p.add_argument("-s", "--script", required=flags["s"] == "req")
        if "t" in flags:
            p.add_argument("-t", "--tree", required=flags["t"] == "req")
        if "r" in flags:
            p.add_argument("-r", "--rules", required=flags["r"] == "req")
        p.add_argument("--format", choices=["text", "json", "dot"], default="text")
        p.add_argument("-o", "--out")
        return p

    add("validate", "check tree well-formedness and lexicalization", g="req")
    add("derive", "replay a derivation script", g="req", s="req")

    p = add("parse", "parse a sentence against a grammar", g="req")
    p.add_argument("sentence", help="space-separated input words")
    p.add_argument("--cap", type=int, default=100, help="max derivations returned")

    p = add("enumerate", "enumerate the bounded language", g="req")
    p.add_argument("--max-trees", type=int, required=True)

    add("dep", "dependency tree of a derivation (S arcs inverted)", g="req", s="req")

    p = add("projective", "check projectivity of a dependency tree", t="req")
    p.add_argument("--order", help="surface word order (defaults to file order)")

    add("linearize", "linearize a dependency tree with syntagm rules", t="req", r="req")

    p = add("export", "export derivation/derived/dependency structures", g="opt", s="opt", t="opt")
    p.add_argument(
        "--what",
        choices=["derivation", "derived", "dep"],
        default="derivation",
        help="which structure to export from a grammar+script",
    )
    return parser


def _cmd_validate(args) -> int:
    grammar = _load_grammar(args)
    reports = [validate_tree(t) for t in grammar.all_trees()]
    lex = check_lexicalized(grammar)
    if args.format == "json":
        payload = {
            "trees": {
                r.tree_id: {"ok": r.ok, "violations": r.violations, "warnings": r.warnings}
                for r in reports
            },
            "lexicalized": lex.lexicalized,
            "anchor_census": lex.census,
            "offenders": lex.offenders,
        }
        _emit(json.dumps(payload, indent=2, ensure_ascii=False), args.out)
    else:
        lines = []
        for r in reports:
            status = "ok" if r.ok else "INVALID"
            lines.append(f"{r.tree_id}: {status}")
            lines.extend(f"  violation {v}" for v in r.violations)
            lines.extend(f"  warning {w}" for w in r.warnings)
        lines.append(f"lexicalized: {'yes' if lex.lexicalized else 'no'}")
        lines.extend(f"  anchorless or multi-anchored: {t}" for t in lex.offenders)
        _emit("\n".join(lines), args.out)
    return 0 if all(r.ok for r in reports) else 1


def _cmd_derive(args) -> int:
    grammar = _load_grammar(args)
    script = parse_script(_read(args.script), grammar)
    derived, sentence = run_derivation(grammar, script)
    if args.format == "json":
        _emit(exports.phrase_to_json(derived), args.out)
    elif args.format == "dot":
        _emit(exports.phrase_to_dot(derived), args.out)
    else:
        _emit(sentence, args.out)
    return 0


def _cmd_parse(args) -> int:
    grammar = _load_grammar(args)
    words = args.sentence.split()
    result = chart.parse(grammar, words, cap=args.cap)
    if args.format == "json":
        payload = {
            "recognized": result.recognized,
            "derivations": [
                json.loads(exports.derivation_to_json(d)) for d in result.derivations
            ],
            "stats": result.stats,
        }
        _emit(json.dumps(payload, indent=2, ensure_ascii=False), args.out)
    elif args.format == "dot":
        if not result.derivations:
            print("no derivation", file=sys.stderr)
            return 1
        _emit(exports.derivation_to_dot(result.derivations[0]), args.out)
    else:
        lines = [f"recognized: {'yes' if result.recognized else 'no'}"]
        lines.extend(
            f"derivation {i + 1}: {d.canonical()}" for i, d in enumerate(result.derivations)
        )
        _emit("\n".join(lines), args.out)
    print(json.dumps(result.stats), file=sys.stderr)
    return 0


def _cmd_enumerate(args) -> int:
    grammar = _load_grammar(args)
    sentences = sorted(chart.enumerate_language(grammar, args.max_trees))
    if args.format == "json":
        _emit(json.dumps(sentences, indent=2, ensure_ascii=False), args.out)
    else:
        _emit("\n".join(sentences), args.out)
    return 0


def _dep_from_args(args):
    grammar = _load_grammar(args)
    script = parse_script(_read(args.script), grammar)
    dep = derivation_to_dependency(script, grammar)
    # Dependency nodes show lexemes; keep instance ids only when needed.
    return dep


def _cmd_dep(args) -> int:
    dep = _dep_from_args(args)
    if args.format == "json":
        _emit(exports.dependency_to_json(dep), args.out)
    elif args.format == "dot":
        _emit(exports.dependency_to_dot(dep), args.out)
    else:
        _emit(serialize_dependency(dep), args.out)
    return 0


def _cmd_projective(args) -> int:
    tree = parse_dependency(_read(args.tree))
    order = None
    if args.order:
        order = resolve_order(tree, args.order.split())
    report = is_projective(tree, order)
    if args.format == "json":
        payload = {"projective": report.projective, "violations": report.violations}
        _emit(json.dumps(payload, indent=2, ensure_ascii=False), args.out)
    else:
        lines = ["projective" if report.projective else "non-projective"]
        lines.extend(f"  {v}" for v in report.violations)
        _emit("\n".join(lines), args.out)
    return 0


def _cmd_linearize(args) -> int:
    tree = parse_dependency(_read(args.tree))
    rules = parse_rules(_read(args.rules))
    words = linearize(tree, rules)
    if args.format == "json":
        _emit(json.dumps(words, ensure_ascii=False), args.out)
    else:
        _emit(" ".join(words), args.out)
    return 0


def _cmd_export(args) -> int:
    if args.tree:
        dep = parse_dependency(_read(args.tree))
        rendered = (
            exports.dependency_to_dot(dep)
            if args.format == "dot"
            else exports.dependency_to_json(dep)
            if args.format == "json"
            else serialize_dependency(dep)
        )
        _emit(rendered, args.out)
        return 0
    if not (args.grammar and args.script):
        print("export needs either -t, or -g with -s", file=sys.stderr)
        return 2
    grammar = _load_grammar(args)
    script = parse_script(_read(args.script), grammar)
    if args.what == "derivation":
        lexemes = {
            inst: grammar.tree(tid).anchor_lexeme or tid
            if tid not in grammar.tree_sets
            else tid
            for inst, tid in script.instances.items()
        }
        rendered = (
            exports.derivation_to_dot(script, lexemes)
            if args.format == "dot"
            else exports.derivation_to_json(script)
        )
    elif args.what == "derived":
        derived, _ = run_derivation(grammar, script)
        rendered = (
            exports.phrase_to_dot(derived)
            if args.format == "dot"
            else exports.phrase_to_json(derived)
        )
    else:
        dep = derivation_to_dependency(script, grammar)
        rendered = (
            exports.dependency_to_dot(dep)
            if args.format == "dot"
            else exports.dependency_to_json(dep)
            if args.format == "json"
            else serialize_dependency(dep)
        )
    _emit(rendered, args.out)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "derive": _cmd_derive,
    "parse": _cmd_parse,
    "enumerate": _cmd_enumerate,
    "dep": _cmd_dep,
    "projective": _cmd_projective,
    "linearize": _cmd_linearize,
    "export": _cmd_export,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except (OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GrammarFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TagError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands:
  translate     source sentences in, target sentences out
  parse         show source derivations and derived trees
  check         validate a grammar file
  permutations  try every reordering of a sentence's words
  oracle        compare the parser against the brute-force enumerator

Exit status: 0 on success, 1 when an input failed to process (no parse,
unknown word, untranslatable derivation), 2 for unusable invocations or
grammars. With --format json, one JSON object is printed per input line.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass

from .derive import build_derived_tree, render_derivation, render_node, render_tree
from .errors import GrammarError, GrammarValidationError, StagError
from .grammar_io import builtin_grammar_names, load_grammar
from .model import Grammar, validate_pair
from .morphotok import tokenize
from .oracle import OracleBound, assert_equivalence
from .parser import parse
from .pipeline import translate_line


@dataclass(frozen=True)
class RunConfig:
    grammar: Grammar
    fmt: str = "text"
    show: str = "translation"
    all_levels: bool = False
    trace: bool = False


def _load(args) -> Grammar:
    try:
        return load_grammar(args.grammar)
    except FileNotFoundError as exc:
        raise SystemExit(f"error: {exc}")
    except GrammarError as exc:
        raise SystemExit(f"error: unusable grammar: {exc}")


def _input_lines(args) -> list[tuple[int, str]]:
    """Numbered nonblank input lines, from argv words or stdin."""
    if args.sentence:
        return [(1, " ".join(args.sentence))]
    return [(n, line) for n, line in enumerate((l.strip() for l in sys.stdin), 1)
            if line]


def _emit_json(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, sort_keys=True))


def cmd_translate(args) -> int:
    grammar = _load(args)
    config = RunConfig(grammar=grammar, fmt=args.format, show=args.show,
                       all_levels=args.all_derivations, trace=args.trace_transfer)
    status = 0
    for lineno, line in _input_lines(args):
        try:
            result = translate_line(line, grammar, all_levels=config.all_levels)
        except StagError as exc:
            status = 1
            print(f"line {lineno}: {exc.code}: {exc}", file=sys.stderr)
            if config.fmt == "json":
                _emit_json({"input": line, "line": lineno, "error": exc.code,
                            "message": str(exc), "translation": "ERROR"})
            else:
                print("ERROR")
            continue

        if config.fmt == "json":
            _emit_json({
                "input": line,
                "translation": result.best.realization.surface,
                "candidates": [{
                    "cost": c.cost,
                    "pairs": list(c.derivation.uses),
                    "translation": c.realization.surface,
                    "source_tree": c.source_rendered,
                    "target_tree": render_node(c.realization.derived.root, {}),
                    "derivation": render_derivation(c.derivation, grammar).split("\n"),
                    "transfer": [str(s) for s in c.target.steps],
                } for c in result.candidates],
            })
            continue

        print(result.best.realization.surface)
        if config.show in ("derivation", "both") or config.trace:
            for candidate in result.candidates:
                print(f"# cost {candidate.cost}")
                print(render_derivation(candidate.derivation, grammar))
                if config.trace:
                    for step in candidate.target.steps:
                        print(f"  {step}")
        if config.show in ("derived", "both"):
            for candidate in result.candidates:
                print(f"source: {candidate.source_rendered}")
                print(f"target: {render_node(candidate.realization.derived.root, {})}")
    return status


def cmd_parse(args) -> int:
    grammar = _load(args)
    status = 0
    for lineno, line in _input_lines(args):
        try:
            sentence = tokenize(line, grammar)
            levels = parse(sentence, grammar, all_levels=True)
        except StagError as exc:
            status = 1
            print(f"line {lineno}: {exc.code}: {exc}", file=sys.stderr)
            if args.format == "json":
                _emit_json({"input": line, "line": lineno, "error": exc.code,
                            "message": str(exc)})
            continue
        shown = levels if args.all_derivations else levels[:1]
        if args.format == "json":
            _emit_json({
                "input": line,
                "levels": [{
                    "cost": level.cost,
                    "derivations": [{
                        "pairs": list(d.uses),
                        "derivation": render_derivation(d, grammar).split("\n"),
                        "tree": render_tree(build_derived_tree(d, grammar), grammar),
                    } for d in level.derivations],
                } for level in shown],
            })
            continue
        for level in shown:
            print(f"cost {level.cost}: {len(level.derivations)} derivation(s)")
            for derivation in level.derivations:
                if args.show in ("derivation", "both"):
                    print(render_derivation(derivation, grammar))
                if args.show in ("derived", "both"):
                    tree = build_derived_tree(derivation, grammar)
                    print(render_tree(tree, grammar))
    return status


def cmd_check(args) -> int:
    try:
        grammar = load_grammar(args.grammar)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GrammarValidationError as exc:
        for diagnostic in exc.diagnostics:
            print(str(diagnostic))
        print(f"invalid: {len(exc.diagnostics)} problem(s)")
        return 1
    except GrammarError as exc:
        print(f"error: {exc} [{exc.code}]", file=sys.stderr)
        return 1
    print(f"OK, {len(grammar.pairs)} pairs")
    for pair in grammar.pairs:
        for diagnostic in validate_pair(pair):
            if diagnostic.severity == "warning":
                print(str(diagnostic))
    return 0


def cmd_permutations(args) -> int:
    grammar = _load(args)
    line = " ".join(args.sentence)
    sentence = tokenize(line, grammar)
    surfaces = [token.surface for token in sentence.tokens]
    ok = 0
    orders = sorted(set(itertools.permutations(surfaces)))
    rows = []
    for order in orders:
        candidate = " ".join(order) + sentence.terminator
        try:
            result = translate_line(candidate, grammar)
            rows.append((candidate, result.best.cost,
                         result.best.realization.surface))
            ok += 1
        except StagError:
            rows.append((candidate, None, None))
    if args.format == "json":
        _emit_json({
            "input": line,
            "parsed": ok,
            "total": len(orders),
            "orders": [{"sentence": s, "parses": c is not None, "cost": c,
                        "translation": t} for s, c, t in rows],
        })
    else:
        width = max(len(s) for s, _, _ in rows)
        for candidate, cost, translation in rows:
            parses = "yes" if translation is not None else "no"
            cost_cell = "-" if cost is None else str(cost)
            print(f"{candidate:<{width}} | {parses:<3} | {cost_cell:>4} | "
                  f"{translation if translation is not None else '-'}")
        print(f"{ok}/{len(orders)} orders parse")
    return 0


def cmd_oracle(args) -> int:
    grammar = _load(args)
    line = " ".join(args.sentence)
    sentence = tokenize(line, grammar)
    bound = OracleBound(max_uses=args.max_uses)
    report = assert_equivalence(sentence, grammar, bound)
    print(report.summary())
    for derivation in report.only_parser:
        print("parser only:")
        print(render_derivation(derivation, grammar))
    for derivation in report.only_oracle:
        print("oracle only:")
        print(render_derivation(derivation, grammar))
    return 0 if report.match else 1


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="stagmt",
        description="Synchronous tree-adjoining transfer translation.")
    # metavar keeps the debugging-only oracle command out of --help
    sub = top.add_subparsers(dest="command", required=True,
                             metavar="{translate,parse,check,permutations}")

    def common(p, sentences=True):
        p.add_argument("-g", "--grammar", required=True,
                       help="grammar file path, or builtin name: "
                            + ", ".join(builtin_grammar_names()))
        p.add_argument("--format", choices=("text", "json"), default="text")
        if sentences:
            p.add_argument("sentence", nargs="*",
                           help="input words (reads stdin when omitted)")

    p = sub.add_parser("translate", help="translate sentences")
    common(p)
    p.add_argument("--all-derivations", action="store_true",
                   help="carry every priority level through, not just the best")
    p.add_argument("--show", choices=("translation", "derivation", "derived", "both"),
                   default="translation",
                   help="extra detail after each translation line")
    p.add_argument("--trace-transfer", action="store_true",
                   help="print each resolved source-to-target correspondence")
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("parse", help="show source derivations")
    common(p)
    p.add_argument("--all-derivations", action="store_true")
    p.add_argument("--show", choices=("derivation", "derived", "both"),
                   default="both")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("check", help="validate a grammar file")
    common(p, sentences=False)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("permutations",
                       help="parse every reordering of the given words")
    common(p)
    p.set_defaults(fn=cmd_permutations)

    p = sub.add_parser("oracle")  # debugging aid, undocumented on purpose
    common(p)
    p.add_argument("--max-uses", type=int, default=12)
    p.set_defaults(fn=cmd_oracle)

    return top


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        raise
    except StagError as exc:
        print(f"error: {exc} [{exc.code}]", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

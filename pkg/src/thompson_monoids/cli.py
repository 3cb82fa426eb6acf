"""Command-line front end.

Inputs are generator words ("Not tau(1,2) M1", leftmost applied last)
or tables: a path to a JSON table file, a JSON object literal, or the
inline token forms @{file.json} / @{{"k":2,"table":[...]}} inside a
word.  `eq` exits 0 for EQUAL, 1 for NOT-EQUAL, 2 on errors.
"""

import argparse
import json
import os
import sys
import time

from .morphisms import Morphism
from .structure import (
    GenWord,
    d_class_index,
    evaluate,
    factor,
    all_to_zero_word,
    inline_token,
    parse_genword,
)
from .wordproblem import (
    dfa_for_word,
    imc_of_genword,
    iterated_inverse_image_dfa,
    resolve_genword,
    word_problem_bruteforce,
    word_problem_poly,
    ResourceLimitError,
)
from .words import parse_word, word_str

DEFAULT_TAU_CAP = 8
DEFAULT_N_CAP = 14
DEFAULT_TABLE_CAP_ROWS = 2 ** 20


def _parse_input(text, k) -> GenWord:
    """A table file, a table literal, or a generator word."""
    if text.strip().startswith("{"):
        table = Morphism.loads(text)
        if table.k != k:
            raise ValueError(f"table has k={table.k}, expected {k} (pass --k)")
        return GenWord(k, (inline_token(table),))
    if text.endswith(".json") and os.path.exists(text):
        table = Morphism.from_file(text)
        if table.k != k:
            raise ValueError(f"table has k={table.k}, expected {k} (pass --k)")
        return GenWord(k, (inline_token(table),))
    return parse_genword(text, k)


def _single_table(word: GenWord):
    """The raw table when the input is one inline table, else the evaluation."""
    if len(word.tokens) == 1 and word.tokens[0].table is not None:
        return word.tokens[0].table
    return evaluate(word)


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_validate(args):
    word = _parse_input(args.input, args.k)
    tables = word.morphisms()
    lines = [f"OK: {len(word.tokens)} token(s)"]
    for tok, table in zip(word.tokens, tables):
        lines.append(f"  {tok.text}: table-size {table.table_size}, domC {table.domain_code()}")
    _emit(args, {"ok": True, "tokens": len(word.tokens)}, lines)
    return 0


def cmd_info(args):
    word = _parse_input(args.input, args.k)
    element = evaluate(word)
    cls = element.classify()
    dom = element.domain_code()
    img = element.image_code()
    flags = {
        "injective": cls.injective,
        "total": cls.total,
        "surjective": cls.surjective,
        "unit": cls.unit,
    }
    payload = {
        "table": [[x, y] for x, y in element.table],
        "table_size": element.table_size,
        "domC": [word_str(w) for w in dom.words],
        "domC_kind": dom.kind.value,
        "imC": [word_str(w) for w in img.words],
        "imC_kind": img.kind.value,
        "normal": element.is_normal(),
        "d_class": str(d_class_index(element)),
        **flags,
    }
    lines = [
        f"element: {element}",
        f"table-size: {element.table_size}",
        f"domC: {dom} ({dom.kind.value})",
        f"imC: {img} ({img.kind.value})",
        f"normal: {'yes' if element.is_normal() else 'no'}",
        "  ".join(f"{name}: {'yes' if val else 'no'}" for name, val in flags.items()),
        f"d-class: {d_class_index(element)}",
    ]
    _emit(args, payload, lines)
    return 0


def _eq_stats(word, k):
    imc = imc_of_genword(word.morphisms(), k)
    if not len(imc):
        return 0, "Zero"
    if k == 2:
        return len(imc), "1"
    r = len(imc) % (k - 1)
    return len(imc), str(r if r else k - 1)


def cmd_eq(args):
    left = _parse_input(args.left, args.k)
    right = _parse_input(args.right, args.k)
    t0 = time.perf_counter()
    if args.mode == "poly":
        verdict = word_problem_poly(
            left, right, args.k, tau_cap=args.cap_tau, parallel=args.parallel
        )
    elif args.mode == "brute":
        verdict = word_problem_bruteforce(left, right, args.k, n_cap=args.cap_n)
    else:
        verdict = evaluate(left).equal_in_m(evaluate(right))
    millis = (time.perf_counter() - t0) * 1000.0
    imc_l, dcls_l = _eq_stats(left, args.k)
    imc_r, dcls_r = _eq_stats(right, args.k)
    text = "EQUAL" if verdict else "NOT-EQUAL"
    payload = {
        "verdict": text,
        "mode": args.mode,
        "imc_left": imc_l,
        "imc_right": imc_r,
        "dclass_left": dcls_l,
        "dclass_right": dcls_r,
        "millis": round(millis, 3),
    }
    lines = [
        text,
        f"imC-size-left: {imc_l}",
        f"imC-size-right: {imc_r}",
        f"d-class-left: {dcls_l}",
        f"d-class-right: {dcls_r}",
        f"mode: {args.mode}",
        f"millis: {millis:.3f}",
    ]
    _emit(args, payload, lines)
    return 0 if verdict else 1


def cmd_mul(args):
    left = evaluate(_parse_input(args.left, args.k))
    right = evaluate(_parse_input(args.right, args.k))
    product = left.multiply(right)
    _emit(args, product.to_json(), [str(product)])
    return 0


def cmd_maxext(args):
    table = _single_table(_parse_input(args.input, args.k)).maximal_extension()
    _emit(args, table.to_json(), [str(table)])
    return 0


def cmd_normalize(args):
    table = _single_table(_parse_input(args.input, args.k)).normalize()
    _emit(args, table.to_json(), [str(table)])
    return 0


def cmd_factor(args):
    element = evaluate(_parse_input(args.input, args.k))
    word = factor(element)
    _emit(args, {"word": word.text(), "tokens": len(word.tokens)}, [word.text()])
    return 0


def cmd_dclass(args):
    element = evaluate(_parse_input(args.input, args.k))
    _emit(args, {"d_class": str(d_class_index(element))}, [str(d_class_index(element))])
    return 0


def cmd_dfa_export(args):
    word = _parse_input(args.input, args.k)
    seq = resolve_genword(word, args.k, args.cap_tau)
    target = parse_word(args.target, args.k)
    dfa = iterated_inverse_image_dfa(seq, dfa_for_word(target, args.k))
    if args.format == "json":
        out = json.dumps(dfa.to_json(), indent=2)
    else:
        out = dfa.to_dot()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def bench_rows(n_max, table_cap_rows=DEFAULT_TABLE_CAP_ROWS, n_cap=DEFAULT_N_CAP):
    """Benchmark rows for the exponential-table family w_n, n = 2..n_max.

    Tables are materialized incrementally and only while their row
    count stays within table_cap_rows; the brute decider runs only
    while its critical length fits under n_cap.
    """
    if n_max > 60:
        raise ResourceLimitError("n_max capped at 60")
    squeeze = evaluate("M1 ZtoE", 2)
    current = evaluate("M1", 2)
    rows = []
    for n in range(2, n_max + 1):
        word = all_to_zero_word(n)
        if current is not None and 2 ** n <= table_cap_rows:
            current = squeeze.multiply(current)
            table_size = current.table_size
        else:
            current = None
            table_size = None
        t0 = time.perf_counter()
        poly_equal = word_problem_poly(word, word, 2)
        poly_ms = (time.perf_counter() - t0) * 1000.0
        if not poly_equal:
            raise RuntimeError("polynomial decider disagreed on a reflexive pair")
        brute_ms = None
        if 3 * n - 2 <= n_cap:
            t0 = time.perf_counter()
            word_problem_bruteforce(word, word, 2, n_cap=n_cap)
            brute_ms = (time.perf_counter() - t0) * 1000.0
        rows.append(
            {
                "n": n,
                "word_len": len(word.tokens),
                "table_size": table_size,
                "poly_ms": poly_ms,
                "brute_ms": brute_ms,
            }
        )
    return rows


def cmd_bench(args):
    rows = bench_rows(args.n_max, args.cap_rows, args.cap_n)
    print("n\tword_len\ttable_size\tpoly_ms\tbrute_ms")
    for row in rows:
        cells = [
            str(row["n"]),
            str(row["word_len"]),
            "-" if row["table_size"] is None else str(row["table_size"]),
            f"{row['poly_ms']:.3f}",
            "-" if row["brute_ms"] is None else f"{row['brute_ms']:.3f}",
        ]
        print("\t".join(cells))
    return 0


def _add_common(parser):
    parser.add_argument("--k", type=int, default=2, help="alphabet size (default 2)")
    parser.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thmonoid",
        description="Exact computation in the Thompson-Higman monoids of right-ideal morphisms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a table or generator word")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="classification report for an element")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("eq", help="decide equality of two inputs")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--mode", choices=("poly", "brute", "table"), default="poly")
    p.add_argument("--parallel", action="store_true", help="parallel per-target DFA checks")
    p.add_argument("--cap-N", dest="cap_n", type=int, default=DEFAULT_N_CAP)
    p.add_argument("--cap-tau", dest="cap_tau", type=int, default=DEFAULT_TAU_CAP)
    _add_common(p)
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("mul", help="product of two inputs (canonical table)")
    p.add_argument("left")
    p.add_argument("right")
    _add_common(p)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("maxext", help="maximal essential extension of a table")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_maxext)

    p = sub.add_parser("normalize", help="equivalent normal table")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("factor", help="factor an element over the generating set")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("dclass", help="D-class index of an element")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_dclass)

    p = sub.add_parser("dfa-export", help="export the inverse-image DFA of a target word")
    p.add_argument("input")
    p.add_argument("--target", required=True, help="target word r; exports the DFA for the inverse image of {r}")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--cap-tau", dest="cap_tau", type=int, default=DEFAULT_TAU_CAP)
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(func=cmd_dfa_export)

    p = sub.add_parser("bench", help="poly vs table/brute benchmark on the exponential family")
    p.add_argument("--n-max", dest="n_max", type=int, default=12)
    p.add_argument("--cap-rows", dest="cap_rows", type=int, default=DEFAULT_TABLE_CAP_ROWS)
    p.add_argument("--cap-N", dest="cap_n", type=int, default=DEFAULT_N_CAP)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

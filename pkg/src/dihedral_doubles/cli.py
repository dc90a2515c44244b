"""Command-line surface: construct, compute, and verify from a shell.

Five subcommands cover the package: ``weights`` lists the catalog,
``tensor`` decomposes a product of two weights, ``simple`` prints the
graded character of one simple module, ``verify`` replays the verification
sweeps with a nonzero exit on any mismatch, and ``spherical`` reports the
pivot structure of an index set.  Output is either aligned text or JSON
with a fixed, diff-stable ordering.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from .dihedral import DihedralContext, get_context
from .nichols import IndexSet, parse_index_set, valid_pairs
from .qdouble import build_verma, check_relations, graded_character, head, socle, theta_congruence
from .theorems import (
    RIGID,
    classify_weight,
    is_spherical,
    spherical_report,
    verify_rigid_tensor,
    verify_simple,
)
from .weights import (
    WeightLabel,
    build_weight,
    class_key,
    decomposition_counts,
    parse_weight_label,
    tensor_dd,
    weight_catalog,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


_LABEL_TOKEN = re.compile(r"Mxy:\d+,\d+|Mx:\d+,\d+|M\d+,\d+|e:chi\d+|e:rho\d+|yn:chi\d+|yn:rho\d+")


def _split_weight_list(text: str) -> list[str]:
    """Split a list of weight labels; labels themselves may contain commas."""
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        if text[pos] in ", ;":
            pos += 1
            continue
        match = _LABEL_TOKEN.match(text, pos)
        if not match:
            raise ValueError(f"malformed weight list at {text[pos:]!r}")
        tokens.append(match.group())
        pos = match.end()
    return tokens


def _character_lines(char) -> list[str]:
    lines = []
    for entry in char.to_json_obj():
        summands = " + ".join(
            (f"{s['mult']}*{s['label']}" if s["mult"] > 1 else s["label"])
            for s in entry["summands"]
        )
        lines.append(f"[{entry['degree']:>3}]  {summands}")
    return lines


def _context_from(args) -> DihedralContext:
    return get_context(args.m, unsafe=args.unsafe_m)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_weights(args) -> int:
    ctx = _context_from(args)
    catalog = weight_catalog(ctx)
    n = ctx.n
    rows = [
        {"label": str(label), "dimension": label.dimension(n), "class": class_key(ctx, label)}
        for label in catalog.labels
    ]
    total_sq = sum(row["dimension"] ** 2 for row in rows)
    if args.output == "json":
        _print_json(
            {"m": ctx.m, "count": len(rows), "total_dim_sq": total_sq, "weights": rows}
        )
    else:
        width = max(len(row["label"]) for row in rows)
        for row in rows:
            print(f"{row['label']:<{width}}  dim {row['dimension']:>2}  class {row['class']}")
        print(f"{len(rows)} weights, sum of squared dimensions {total_sq}")
    return EXIT_OK


def cmd_tensor(args) -> int:
    ctx = _context_from(args)
    left = parse_weight_label(args.left)
    right = parse_weight_label(args.right)
    product = tensor_dd(build_weight(ctx, left), build_weight(ctx, right))
    counts = decomposition_counts(ctx, product)
    if args.output == "json":
        _print_json(
            {
                "m": ctx.m,
                "left": str(left),
                "right": str(right),
                "dimension": product.dim,
                "summands": [{"label": str(lab), "mult": mult} for lab, mult in counts],
            }
        )
    else:
        terms = " + ".join(
            (f"{mult}*{lab}" if mult > 1 else str(lab)) for lab, mult in counts
        )
        print(f"{left} x {right} = {terms}")
    return EXIT_OK


def cmd_simple(args) -> int:
    ctx = _context_from(args)
    index_set = parse_index_set(ctx, args.index)
    label = parse_weight_label(args.weight)
    verma = build_verma(ctx, index_set, label)
    relations_ok = not check_relations(verma)
    theta_ok = not theta_congruence(verma)
    simple = head(verma)
    soc = socle(verma)
    head_char = graded_character(simple)
    socle_char = graded_character(soc)
    obj = {
        "m": ctx.m,
        "index_set": [list(pair) for pair in index_set.pairs],
        "weight": str(label),
        "dimension": simple.dim,
        "graded_character": head_char.to_json_obj(),
        "socle": socle_char.to_json_obj(),
        "checks": {"relations": relations_ok, "theta": theta_ok},
    }
    if args.full:
        obj["verma_dimension"] = verma.dim
        obj["verma_character"] = graded_character(verma).to_json_obj()
    if args.output == "json":
        _print_json(obj)
    else:
        print(f"simple module of {label} over {index_set} at m={ctx.m}: dimension {simple.dim}")
        for line in _character_lines(head_char):
            print("  " + line)
        print("socle:")
        for line in _character_lines(socle_char):
            print("  " + line)
        if args.full:
            print(f"standard module: dimension {verma.dim}")
            for line in _character_lines(graded_character(verma)):
                print("  " + line)
    return EXIT_OK


def _verify_weight_task(payload: tuple[int, bool, str, str]) -> tuple[str, bool, dict]:
    m, unsafe, index_text, weight_text = payload
    ctx = get_context(m, unsafe=unsafe)
    index_set = parse_index_set(ctx, index_text)
    label = parse_weight_label(weight_text)
    report = verify_simple(ctx, index_set, label)
    return weight_text, report.ok, report.to_json_obj()


def cmd_verify(args) -> int:
    ctx = _context_from(args)
    index_set = parse_index_set(ctx, args.index)
    catalog = weight_catalog(ctx)
    if args.weights == "all":
        labels = list(catalog.labels)
    else:
        labels = [parse_weight_label(text) for text in _split_weight_list(args.weights)]
    failures: list[str] = []
    results: list[dict] = []

    payloads = [(ctx.m, args.unsafe_m, args.index, str(label)) for label in labels]
    workers = args.threads if args.threads else os.cpu_count() or 1
    if workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_verify_weight_task, payloads))
    else:
        outcomes = [_verify_weight_task(p) for p in payloads]
    for weight_text, ok, obj in outcomes:
        results.append(obj)
        if not ok:
            failures.append(weight_text)
        if args.output != "json":
            print(f"{weight_text:<10} {'ok' if ok else 'MISMATCH'}")

    if args.spherical:
        spherical_expected = is_spherical(ctx, index_set)
        pivots = spherical_report(ctx, index_set)
        agrees = spherical_expected == any(pivots.values())
        if not agrees:
            failures.append("spherical")
        if args.output != "json":
            word = "spherical" if spherical_expected else "not spherical"
            print(f"index set {index_set}: {word}; pivot candidates {pivots}"
                  + ("" if agrees else "  MISMATCH"))

    if args.tensor_rigid:
        rigid = [
            label
            for label in catalog.labels
            if not label.is_reflection_type
            and all(classify_weight(ctx, label, pair) == RIGID for pair in index_set.pairs)
        ]
        partners = list(catalog.labels[:4]) + [
            label for label in catalog.labels if label.is_reflection_type
        ][:2]
        for mu in rigid:
            for lam in partners:
                try:
                    verify_rigid_tensor(ctx, index_set, mu, lam)
                except AssertionError:
                    failures.append(f"tensor {mu} x {lam}")
                    if args.output != "json":
                        print(f"tensor {mu} x {lam}: MISMATCH")
        if args.output != "json" and not any(f.startswith("tensor") for f in failures):
            print(f"rigid tensor checks: {len(rigid)} x {len(partners)} ok")

    if args.output == "json":
        _print_json(
            {
                "m": ctx.m,
                "index_set": [list(pair) for pair in index_set.pairs],
                "cases": results,
                "failures": failures,
                "ok": not failures,
            }
        )
    elif failures:
        print(f"{len(failures)} mismatches: {', '.join(failures)}")
    else:
        print(f"all {len(labels)} cases verified")
    return EXIT_MISMATCH if failures else EXIT_OK


def cmd_spherical(args) -> int:
    ctx = _context_from(args)
    if args.index:
        sets = [parse_index_set(ctx, args.index)]
    else:
        sets = [IndexSet(ctx.m, (pair,)) for pair in valid_pairs(ctx)]
    rows = []
    for index_set in sets:
        expected = is_spherical(ctx, index_set)
        pivots = spherical_report(ctx, index_set)
        rows.append(
            {
                "index_set": [list(pair) for pair in index_set.pairs],
                "spherical": expected,
                "pivots": {str(j): ok for j, ok in pivots.items()},
                "consistent": expected == any(pivots.values()),
            }
        )
    if args.output == "json":
        _print_json({"m": ctx.m, "index_sets": rows})
    else:
        for row in rows:
            text = ",".join(f"({i},{k})" for i, k in row["index_set"])
            word = "spherical" if row["spherical"] else "not spherical"
            flag = "" if row["consistent"] else "  PIVOT MISMATCH"
            print(f"{text:<16} {word}{flag}")
    if all(row["consistent"] for row in rows):
        return EXIT_OK
    return EXIT_MISMATCH


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, default=12, help="order of the rotation (default 12)")
    parser.add_argument(
        "--unsafe-m",
        action="store_true",
        help="allow any even m >= 4 instead of requiring m >= 12 divisible by 4",
    )
    parser.add_argument(
        "--output", choices=("json", "table"), default="table", help="output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-doubles",
        description="Simple modules of Drinfeld doubles over dihedral groups, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", help="list the weight catalog")
    _add_common(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("tensor", help="decompose a tensor product of two weights")
    p.add_argument("left", help="first weight label, e.g. 'M2,3'")
    p.add_argument("right", help="second weight label, e.g. 'Mx:0,0'")
    _add_common(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("simple", help="graded character of one simple module")
    p.add_argument("--index", required=True, help="index set, e.g. '(2,3)' or '(1,6),(3,6)'")
    p.add_argument("--weight", required=True, help="weight label, e.g. 'Mx:0,0'")
    p.add_argument("--full", action="store_true", help="also print the standard module")
    _add_common(p)
    p.set_defaults(func=cmd_simple)

    p = sub.add_parser("verify", help="verify the classification for an index set")
    p.add_argument("--index", required=True, help="index set, e.g. '(2,3)'")
    p.add_argument(
        "--weights",
        default="all",
        help="'all' or a list of weight labels separated by commas, spaces, or semicolons",
    )
    p.add_argument("--spherical", action="store_true", help="also check the pivot structure")
    p.add_argument(
        "--tensor-rigid", action="store_true", help="also check rigid tensor semisimplicity"
    )
    p.add_argument(
        "--threads", type=int, default=0, help="worker processes (default: all cores)"
    )
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spherical", help="pivot structure of index sets")
    p.add_argument("--index", default="", help="index set; default: every valid single pair")
    _add_common(p)
    p.set_defaults(func=cmd_spherical)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())

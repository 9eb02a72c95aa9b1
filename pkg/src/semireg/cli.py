"""Command-line interface: ``semireg spectrum|blocks|gp``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import gp as gpmod
from .errors import CapExceeded, NotAnEigenvalue, OracleDisagreement, SemiregError, ValidationError
from .partitions import classify_extreme, lemma_kernel_check
from .perm import DEFAULT_CAP, all_block_systems_oracle, enumerate_group
from .problem import Problem, load_problem
from .schemas import BLOCKS_REPORT, SPECTRUM_REPORT, complex_json, loads, validate
from .spectral import DEFAULT_TOL, eigen_data, find_eigenvalue, pooled_eigenvalues, spectrum
from .symbol import assemble_adjacency

EXIT_OK, EXIT_ERROR, EXIT_VALIDATION, EXIT_CAP, EXIT_ORACLE = 0, 1, 2, 3, 4


def fmt_complex(z: complex) -> str:
    re = 0.0 if abs(z.real) < 5e-13 else z.real
    im = 0.0 if abs(z.imag) < 5e-13 else z.imag
    if im == 0:
        return f"{re:.10g}"
    return f"{re:.10g}{im:+.10g}i"


def fmt_chars(chars) -> str:
    return "{" + ", ".join(repr(c) for c in sorted(chars, key=lambda c: c.exps)) + "}"


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([line(headers), line(["-" * w for w in widths])] + [line(r) for r in rows])


def _read_problem(path: str, args) -> Problem:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return load_problem(loads(text, path), args.tol, args.cap)


def _multiset_matches(a: list[complex], b: list[complex], tol: float) -> bool:
    if len(a) != len(b):
        return False
    rest = list(b)
    for x in sorted(a, key=lambda z: (z.real, z.imag)):
        j = min(range(len(rest)), key=lambda k: abs(rest[k] - x))
        if abs(rest[j] - x) > tol:
            return False
        rest.pop(j)
    return True


def cmd_spectrum(args) -> tuple[dict, str]:
    prob = _read_problem(args.spec, args)
    s = prob.symbol
    entries = spectrum(s, tol=prob.tol)
    if args.oracle:
        dense = [complex(z) for z in np.linalg.eigvals(assemble_adjacency(s).astype(float))]
        # dense solvers scatter multiple roots by ~eps^(1/k); compare loosely
        if not _multiset_matches(pooled_eigenvalues(s), dense, 1e-5 * max(1, s.valency())):
            raise OracleDisagreement("character spectrum differs from the dense adjacency spectrum")
    rows = []
    for e in entries:
        dim = eigen_data(s, e.value, prob.tol, entries).dim
        rows.append((e, dim))
    report = {
        "symbol": s.to_json(),
        "eigenvalues": [
            {
                "lambda": complex_json(e.value),
                "K": [list(c.exps) for c in sorted(e.characters, key=lambda c: c.exps)],
                "multiplicity": e.multiplicity,
                "dim_W": dim,
            }
            for e, dim in rows
        ],
    }
    validate(report, SPECTRUM_REPORT, "spectrum report")
    text = _table(
        ["lambda", "K", "mult", "dim W"],
        [[fmt_complex(e.value), fmt_chars(e.characters), str(e.multiplicity), str(dim)] for e, dim in rows],
    )
    return report, f"symbol: {s!r}\n" + text


def cmd_blocks(args) -> tuple[dict, str]:
    prob = _read_problem(args.spec, args)
    s, f = prob.symbol, prob.frame
    g = prob.group()
    elems = enumerate_group(g, prob.cap)
    prob.check_h_inside(g)
    entries = spectrum(s, tol=prob.tol)
    targets = entries if args.lam is None else [find_eigenvalue(entries, complex(args.lam), prob.tol)]
    oracle_systems = set(all_block_systems_oracle(g)) if args.oracle else None
    systems = []
    for e in targets:
        rep = classify_extreme(s, g, f, e.value, prob.tol, prob.cap, elements=elems, entries=entries)
        bs = rep.blocks
        if args.oracle:
            if bs.partition not in oracle_systems:
                raise OracleDisagreement(f"block system for lambda={fmt_complex(e.value)} is not invariant")
            if not lemma_kernel_check(bs, s):
                raise OracleDisagreement("H meet kernel differs from the annihilator of K")
        systems.append((e, rep))
    report = {
        "group_order": len(elems),
        "systems": [
            {
                "lambda": complex_json(e.value),
                "K": [list(c.exps) for c in sorted(e.characters, key=lambda c: c.exps)],
                "partition": {"cells": rep.blocks.partition.as_lists()},
                "triple": rep.blocks.triple.to_json(),
                "case": rep.case,
            }
            for e, rep in systems
        ],
    }
    validate(report, BLOCKS_REPORT, "blocks report")
    rows = [
        [
            fmt_complex(e.value),
            fmt_chars(e.characters),
            rep.case,
            str(rep.blocks.partition.as_lists()),
            str(rep.blocks.triple.delta.as_lists()),
            str(sorted(h[0] if len(h) == 1 else h for h in rep.blocks.triple.k)),
        ]
        for e, rep in systems
    ]
    text = _table(["lambda", "K", "case", "blocks", "Delta", "H meet kernel"], rows)
    return report, f"|G| = {len(elems)}\n" + text


def cmd_gp(args) -> tuple[dict, str]:
    if args.gp_cmd == "filter":
        rep = gpmod.gp_character_filter(args.n, args.s)
        verdict = ", ".join(rep.quotients) if rep.positive else "none (no mixer, not edge-transitive)"
        return rep.to_json(), f"GP({rep.n},{rep.s}): quotient {verdict}"
    if args.gp_cmd == "lift":
        sols = gpmod.gp_cover_lift(args.base, args.m)
        report = {
            "base": args.base,
            "m": args.m,
            "solutions": [{"lambda": x.lam, "a": x.a, "gp": [x.n, x.canonical[1]]} for x in sols],
        }
        if not sols:
            return report, f"{args.base}, m={args.m}: the mixer does not lift"
        rows = [[str(x.lam), str(x.a), f"GP({x.n},{x.canonical[1]})"] for x in sols]
        return report, _table(["lambda", "a", "cover"], rows)
    rep = gpmod.gp_classify(args.max_n, oracle=not args.no_oracle)
    rows = [
        [f"({r.n},{r.s})", "yes" if r.filter.positive else "no", "yes" if r.candidate else "no",
         "-" if r.oracle is None else ("yes" if r.oracle else "no")]
        for r in rep.rows if r.filter.positive or r.oracle
    ]
    text = _table(["(n,s)", "filter", "edge-transitive", "oracle"], rows)
    pairs = ", ".join(f"({n},{s})" for n, s in rep.pairs)
    return rep.to_json(), text + f"\n\nedge-transitive: {pairs}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help=f"eigenvalue tolerance (default {DEFAULT_TOL:g})")
    common.add_argument("--cap", type=int, default=None, help=f"group enumeration cap (default {DEFAULT_CAP:,})")
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute force")

    p = argparse.ArgumentParser(prog="semireg", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)
    sp = sub.add_parser("spectrum", parents=[common], help="eigenvalues with their character sets")
    sp.add_argument("spec", help="problem spec JSON file, or - for stdin")
    bp = sub.add_parser("blocks", parents=[common], help="spectral block systems and G-triples")
    bp.add_argument("spec")
    bp.add_argument("--lambda", dest="lam", type=complex, default=None, help="only this eigenvalue")
    gp = sub.add_parser("gp", help="generalized Petersen graphs")
    gsub = gp.add_subparsers(dest="gp_cmd", required=True)
    c = gsub.add_parser("classify", parents=[common])
    c.add_argument("--max-n", type=int, default=30)
    c.add_argument("--no-oracle", action="store_true", help="skip the automorphism-search column")
    fl = gsub.add_parser("filter", parents=[common])
    fl.add_argument("n", type=int)
    fl.add_argument("s", type=int)
    lf = gsub.add_parser("lift", parents=[common])
    lf.add_argument("--base", choices=["cube", "petersen"], required=True)
    lf.add_argument("--m", type=int, required=True)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol is not None and args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_VALIDATION
    if args.cap is not None and args.cap < 1:
        print("error: --cap must be positive", file=sys.stderr)
        return EXIT_VALIDATION
    handler = {"spectrum": cmd_spectrum, "blocks": cmd_blocks, "gp": cmd_gp}[args.cmd]
    try:
        report, text = handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapExceeded as exc:
        print(f"error: {exc}; raise --cap or supply a smaller group", file=sys.stderr)
        return EXIT_CAP
    except NotAnEigenvalue as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OracleDisagreement as exc:
        print(f"oracle disagreement: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except SemiregError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

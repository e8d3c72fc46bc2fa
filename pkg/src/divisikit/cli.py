"""Command-line front end. Every subcommand prints one JSON document on stdout.

Exit codes: 0 on success, 2 on malformed input or any library error,
3 when numeric precision runs out.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from typing import Optional, Sequence

from . import io as jio
from .config import Config, load_config
from .cptp import emb, find_cptp_root, is_cptp
from .decomposability import (decompose, decompose_eps, decompose_even, decompose_m,
                              enumerate_complete_decompositions, weak_decomposability)
from .divisibility import closest_divisible, divisibility_eps, is_n_divisible, weak_divisibility
from .errors import DivisikitError, MalformedInput
from .gadgets import GadgetParams, certified_eps, encode_even_subset_sum, partition_gadget
from .lift import lift_nonneg_to_stochastic
from .nptools import PartitionInstance, partition_oracle, solve_subset_variant
from .rational import fmt, to_fraction
from .roots import find_root, verify_root
from .sat import EmbeddingParams, assemble_family, check_instance, heatmap, to_monotone
from .sweeps import run_all


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _sat_params(cfg: Config) -> EmbeddingParams:
    return EmbeddingParams(cfg.sat_N, cfg.sat_M, cfg.sat_delta, cfg.sat_n_d, cfg.lift_c)


# subcommands

def cmd_divide(args, cfg: Config) -> dict:
    d = jio.dist_from_json(jio.load_json(args.dist))
    if args.closest is not None:
        res = closest_divisible(d, args.n, to_fraction(args.closest))
        return {"answer": "yes", "witness": jio.dist_to_json(res.witness),
                "epsilon_star": fmt(res.epsilon_star), "lower": fmt(res.lower)}
    if args.weak is not None:
        return {"answer": _yes(weak_divisibility(d, args.n, to_fraction(args.weak)))}
    if args.eps is not None:
        v = divisibility_eps(d, args.n, to_fraction(args.eps), budget=cfg.eps_budget)
    else:
        v = is_n_divisible(d, args.n)
    out = {"answer": _yes(v.answer)}
    if v.witness is not None:
        out["witness"] = jio.dist_to_json(v.witness)
    if v.shift:
        out["shift"] = v.shift
    if v.deviation is not None and args.eps is not None:
        out["deviation"] = fmt(v.deviation)
    if not v.certified:
        out["certified"] = False
    return out


def cmd_decompose(args, cfg: Config) -> dict:
    d = jio.dist_from_json(jio.load_json(args.dist))
    if args.complete is not None:
        res = enumerate_complete_decompositions(d, cfg.tol, args.complete)
        return {"decompositions": [[jio.dist_to_json(p) for p in g.parts] for g in res.groupings],
                "truncated": res.truncated}
    if args.weak is not None:
        return {"answer": _yes(weak_decomposability(d, to_fraction(args.weak)))}
    if args.eps is not None:
        res = decompose_eps(d, to_fraction(args.eps), cfg.tol)
    elif args.even:
        res = decompose_even(d, cfg.tol)
    elif args.m is not None:
        res = decompose_m(d, args.m, cfg.tol)
    else:
        res = decompose(d, cfg.tol)
    if res is None:
        return {"answer": "no"}
    return {"answer": "yes", "exact": res.exact, "error": fmt(res.error),
            "factors": [jio.dist_to_json(res.left), jio.dist_to_json(res.right)]}


def cmd_oracle(args, cfg: Config) -> dict:
    obj = jio.load_json(args.instance)
    if args.variant == "partition":
        v = partition_oracle(jio.partition_from_json(obj), cap=cfg.subset_cap)
        elements = jio.partition_from_json(obj).elements
    else:
        s = jio.subset_from_json({**obj, "variant": args.variant})
        v = solve_subset_variant(s, cap=cfg.subset_cap)
        elements = s.elements
    out = {"answer": _yes(v.answer)}
    if v.witness is not None:
        out["witness"] = list(v.witness)
        out["values"] = [fmt(x) for x in v.witness_values(elements)]
    return out


def cmd_encode_subsetsum(args, cfg: Config) -> dict:
    obj = jio.load_json(args.instance)
    params = GadgetParams(cfg.gadget_c)
    if obj.get("variant", "partition") == "partition":
        g = partition_gadget(PartitionInstance(tuple(to_fraction(e) for e in obj["elements"])), params)
        out = {"distribution": jio.dist_to_json(g.dist), "certified_eps": fmt(certified_eps(g))}
    else:
        s = jio.subset_from_json(obj)
        if s.variant != "even":
            raise MalformedInput("encode-subsetsum takes even or partition instances")
        out = {"distribution": jio.dist_to_json(encode_even_subset_sum(s, params))}
    if args.output:
        _write(args.output, jio.dumps(out["distribution"]))
    return out


def cmd_encode_sat(args, cfg: Config) -> dict:
    inst = jio.sat_from_json(jio.load_json(args.instance))
    params = _sat_params(cfg)
    if args.check:
        rep = check_instance(inst, params)
        return {"agree": rep.agree, "satisfiable": rep.oracle_verdict}
    fam = assemble_family(to_monotone(inst), params)
    if args.heatmap:
        with open(args.heatmap, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerows(heatmap(fam, args.branch))
    if args.emit_matrices:
        os.makedirs(args.emit_matrices, exist_ok=True)
        for i in range(len(fam)):
            _write(os.path.join(args.emit_matrices, f"branch_{i}.json"), jio.dumps(jio.matrix_to_json(fam.branch(i))))
        _write(os.path.join(args.emit_matrices, "stochastic_square.json"),
               jio.dumps(jio.matrix_to_json(fam.stochastic_square())))
    return {"dim": fam.dim, "branches": len(fam), "nonnegative_branches": fam.nonnegative_branches(),
            "delta": fmt(fam.delta), "n_d": fmt(fam.n_d), "spectral_gap": fam.spectral_gap(),
            "square_spread": fam.square_spread()}


def cmd_mat_root(args, cfg: Config) -> dict:
    m = jio.matrix_from_json(jio.load_json(args.matrix))
    res = find_root(m, args.mode, cfg.precision, cfg.tol)
    if res is None:
        return {"answer": "no"}
    return {"answer": "yes", "root": jio.matrix_to_json(res.matrix), "branch": res.branch,
            "deviation": repr(res.deviation)}


def cmd_lift(args, cfg: Config) -> dict:
    m = jio.matrix_from_json(jio.load_json(args.matrix))
    if not hasattr(m, "rows"):
        raise MalformedInput("lift needs a rational matrix")
    res = lift_nonneg_to_stochastic(m, cfg.lift_ratio)
    return {"lifted": jio.matrix_to_json(res.lifted), "scale": fmt(res.scale)}


def cmd_verify_root(args, cfg: Config) -> dict:
    q = jio.matrix_from_json(jio.load_json(args.root))
    p = jio.matrix_from_json(jio.load_json(args.target))
    rep = verify_root(q, p, cfg.tol)
    return {"ok": bool(rep.ok(cfg.tol)), "exact": rep.exact, "deviation": jio.num_to_json(rep.deviation),
            "min_entry": jio.num_to_json(rep.min_entry),
            "row_sum_deviation": jio.num_to_json(rep.row_sum_deviation)}


def cmd_emb(args, cfg: Config) -> dict:
    return jio.matrix_to_json(emb(jio.matrix_from_json(jio.load_json(args.matrix))))


def cmd_cptp_check(args, cfg: Config) -> dict:
    rep = is_cptp(jio.matrix_from_json(jio.load_json(args.matrix)), cfg.tol)
    return {"cptp": rep.cptp, "completely_positive": rep.completely_positive,
            "trace_preserving": rep.trace_preserving, "exact": rep.exact,
            "min_eigenvalue": repr(float(rep.min_eigenvalue)),
            "trace_deviation": jio.num_to_json(rep.trace_deviation)}


def cmd_cptp_root(args, cfg: Config) -> dict:
    res = find_cptp_root(jio.matrix_from_json(jio.load_json(args.matrix)), cfg.precision, cfg.tol)
    if res is None:
        return {"answer": "no"}
    return {"answer": "yes", "root": jio.matrix_to_json(res.matrix), "branch": res.branch}


def cmd_sweep(args, cfg: Config) -> dict:
    results = run_all(cfg.seed, args.criteria)
    if args.table:
        for r in results:
            print(r.line(), file=sys.stderr)
    return {"passed": all(r.passed for r in results),
            "results": [{"criterion": r.criterion, "name": r.name, "passed": r.passed,
                         "detail": r.detail, "seconds": round(r.seconds, 1)} for r in results]}


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS, help="working precision in bits")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key = value config file")

    parser = argparse.ArgumentParser(prog="divisikit", parents=[common],
                                     description="Divisibility, decomposability and matrix-root toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("divide", cmd_divide, "n-divisibility of a distribution")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--eps")
    g.add_argument("--weak")
    g.add_argument("--closest", metavar="PRECISION")
    p.add_argument("dist")

    p = add("decompose", cmd_decompose, "decomposability of a distribution")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--m", type=int)
    g.add_argument("--even", action="store_true")
    g2 = p.add_mutually_exclusive_group()
    g2.add_argument("--eps")
    g2.add_argument("--weak")
    g2.add_argument("--complete", type=int, metavar="LIMIT")
    p.add_argument("dist")

    p = add("oracle", cmd_oracle, "brute-force subset sum and partition oracles")
    p.add_argument("variant", choices=("plain", "even", "m", "signed_m", "partition"))
    p.add_argument("instance")

    p = add("encode-subsetsum", cmd_encode_subsetsum, "gadget distribution for a subset sum instance")
    p.add_argument("instance")
    p.add_argument("-o", "--output")

    p = add("encode-sat", cmd_encode_sat, "matrix embedding of a 1-in-3-SAT instance")
    p.add_argument("instance")
    p.add_argument("--check", action="store_true")
    p.add_argument("--emit-matrices", metavar="DIR")
    p.add_argument("--heatmap", metavar="CSV")
    p.add_argument("--branch", type=int, default=0, help="branch written by --heatmap")

    p = add("mat-root", cmd_mat_root, "stochastic, nonnegative or doubly stochastic square root")
    p.add_argument("--mode", choices=("stochastic", "nonnegative", "doubly"), default="stochastic")
    p.add_argument("matrix")

    p = add("lift", cmd_lift, "lift a real matrix to a doubly stochastic one")
    p.add_argument("matrix")

    p = add("verify-root", cmd_verify_root, "check that Q squares to P")
    p.add_argument("root")
    p.add_argument("target")

    for name, fn, text in (("emb", cmd_emb, "superoperator embedding of a matrix"),
                           ("cptp-check", cmd_cptp_check, "complete positivity and trace preservation"),
                           ("cptp-root", cmd_cptp_root, "CPTP square root of a superoperator")):
        add(name, fn, text).add_argument("matrix")

    p = add("sweep", cmd_sweep, "run the acceptance suites")
    p.add_argument("--criteria", type=int, nargs="*", choices=range(1, 11))
    p.add_argument("--table", action="store_true", help="also print a summary table on stderr")
    return parser


def _error(exc: Exception, code: str) -> None:
    print(jio.dumps({"error": code, "message": str(exc)}), file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(getattr(args, "config", None)).with_overrides(
            seed=getattr(args, "seed", None), precision=getattr(args, "precision", None),
            tol=getattr(args, "tol", None))
        out = args.func(args, cfg)
    except DivisikitError as exc:
        _error(exc, exc.code)
        return exc.exit_code
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        _error(exc, "malformed_input")
        return 2
    print(jio.dumps(out))
    if args.command == "sweep" and not out["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    floodnet simulate --schedule fixed_cycle --n 10
    floodnet schedule --name psi --n 8 --out psi8.json
    floodnet sweep --n 3..150 --trials 1000 --seed 7 --out fig10.csv
    floodnet bounds --n-range 3..150 --out bounds.csv
    floodnet oracle --n 12 --sequences 100 --seed 1
    floodnet verify --graphs psi8.json --profile psi

Exit status is 0 on success, 1 when a check fails (a JSON diagnostic goes
to stderr) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from typing import Iterator, Sequence

import numpy as np

from . import bounds, cords, knowledge, montecarlo, oracle, schedules
from .errors import FloodnetError, SearchLimitError
from .graph import GraphSequence


class CheckFailed(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("error", "check failed"))
        self.payload = payload


def parse_n_values(text: str, step: int = 1) -> list[int]:
    """``"a..b"`` (inclusive), ``"a,b,c"`` or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1, step))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}") from None


@contextmanager
def _output(path: str | None) -> Iterator[io.TextIOBase]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_rows(rows: list[dict], columns: Sequence[str], fmt: str, path: str | None) -> None:
    with _output(path) as out:
        if fmt == "json":
            json.dump(rows, out, indent=2)
            out.write("\n")
        else:
            w = csv.DictWriter(out, fieldnames=list(columns), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})


def cmd_simulate(args: argparse.Namespace) -> int:
    sch = schedules.build_schedule(args.schedule, args.n, steps=args.steps,
                                   seed=args.seed, node=args.node)
    seq = sch.sequence.padded(args.extend) if args.extend else sch.sequence
    trace = knowledge.run(seq)
    if args.dump_graphs:
        with open(args.dump_graphs, "w") as fh:
            fh.write(seq.to_json())
    if args.trace_csv:
        with open(args.trace_csv, "w", newline="") as fh:
            knowledge.write_trace_csv(trace, fh)
    for state in trace:
        card = " ".join(str(c) for c in state.cardinalities.tolist())
        print(f"round {state.round}: {card}")
    fks = knowledge.first_fks_round(trace)
    print("FKS not reached" if fks is None else f"FKS at round {fks}")
    view = knowledge.infer_size(trace)
    if any(s is not None for s in view.inferred_size):
        print("inferred sizes: " + " ".join("-" if s is None else str(s) for s in view.inferred_size))
    return 0


def cmd_schedule(args: argparse.Namespace) -> int:
    sch = schedules.build_schedule(args.name, args.n, steps=args.steps,
                                   seed=args.seed, node=args.node)
    if not schedules.verify_certificates(sch):
        raise CheckFailed({"error": "certificate verification failed", "schedule": sch.name})
    with _output(args.out) as out:
        json.dump(sch.to_json_dict(), out)
        out.write("\n")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    ns = parse_n_values(args.n, args.n_step)
    report = montecarlo.sweep(ns, args.trials, args.seed, workers=args.workers)
    _write_rows(report.rows(), montecarlo.SWEEP_COLUMNS, args.format, args.out)
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    ns = parse_n_values(args.n_range, args.n_step)
    _write_rows(bounds.bounds_rows(ns), bounds.BOUNDS_COLUMNS, args.format, args.out)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    rep = oracle.equivalence_suite(args.n, args.sequences, rng, steps=args.steps)
    print(rep.summary())
    if not rep.ok:
        raise CheckFailed({"error": "oracle mismatch", "n": rep.n,
                           "mismatched": list(rep.mismatched_indices)})
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    with open(args.graphs) as fh:
        data = json.load(fh)
    seq = GraphSequence.from_json_dict(data)
    failures = []
    if args.profile:
        profile = schedules.PROFILES[args.profile]
        for g in seq:
            if g.round > seq.n - 2:
                # profiles only constrain rounds 0..n-2
                print(json.dumps({"round": g.round, "skipped": "outside profile rounds"}))
                continue
            chi = min(max(profile(seq.n, g.round), 1), seq.n)
            certs = cords.chi_certificates(g, chi, search_limit=args.limit)
            for node, cord in certs.items():
                print(json.dumps({"round": g.round, "chi": chi, "node": node,
                                  "cord": None if cord is None else cord.to_json_dict()}))
                if cord is None:
                    failures.append({"round": g.round, "node": node, "chi": chi})
    elif data.get("certificates"):
        for raw in data["certificates"]:
            cert = schedules.RoundCertificate.from_json_dict(raw)
            ok = 0 <= cert.round < len(seq) and schedules.verify_round_certificate(cert, seq[cert.round])
            for c in cert.cords:
                print(json.dumps({"round": cert.round, "cord": c.to_json_dict(), "ok": ok}))
            for cyc in cert.cycles:
                for node, cord in _cycle_cords(cyc):
                    print(json.dumps({"round": cert.round, "chi": cert.chi, "node": node,
                                      "cord": cord.to_json_dict(), "ok": ok}))
            if not ok:
                failures.append({"round": cert.round})
    else:
        raise CheckFailed({"error": "nothing to verify: pass --profile or a file with certificates"})
    if failures:
        raise CheckFailed({"error": "verification failed", "failures": failures})
    return 0


def _cycle_cords(cycle: Sequence[int]):
    m = len(cycle)
    for pos, node in enumerate(cycle):
        rot = [cycle[(pos + t) % m] for t in range(1, m)]
        yield node, cords.Cord(node, tuple(rot), "input", True)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="floodnet", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def schedule_opts(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--steps", type=int, default=None, help="rounds for fixed_cycle/random")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--node", type=int, default=None, help="w for dp_path, q for cp_path")

    sp = sub.add_parser("simulate", help="flood a named schedule, print per-round cardinalities")
    sp.add_argument("--schedule", required=True, choices=schedules.SCHEDULE_NAMES)
    schedule_opts(sp)
    sp.add_argument("--extend", type=int, default=0, help="append edgeless rounds")
    sp.add_argument("--dump-graphs", metavar="PATH")
    sp.add_argument("--trace-csv", metavar="PATH")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("schedule", help="dump a schedule and its certificates as JSON")
    sp.add_argument("--name", required=True, choices=schedules.SCHEDULE_NAMES)
    schedule_opts(sp)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_schedule)

    sp = sub.add_parser("sweep", help="Monte Carlo earliest/latest FKS per network size")
    sp.add_argument("--n", required=True, help="a..b, a,b,c or a single size")
    sp.add_argument("--n-step", type=int, default=1)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("bounds", help="closed-form windows per network size")
    sp.add_argument("--n-range", required=True)
    sp.add_argument("--n-step", type=int, default=1)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("oracle", help="engine vs boolean-matrix equivalence on random sequences")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sequences", type=int, default=100)
    sp.add_argument("--steps", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify", help="check a dumped sequence against a profile or its certificates")
    sp.add_argument("--graphs", required=True, metavar="PATH")
    sp.add_argument("--profile", choices=tuple(schedules.PROFILES))
    sp.add_argument("--limit", type=int, default=cords.SEARCH_LIMIT,
                    help="node ceiling for exhaustive search")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(json.dumps(exc.payload), file=sys.stderr)
        return 1
    except OSError as exc:
        print(json.dumps({"error": str(exc), "kind": "io"}), file=sys.stderr)
        return 1
    except (FloodnetError, ValueError) as exc:
        kind = "search_limit" if isinstance(exc, SearchLimitError) else type(exc).__name__
        print(json.dumps({"error": str(exc), "kind": kind}), file=sys.stderr)
        return 2

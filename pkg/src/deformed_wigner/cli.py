"""Command-line front end.

Exit codes: 0 success, 1 runtime failure, 2 usage or domain error.
Every file written is accompanied by ``<stem>.manifest.json``, which
``replay`` turns back into the identical output file.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, combinatorics, laws
from .ensemble import EnsembleConfig
from .montecarlo import (
    ExperimentSpec,
    run_overlap_experiment,
    run_overlap_scatter,
    run_transition_experiment,
)

PROFILE_HEADER = ("bin_center", "count", "mean_overlap", "stderr", "law_p")
SCATTER_HEADER = ("lambda", "N_overlap")
TRANSITION_HEADER = ("quantity", "value", "reference")


class UsageError(Exception):
    pass


def fmt(value) -> str:
    """Locale-free rendering with 12 significant digits."""
    if isinstance(value, (int, str)):
        return str(value)
    value = float(value)
    if value == 0:
        return "0.0"
    if math.isnan(value):
        return "nan"
    text = format(value, ".12g")
    if not any(ch in text for ch in ".enai"):
        text += ".0"
    return text


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def manifest_path(out: Path) -> Path:
    return out.with_name(out.stem + ".manifest.json")


def _write_manifest(out: Path, command: str, params: dict, started: float) -> None:
    manifest = {
        "command": command,
        "params": params,
        "seed": params.get("seed"),
        "version": __version__,
        "duration_ms": round((time.perf_counter() - started) * 1000, 3),
    }
    manifest_path(out).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="ascii")


def _config(params: dict) -> EnsembleConfig:
    return EnsembleConfig(
        n=params["n"], theta=params["theta"], entry_dist=params["dist"], master_seed=params["seed"]
    )


def run_simulate(params: dict) -> int:
    started = time.perf_counter()
    config = _config(params)
    out = Path(params["out"])
    if params["scatter"]:
        if params["trials"] < 1:
            raise UsageError("trials must be >= 1")
        parts = [run_overlap_scatter(config, t) for t in range(params["trials"])]
        lam = np.concatenate([p[0] for p in parts])
        scaled = np.concatenate([p[1] for p in parts])
        _write_csv(out, SCATTER_HEADER, zip(lam, scaled))
    else:
        spec = ExperimentSpec(
            config, trials=params["trials"], bins=params["bins"], bin_range=tuple(params["bin_range"])
        )
        profile = run_overlap_experiment(spec)
        rows = zip(profile.centers, profile.count.tolist(), profile.mean, profile.stderr, profile.law)
        _write_csv(out, PROFILE_HEADER, rows)
    _write_manifest(out, "simulate", params, started)
    return 0


def run_transition(params: dict) -> int:
    started = time.perf_counter()
    config = _config(params)
    report = run_transition_experiment(ExperimentSpec(config, trials=params["trials"]))
    rows = [
        ("mean_lambda1", report.mean_lambda1, report.reference_lambda1),
        ("std_lambda1", report.std_lambda1, float("nan")),
        ("mean_overlap1", report.mean_overlap1, report.reference_overlap1),
        ("trials", report.trials, report.trials),
    ]
    print(",".join(TRANSITION_HEADER))
    for row in rows:
        print(",".join(fmt(v) for v in row))
    if params.get("out"):
        out = Path(params["out"])
        _write_csv(out, TRANSITION_HEADER, rows)
        _write_manifest(out, "transition", params, started)
    return 0


def run_law(params: dict) -> int:
    what = params["what"]
    if what == "eval":
        value = laws.overlap_law(params["x"], params["theta"])
    elif what == "energy":
        value = laws.energy_functional(params["theta"], params["c"])
    else:
        value = laws.threshold_m(params["c"])
    print(fmt(value))
    return 0


def run_comb(params: dict) -> int:
    what = params["what"]
    if what == "catalan":
        print(combinatorics.catalan(params["k"]))
    elif what == "cheb":
        print(combinatorics.chebyshev_u(params["n"]))
    elif what == "h":
        if params["bruteforce"]:
            print(combinatorics.h_coefficient_bruteforce(params["m"], params["n"]))
        else:
            print(combinatorics.h_coefficient(params["m"], params["n"]))
    elif what == "table":
        max_m, max_n = params["max_m"], params["max_n"]
        writer = csv.writer(sys.stdout, lineterminator="\n")
        if params["kind"] == "I":
            table = combinatorics.path_counts(max_m, max_n)
            writer.writerow(["m", *(f"n={n}" for n in range(max_n + 1))])
            for m in range(max_m + 1):
                writer.writerow([m, *table[m]])
        else:
            writer.writerow(["m", *(f"n={n}" for n in range(max_n + 1))])
            for m in range(max_m + 1):
                writer.writerow([m, *(combinatorics.h_coefficient(m, n) for n in range(max_n + 1))])
    else:
        report = combinatorics.verify_all(params["max_m"], params["max_n"])
        print("\n".join(report.lines()))
        return 0 if report.passed else 1
    return 0


def run_replay(params: dict) -> int:
    manifest = json.loads(Path(params["manifest"]).read_text(encoding="ascii"))
    command = manifest["command"]
    replayed = dict(manifest["params"])
    if params.get("out"):
        replayed["out"] = params["out"]
    if command not in ("simulate", "transition"):
        raise UsageError(f"cannot replay command {command!r}")
    return HANDLERS[command](replayed)


HANDLERS = {
    "simulate": run_simulate,
    "transition": run_transition,
    "law": run_law,
    "comb": run_comb,
    "replay": run_replay,
}


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deformed-wigner",
        description="Rank-one deformed Wigner matrices: simulation, limiting laws, exact combinatorics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def ensemble_flags(p, *, theta, trials):
        p.add_argument("--n", type=int, default=200, help="matrix dimension N")
        p.add_argument("--theta", type=float, default=theta, help="signal strength")
        p.add_argument("--trials", type=int, default=trials)
        p.add_argument("--seed", type=_nonneg_int, default=0, help="master seed")
        p.add_argument("--dist", choices=["gaussian", "rademacher"], default="gaussian")

    sim = sub.add_parser("simulate", help="binned overlap profile (or raw scatter) to CSV")
    ensemble_flags(sim, theta=0.5, trials=500)
    sim.add_argument("--bins", type=int, default=40)
    sim.add_argument("--bin-range", type=float, nargs=2, default=[-2.2, 2.2], metavar=("LO", "HI"))
    sim.add_argument("--scatter", action="store_true", help="write per-eigenvalue rows instead of bins")
    sim.add_argument("--out", required=True)

    tr = sub.add_parser("transition", help="top eigenvalue and top-eigenvector overlap statistics")
    ensemble_flags(tr, theta=2.0, trials=50)
    tr.add_argument("--out", default=None)

    law = sub.add_parser("law", help="closed-form limiting laws")
    law_sub = law.add_subparsers(dest="what", required=True)
    p = law_sub.add_parser("eval", help="overlap law p(x; theta)")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p = law_sub.add_parser("energy", help="energy functional P(theta; c)")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p = law_sub.add_parser("threshold", help="m with semicircle mass c on [m, 2]")
    p.add_argument("--c", type=float, required=True)

    comb = sub.add_parser("comb", help="exact combinatorics")
    comb_sub = comb.add_subparsers(dest="what", required=True)
    p = comb_sub.add_parser("catalan")
    p.add_argument("--k", type=_nonneg_int, required=True)
    p = comb_sub.add_parser("cheb", help="f_n(x) = U_n(x/2)")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p = comb_sub.add_parser("h", help="H(m, n)")
    p.add_argument("--m", type=_nonneg_int, required=True)
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--bruteforce", action="store_true", help="use the word-enumeration oracle")
    for name in ("table", "verify"):
        p = comb_sub.add_parser(name)
        p.add_argument("--max-m", type=_nonneg_int, required=True)
        p.add_argument("--max-n", type=_nonneg_int, required=True)
        if name == "table":
            p.add_argument("--kind", choices=["I", "H"], default="I")

    rp = sub.add_parser("replay", help="re-run a manifest")
    rp.add_argument("manifest")
    rp.add_argument("--out", default=None, help="write to a different path")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k != "command"}
    try:
        return HANDLERS[args.command](params)
    except (UsageError, ValueError) as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")
    except Exception as exc:  # noqa: BLE001
        print(f"{parser.prog}: runtime failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

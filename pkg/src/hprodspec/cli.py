"""Command-line front end.

Exit codes: 0 ok, 1 input/parse error, 2 precondition failed,
3 structured result disagrees with the dense oracle. Errors go to stderr as a
single line ``error:<kind>: message``.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from .errors import HProdSpecError, InvalidInput, ParseError, PreconditionError
from .fiedler import Spectrum
from .graphs import (
    UniversalParams,
    h_product,
    random_circulant_family,
    random_graph,
    read_edge_list,
    write_edge_list,
)
from .spectra import (
    MATRIX_KINDS,
    ORACLE_TOL,
    HProductJob,
    adjacency_spectrum_hproduct,
    compare_spectra,
    dense_oracle_spectrum,
    structured_spectrum,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_MISMATCH = 0, 1, 2, 3
JOB_KEYS = {"h", "factors", "matrix", "params", "tolerance", "oracle"}
MAX_DENSE_DIM = 8192


def fmt(x) -> float:
    """Round to 12 significant digits for stable JSON."""
    return float(f"{float(x):.12g}") + 0.0


def fmt_list(xs) -> list:
    return [fmt(x) for x in np.asarray(xs).reshape(-1)]


def load_job(path) -> tuple:
    """Parse a job file into ``(HProductJob, run_oracle)``; factor paths resolve relative to it."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"cannot read job file: {exc}", path) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path, exc.lineno) from None
    if not isinstance(raw, dict):
        raise ParseError("job must be a JSON object", path)
    unknown = set(raw) - JOB_KEYS
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", path)
    for key in ("h", "factors", "matrix"):
        if key not in raw:
            raise ParseError(f"missing key {key!r}", path)
    kind = raw["matrix"]
    if kind not in MATRIX_KINDS:
        raise ParseError(f"matrix must be one of {list(MATRIX_KINDS)}, got {kind!r}", path)
    params = raw.get("params")
    if kind == "universal":
        if not (isinstance(params, list) and len(params) == 4):
            raise ParseError("universal jobs need 'params' as an array of 4 reals", path)
        try:
            params = UniversalParams(*(float(p) for p in params))
        except (TypeError, ValueError):
            raise ParseError("'params' entries must be numbers", path) from None
    elif params is not None:
        raise ParseError("'params' is only allowed for matrix 'universal'", path)
    if not isinstance(raw["factors"], list) or not raw["factors"]:
        raise ParseError("'factors' must be a non-empty array of paths", path)
    base = path.parent
    H = read_edge_list(base / raw["h"])
    factors = [read_edge_list(base / f) for f in raw["factors"]]
    tolerance = float(raw.get("tolerance", ORACLE_TOL))
    run_oracle = bool(raw.get("oracle", True))
    if len(factors) != H.order:
        raise ParseError(f"H has {H.order} vertices but {len(factors)} factor files were given", path)
    return HProductJob(H, factors, kind, params, tolerance), run_oracle


def spectrum_report(job: HProductJob, run_oracle: bool) -> tuple:
    """Run a job and build the JSON-ready report; returns ``(report_dict, matched)``."""
    report = structured_spectrum(job, oracle=run_oracle)
    out = {
        "eigenvalues": fmt_list(report.structured.values),
        "grouped": [
            {"value": fmt(e.value), "multiplicity": e.multiplicity}
            for e in report.structured.entries
        ],
        "reduced_matrices": [
            {"t": r.t, "entries": [fmt_list(row) for row in r.matrix], "eigenvalues": fmt_list(r.eigenvalues)}
            for r in report.reduced
        ],
    }
    matched = True
    if report.oracle is not None:
        out["oracle_eigenvalues"] = fmt_list(report.oracle.values)
        out["max_abs_diff"] = fmt(report.max_abs_diff)
        matched = report.max_abs_diff <= job.tolerance
    else:
        out["max_abs_diff"] = None
    out["timings_ms"] = {k.removesuffix("_ms"): fmt(v) for k, v in report.timings.items()}
    return out, matched


def cmd_spectrum(args) -> int:
    job, run_oracle = load_job(args.job)
    out, matched = spectrum_report(job, run_oracle and not args.no_oracle)
    print(json.dumps(out, indent=2))
    return EXIT_OK if matched else EXIT_MISMATCH


def cmd_product(args) -> int:
    H = read_edge_list(args.H)
    factors = [read_edge_list(f) for f in args.factors.split(",") if f]
    G = h_product(H, factors)
    write_edge_list(G, args.out)
    print(f"wrote {args.out}: order {G.order}, {G.size} edges")
    return EXIT_OK


def _perturbed(report, delta: float) -> Spectrum:
    # negative control: shift C_0[0, 0] and recompute the pooled spectrum
    vals = []
    for r in report.reduced:
        M = r.matrix.copy()
        if r.t == 0:
            M[0, 0] += delta
        vals.extend(np.linalg.eigvalsh(M))
    inp = report.fiedler_input
    for d in inp.decomps:
        vals.extend(d.values[inp.k :])
    return Spectrum(np.array(vals))


def cmd_verify(args) -> int:
    job, _ = load_job(args.job)
    report = structured_spectrum(job, oracle=False)
    structured = report.structured
    if args.perturb_reduced:
        structured = _perturbed(report, args.perturb_reduced)
    matched, diff = compare_spectra(structured, dense_oracle_spectrum(job), job.tolerance)
    print(f"max_abs_diff={fmt(diff)!r} tolerance={job.tolerance!r} matched={str(matched).lower()}")
    return EXIT_OK if matched else EXIT_MISMATCH


def run_bench(n: int, l: int, trials: int, seed: int) -> dict:
    """Time the structured adjacency path against the dense solve on random circulant jobs."""
    s_times, d_times, diff = [], [], None
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        factors = random_circulant_family(n, l, rng)
        H = random_graph(l, 0.5, rng)
        t0 = time.perf_counter()
        report = adjacency_spectrum_hproduct(H, factors)
        t1 = time.perf_counter()
        dense = dense_oracle_spectrum(HProductJob(H, factors))
        t2 = time.perf_counter()
        s_times.append(t1 - t0)
        d_times.append(t2 - t1)
        if diff is None:
            diff = compare_spectra(report.structured, dense, np.inf)[1]
    s_med, d_med = statistics.median(s_times), statistics.median(d_times)
    return {
        "n": n,
        "l": l,
        "trials": trials,
        "seed": seed,
        "structured_ms": fmt(1e3 * s_med),
        "oracle_ms": fmt(1e3 * d_med),
        "ratio": fmt(d_med / s_med),
        "max_abs_diff": fmt(diff),
        "structured_ms_all": fmt_list(1e3 * np.array(s_times)),
        "oracle_ms_all": fmt_list(1e3 * np.array(d_times)),
    }


def cmd_bench(args) -> int:
    if args.trials < 1:
        raise InvalidInput("--trials must be at least 1")
    if args.n < 2 or args.l < 1:
        raise InvalidInput("need --n >= 2 and --l >= 1")
    if args.n * args.l > MAX_DENSE_DIM:
        raise InvalidInput(f"n*l = {args.n * args.l} exceeds the dense limit {MAX_DENSE_DIM}")
    print(json.dumps(run_bench(args.n, args.l, args.trials, args.seed), indent=2))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); argparse's own code 2 is reserved
    def error(self, message):
        self.exit(EXIT_INPUT, f"error:usage: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hprodspec",
        description="Spectra of H-products of commuting graphs via block reduction.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="structured spectrum of a job, JSON on stdout")
    p.add_argument("--job", required=True)
    p.add_argument("--no-oracle", action="store_true", help="skip the dense comparison")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("product", help="write the H-product as an edge list")
    p.add_argument("--H", required=True, help="edge list of the pattern graph H")
    p.add_argument("--factors", required=True, help="comma-separated factor edge lists")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("verify", help="check structured against dense; exit 3 on mismatch")
    p.add_argument("--job", required=True)
    p.add_argument("--perturb-reduced", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time structured vs dense on random circulant jobs")
    p.add_argument("--n", type=int, required=True, help="factor order")
    p.add_argument("--l", type=int, required=True, help="number of factors (order of H)")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HProdSpecError as exc:
        code = EXIT_PRECONDITION if isinstance(exc, PreconditionError) else EXIT_INPUT
        kind, message = exc.kind, str(exc)
    except OSError as exc:
        code, kind, message = EXIT_INPUT, "io", str(exc)
    print(f"error:{kind}: {' '.join(message.split())}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

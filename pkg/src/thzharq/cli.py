"""Reproduction driver: ``sweep`` runs rate/SNR sweeps across methods and
schemes and emits CSV; ``params`` echoes the parsed configuration and the
derived quantities without running anything.

Exit codes: 0 success, 2 configuration error, 3 at least one sweep point
failed numerically (its row carries the error sentinel).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import sys
import time
from dataclasses import dataclass, replace
from typing import List, Optional

from . import chase, montecarlo, type1
from .config import RunSpec, load_config, regime_flag, snr_db_to_linear
from .errors import ConfigError, NumericError
from .montecarlo import McSpec, Provenance
from .type1 import HarqConfig, Scheme

CSV_HEADER = "variable_value,scheme,method,p_out,half_width,regime_flag,flag"

_METHOD_PROVENANCE = {
    "exact": Provenance.EXACT,
    "asymptotic": Provenance.ASYMPTOTIC,
    "mc": Provenance.MONTE_CARLO,
    "convolution": Provenance.CONVOLUTION,
}


@dataclass
class Row:
    variable_value: float
    scheme: Scheme
    method: str
    p_out: Optional[float]
    half_width: Optional[float]
    regime: str
    flag: str
    wall_clock_s: float

    def render(self) -> str:
        p = "error" if self.p_out is None else f"{self.p_out:.10g}"
        hw = "" if self.half_width is None else f"{self.half_width:.4g}"
        return (
            f"{self.variable_value:.10g},{self.scheme.value},{self.method},"
            f"{p},{hw},{self.regime},{self.flag}"
        )


def _config_for_point(spec: RunSpec, value: float) -> HarqConfig:
    if spec.sweep.variable == "rate":
        rate, snr_db = value, spec.sweep.fixed
    else:
        rate, snr_db = spec.sweep.fixed, value
    return HarqConfig(
        scheme=Scheme.TYPE_I,
        max_rounds=spec.max_rounds,
        rate=rate,
        snr=snr_db_to_linear(snr_db),
    )


def _evaluate_point(spec: RunSpec, value: float, mc: McSpec) -> List[Row]:
    """All (scheme, method) rows of one sweep point, sorted by scheme then
    method."""
    fp, h_l = spec.fading_params, spec.h_l
    regime = regime_flag(fp)
    rows: List[Row] = []
    base = _config_for_point(spec, value)

    for scheme in sorted(spec.sweep.schemes, key=lambda s: s.value):
        cfg = replace(base, scheme=scheme)
        exact_value: Optional[float] = None
        for method in sorted(spec.sweep.methods):
            started = time.perf_counter()
            flag = ""
            p: Optional[float] = None
            half: Optional[float] = None
            try:
                if method == "exact":
                    if scheme is Scheme.TYPE_I:
                        p = type1.outage_exact_type1(fp, h_l, cfg)
                    else:
                        detail = chase.outage_exact_cc_detail(fp, h_l, cfg)
                        p = detail.value
                        if detail.low_confidence:
                            flag = "low_confidence"
                    exact_value = p
                elif method == "asymptotic":
                    if scheme is Scheme.TYPE_I:
                        p = type1.outage_asymptotic_type1(fp, h_l, cfg)
                    else:
                        p = chase.outage_asymptotic_cc(fp, h_l, cfg)
                elif method == "convolution":
                    if scheme is Scheme.TYPE_I:
                        # single-round CDF power; the convolution oracle only
                        # distinguishes itself for chase combining
                        p = type1.outage_exact_type1(fp, h_l, cfg)
                    else:
                        p = chase.outage_cc_convolution(fp, h_l, cfg)
                elif method == "mc":
                    est = montecarlo.simulate_outage(fp, h_l, cfg, mc)
                    p, half = est.p_hat, est.half_width
                    if exact_value is None:
                        try:
                            exact_value = (
                                type1.outage_exact_type1(fp, h_l, cfg)
                                if scheme is Scheme.TYPE_I
                                else chase.outage_exact_cc(fp, h_l, cfg)
                            )
                        except NumericError:
                            exact_value = None
                    if exact_value is not None and exact_value < 10.0 / mc.trials:
                        flag = "insufficient_trials"
                else:  # pragma: no cover - validated at parse time
                    raise ConfigError(f"unknown method {method}")
            except NumericError:
                p, half, flag = None, None, "error"
            rows.append(
                Row(
                    variable_value=value,
                    scheme=scheme,
                    method=method,
                    p_out=p,
                    half_width=half,
                    regime=regime,
                    flag=flag,
                    wall_clock_s=time.perf_counter() - started,
                )
            )
    return rows


def run_sweep(spec: RunSpec, out_path: Optional[str], threads: int,
              seed_override: Optional[int]) -> int:
    mc = spec.sweep.mc if seed_override is None else replace(spec.sweep.mc, seed=seed_override)
    values = spec.sweep.values()
    started = time.perf_counter()

    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_evaluate_point, spec, v, mc) for v in values]
            per_point = [f.result() for f in futures]
    else:
        per_point = [_evaluate_point(spec, v, mc) for v in values]

    rows = [row for point in per_point for row in point]
    total = time.perf_counter() - started

    lines = [CSV_HEADER]
    lines += [row.render() for row in rows]
    lines += [
        f"# wall_clock_s,{row.variable_value:.10g},{row.scheme.value},"
        f"{row.method},{row.wall_clock_s:.4f}"
        for row in rows
    ]
    lines.append(f"# total_wall_clock_s,{total:.4f}")
    text = "\n".join(lines) + "\n"

    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        summary_stream = sys.stdout
    else:
        sys.stdout.write(text)
        summary_stream = sys.stderr

    failures = sum(1 for r in rows if r.p_out is None)
    finite = [r.p_out for r in rows if r.p_out is not None]
    summary = [
        f"sweep: {len(values)} points x {len(spec.sweep.schemes)} schemes x "
        f"{len(spec.sweep.methods)} methods -> {len(rows)} rows",
        f"p_out range: [{min(finite):.4g}, {max(finite):.4g}]" if finite else "no finite rows",
        f"numeric failures: {failures}",
        f"total wall clock: {total:.2f} s",
    ]
    print("\n".join(summary), file=summary_stream)
    return 3 if failures else 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="thz-harq",
        description="Outage probability of HARQ-aided terahertz links "
        "(exact, asymptotic, Monte-Carlo and convolution routes).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the configured sweep and emit CSV")
    p_sweep.add_argument("--config", required=True, help="path to INI config")
    p_sweep.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p_sweep.add_argument("--threads", type=int, default=1, help="worker threads")
    p_sweep.add_argument("--seed", type=int, default=None, help="override MC seed")

    p_params = sub.add_parser("params", help="echo parsed and derived parameters")
    p_params.add_argument("--config", required=True, help="path to INI config")

    args = parser.parse_args(argv)

    try:
        spec = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if args.command == "params":
        from .config import describe

        print(describe(spec))
        return 0

    if args.threads < 1:
        print("config error: --threads must be >= 1", file=sys.stderr)
        return 2
    return run_sweep(spec, args.out, args.threads, args.seed)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())

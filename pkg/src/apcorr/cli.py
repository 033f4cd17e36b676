"""Command line front end.

Subcommands: sieve, correlate, predict, compare, arcs, dirichlet,
selftest.  All take --config PATH, --out DIR, --threads N, --cache DIR;
the APC_CACHE_DIR environment variable overrides --cache when set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import arith, circle, dirichlet, singular
from .cache import cached_segment
from .config import ExperimentConfig, load_config
from .correlate import correlate_weighted_pair
from .errors import ApcorrError, ConfigError
from .experiment import _fmt, run_experiment, write_summary_json
from .kernels import BACKEND
from .predict import prediction_profile
from .sieve import E2Params, build_segment, e2_indicator, mertens_sum, prime_indicator


def _add_common(sub: argparse.ArgumentParser, config_required: bool = True) -> None:
    sub.add_argument("--config", required=config_required, help="config file path")
    sub.add_argument("--out", default=None, help="output directory")
    sub.add_argument("--threads", type=int, default=None, help="worker threads")
    sub.add_argument("--cache", default=None, help="sieve cache directory")


def _effective(args) -> tuple[ExperimentConfig, str, str | None]:
    """Merge config file, flags, and environment into final settings."""
    cfg = load_config(args.config)
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError(f"--threads must be >= 1, got {args.threads}")
        cfg.threads = args.threads
    out_dir = args.out or cfg.out_dir or "."
    cache_dir = os.environ.get("APC_CACHE_DIR") or args.cache or cfg.cache_dir
    return cfg, out_dir, cache_dir


def _write_json(out_dir: str, name: str, payload: dict) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return path


def cmd_sieve(args) -> int:
    cfg, out_dir, cache_dir = _effective(args)
    x, hmax = cfg.x, cfg.h_max
    seg = cached_segment(cache_dir, x - hmax, x + 2 * hmax, threads=cfg.threads)
    base = seg.subsegment(x, x)
    params = cfg.e2_params()
    e2 = e2_indicator(base, params)
    primes = prime_indicator(base)
    payload = {
        "window_start": seg.start,
        "window_length": seg.length,
        "x": x,
        "prime_count": primes.total(),
        "e2_count": e2.total(),
        "mertens": params.prime_reciprocal_sum(),
        "backend": BACKEND,
    }
    path = _write_json(out_dir, "sieve.json", payload)
    print(f"sieve: window ({seg.start}, {seg.end}] "
          f"primes={payload['prime_count']} e2={payload['e2_count']} -> {path}")
    return 0


def cmd_correlate(args) -> int:
    cfg, out_dir, cache_dir = _effective(args)
    x, hmax = cfg.x, cfg.h_max
    seg = cached_segment(cache_dir, x - hmax, x + 2 * hmax, threads=cfg.threads)
    profile, info = correlate_weighted_pair(
        cfg.pair_spec(), x, hmax, cfg.e2_params(),
        weighted=cfg.weighted, threads=cfg.threads, segment=seg,
    )
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "correlation.csv")
    lines = ["h,parity,actual"]
    for i, h in enumerate(profile.lags.tolist()):
        parity = "even" if h % 2 == 0 else "odd"
        lines.append(f"{h},{parity},{_fmt(profile.values[i])}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"correlate: {2 * hmax} shifts, diagonal={_fmt(profile.diagonal)} -> {path}")
    return 0


def cmd_predict(args) -> int:
    cfg, out_dir, _ = _effective(args)
    x, hmax = cfg.x, cfg.h_max
    params = cfg.e2_params()
    if cfg.pair == "e2xe2" and cfg.weighted:
        prediction = prediction_profile(x, hmax, params=params, q0=cfg.q0)
    else:
        raise ConfigError(
            "predict alone supports the weighted e2xe2 model; other models "
            "need measured totals, use the compare subcommand"
        )
    table = singular.singular_series_batch(hmax)
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "prediction.csv")
    lines = ["h,parity,predicted,singular_series"]
    for i, h in enumerate(prediction.lags.tolist()):
        parity = "even" if h % 2 == 0 else "odd"
        lines.append(
            f"{h},{parity},{_fmt(float(prediction.values[i]))},"
            f"{_fmt(float(table[abs(h)]))}"
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"predict: {2 * hmax} shifts -> {path}")
    return 0


def cmd_compare(args) -> int:
    cfg, out_dir, cache_dir = _effective(args)
    bundle = run_experiment(cfg, out_dir=out_dir, cache_dir=cache_dir)
    s = bundle.summary
    print(
        f"compare: median ratio {s['median_ratio']:.4f}, "
        f"exceptional(0.25) {s['exceptional_0.25']:.4f} -> {bundle.csv_path}"
    )
    return 0


def cmd_arcs(args) -> int:
    cfg, out_dir, _ = _effective(args)
    if cfg.arc_q0 is None:
        raise ConfigError("arcs needs config keys 'arc_q0' and 'arc_q'")
    params = circle.ArcParams(cfg.arc_q0, cfg.arc_q)
    measure = circle.major_arc_measure(params)
    fraction = circle.major_arc_fraction(params, cfg.mc_samples, seed=cfg.seed)
    payload = {
        "q0": params.q0,
        "qmax": params.qmax,
        "measure": measure,
        "mc_fraction": fraction,
        "mc_samples": cfg.mc_samples,
        "seed": cfg.seed,
        "abs_gap": abs(fraction - measure),
    }
    path = _write_json(out_dir, "arcs.json", payload)
    print(
        f"arcs: measure={measure:.6f} mc={fraction:.6f} "
        f"gap={payload['abs_gap']:.2e} -> {path}"
    )
    return 0


def cmd_dirichlet(args) -> int:
    cfg, out_dir, _ = _effective(args)
    q = cfg.dirichlet_q
    table = dirichlet.character_table(q)
    phi_q = len(table.chars)

    # Row orthogonality of the character table.
    mat = np.vstack([c.values for c in table.chars])
    gram = mat @ mat.conj().T
    row_err = float(np.max(np.abs(gram - phi_q * np.eye(phi_q))))
    tau0 = dirichlet.gauss_sum(table.principal())
    mu_q = arith.mobius(q)

    params = cfg.e2_params()
    fact = dirichlet.factorization_check(cfg.x, params, cfg.u)
    payload = {
        "q": q,
        "characters": phi_q,
        "row_orthogonality_error": row_err,
        "gauss_principal": [tau0.real, tau0.imag],
        "mobius_q": mu_q,
        "gauss_vs_mobius_error": abs(tau0 - mu_q),
        "factorization_support_ok": fact.support_ok,
        "factorization_bound_ok": fact.bound_ok,
        "factorization_residual": fact.residual,
        "factorization_boundary_terms": len(fact.boundary_coeffs),
    }
    path = _write_json(out_dir, "dirichlet.json", payload)
    print(
        f"dirichlet: q={q} orth_err={row_err:.2e} "
        f"fact_residual={fact.residual:.2e} -> {path}"
    )
    return 0


def cmd_selftest(args) -> int:
    """Fast built-in checks; prints one line per check."""
    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok:
            failures += 1

    seg = build_segment(30, 30)
    e2 = e2_indicator(seg, E2Params.restricted(2, 3))
    members = sorted((31 + np.nonzero(e2.values)[0]).tolist())
    check("e2 members of (30,60] with factor in (2,3]", members == [33, 39, 51, 57])
    check("mertens (20,40]", abs(mertens_sum(20, 40) - 0.13724611103341094) < 1e-15)
    check(
        "twin prime constant cutoff 5",
        abs(singular.twin_prime_constant(5) - 0.703125) < 1e-15,
    )
    check(
        "singular series even/odd",
        singular.singular_series(3) == 0.0 and singular.singular_series(2) > 1.3,
    )
    lbl = circle.classify_arc(0.5, circle.ArcParams(2, 100))
    check("alpha=1/2 is a major arc point", lbl.major and lbl.a == 1 and lbl.q == 2)
    lhs, rhs = circle.discrete_parseval(e2, 64)
    check("discrete mean square identity", abs(lhs - rhs) <= 1e-9 * max(rhs, 1.0))
    t3 = dirichlet.character_table(3)
    check(
        "character table mod 3",
        abs(t3.chars[1].values[2] + 1) < 1e-12 and t3.chars[0].principal,
    )
    check(
        "gauss sum of principal char mod 4 is mu(4)",
        abs(dirichlet.gauss_sum(dirichlet.character_table(4).principal())) < 1e-12,
    )
    print(f"selftest: {8 - failures}/8 passed (backend={BACKEND})")
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="apcorr",
        description="Correlation experiments for prime and two-prime sequences",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {
        "sieve": cmd_sieve,
        "correlate": cmd_correlate,
        "predict": cmd_predict,
        "compare": cmd_compare,
        "arcs": cmd_arcs,
        "dirichlet": cmd_dirichlet,
    }
    for name, fn in handlers.items():
        p = sub.add_parser(name)
        _add_common(p)
        p.set_defaults(handler=fn)
    p = sub.add_parser("selftest")
    _add_common(p, config_required=False)
    p.set_defaults(handler=cmd_selftest)

    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ApcorrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""End-to-end experiment orchestration and report files.

run_experiment drives sieve -> correlate -> predict -> error report and
writes two artifacts: a per-shift CSV and a JSON summary.  Both outputs
are byte-deterministic for a given config.

CSV schema (header exactly as written, \\n line endings, 2 * h_max rows
in ascending shift order):

    h,parity,actual,predicted,relerr,singular_series

relerr is left empty on odd shifts, where the prediction is zero by
definition.  Floats are printed with 12 significant digits.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

import numpy as np

from . import singular
from .cache import cached_segment
from .config import ExperimentConfig
from .correlate import CorrelationProfile, correlate_weighted_pair
from .errors import ParameterError
from .predict import ErrorReport, PredictionProfile, error_report, prediction_profile

SUMMARY_KEYS = (
    "x",
    "h_max",
    "count_f",
    "count_g",
    "mertens",
    "mean_ratio",
    "median_ratio",
    "exceptional_0.10",
    "exceptional_0.25",
    "exceptional_0.50",
    "l2",
)


@dataclass(frozen=True)
class ReportBundle:
    """Everything one experiment produced."""

    config: ExperimentConfig
    profile: CorrelationProfile
    prediction: PredictionProfile
    report: ErrorReport
    summary: dict
    csv_path: str | None = None
    json_path: str | None = None


def _fmt(v) -> str:
    """12 significant digits for floats, exact text for ints."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    f = float(v)
    if math.isinf(f):
        return "inf" if f > 0 else "-inf"
    return format(f, ".12g")


def run_experiment(
    cfg: ExperimentConfig,
    out_dir: str | None = None,
    cache_dir: str | None = None,
    write_files: bool = True,
) -> ReportBundle:
    """Run the full pipeline for one config.

    Parameters
    ----------
    cfg : ExperimentConfig
        Validated parameters.
    out_dir : str, optional
        Where comparison.csv and summary.json go; falls back to
        cfg.out_dir, then the current directory.
    cache_dir : str, optional
        Sieve segment cache; falls back to cfg.cache_dir.  None disables
        caching.
    write_files : bool
        Skip the artifact files entirely when False.
    """
    out_dir = out_dir or cfg.out_dir or "."
    cache_dir = cache_dir or cfg.cache_dir
    params = cfg.e2_params()
    x, hmax = cfg.x, cfg.h_max

    segment = cached_segment(cache_dir, x - hmax, x + 2 * hmax, threads=cfg.threads)
    profile, info = correlate_weighted_pair(
        cfg.pair_spec(),
        x,
        hmax,
        params,
        weighted=cfg.weighted,
        threads=cfg.threads,
        segment=segment,
    )

    if cfg.pair == "e2xe2" and cfg.weighted:
        prediction = prediction_profile(x, hmax, params=params, q0=cfg.q0)
    else:
        prediction = prediction_profile(
            x, hmax, totals=(info["sum_f"], info["sum_g"]), q0=cfg.q0
        )

    report = error_report(profile, prediction)
    count_f = info["sum_f"] if cfg.weighted else info["count_f"]
    count_g = info["sum_g"] if cfg.weighted else info["count_g"]
    summary = {
        "x": x,
        "h_max": hmax,
        "count_f": count_f,
        "count_g": count_g,
        "mertens": info["mertens"],
        "mean_ratio": report.mean_ratio,
        "median_ratio": report.median_ratio,
        "exceptional_0.10": report.exceptional_fraction(0.10),
        "exceptional_0.25": report.exceptional_fraction(0.25),
        "exceptional_0.50": report.exceptional_fraction(0.50),
        "l2": report.l2,
    }

    csv_path = json_path = None
    if write_files:
        os.makedirs(out_dir, exist_ok=True)
        csv_path = os.path.join(out_dir, "comparison.csv")
        json_path = os.path.join(out_dir, "summary.json")
        write_comparison_csv(csv_path, profile, prediction)
        write_summary_json(json_path, summary)
    return ReportBundle(cfg, profile, prediction, report, summary, csv_path, json_path)


def write_comparison_csv(
    path: str, profile: CorrelationProfile, prediction: PredictionProfile
) -> None:
    """Per-shift comparison rows; see the module docstring for the schema."""
    if profile.hmax != prediction.hmax:
        raise ParameterError("profiles disagree on shift bound")
    table = singular.singular_series_batch(profile.hmax)
    lines = ["h,parity,actual,predicted,relerr,singular_series"]
    for i, h in enumerate(profile.lags.tolist()):
        actual = profile.values[i]
        pred = float(prediction.values[i])
        sing = float(table[abs(h)])
        if h % 2 == 0:
            if pred > 0:
                rel = _fmt((float(actual) - pred) / pred)
            elif float(actual) == 0.0:
                rel = _fmt(0.0)
            else:
                rel = "inf"
            parity = "even"
        else:
            rel = ""
            parity = "odd"
        lines.append(
            f"{h},{parity},{_fmt(actual)},{_fmt(pred)},{rel},{_fmt(sing)}"
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_summary_json(path: str, summary: dict) -> None:
    """Summary with a fixed key order, exactly the documented keys."""
    ordered = {k: summary[k] for k in SUMMARY_KEYS}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(ordered, fh, indent=2)
        fh.write("\n")

"""Counts -> reported quantities: conditionals, leakage, V, D, sigma_th, SEM.

All functions are pure over outcome-weight tables.  A table is any mapping
``outcome string -> weight`` together with its clbit labels; integer shot
counts and exact probabilities are both accepted, so the same code path
serves finite-shot and infinite-shot (exact engine) inputs.

Statistical quantities follow the binomial-trial formulas

    sigma_th(p, N) = sqrt(p (1 - p) / N)
    sem(N_s, N)    = sqrt(N_s N_f / (N^2 (N - 1))),   N_f = N - N_s

and visibility is the grid extremum contrast

    V = (max_theta p - min_theta p) / (max_theta p + min_theta p),

evaluated exactly as defined, not by sinusoid fitting (a cosine-fit
estimator is provided separately and clearly labeled as such).

Classically forbidden recorder outcomes (0_x 0_y and 1_x 0_y, i.e. any
event with y = 0) are "leakage"; they are discarded and conditionals
renormalize over the accepted events, with the discard rate always
reported.  An empty subensemble yields ``None`` for its conditional,
never 0, since 0 is a physically meaningful probability.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Mapping

CSV_COLUMNS = (
    "theta_rad",
    "p0s",
    "p0s_sem",
    "p0s_g11",
    "p0s_g11_sigma_th",
    "p0s_g11_sem",
    "p0s_g01",
    "p0s_g01_sigma_th",
    "p0s_g01_sem",
    "leakage_rate",
    "accepted_shots",
)


def as_weights(data, labels=None) -> tuple[Mapping[str, float], tuple[str, ...]]:
    """Normalize counts/exact-result/mapping inputs to (weights, labels).

    Duck-typed: anything carrying ``counts`` or ``probabilities`` together
    with ``clbit_labels`` works (CountsTable, ExactResult, adapters);
    plain mappings need explicit labels.
    """
    weights = getattr(data, "probabilities", None)
    if weights is None:
        weights = getattr(data, "counts", None)
    own_labels = getattr(data, "clbit_labels", None)
    if weights is not None and own_labels is not None:
        return weights, tuple(own_labels)
    if labels is None:
        raise ValueError("plain mappings need explicit clbit labels")
    return data, tuple(labels)


def sigma_th(p: float, n: int) -> float:
    """Binomial standard deviation of a frequency estimate: sqrt(p(1-p)/N)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.sqrt(p * (1.0 - p) / n)


def sem(successes: float, n: int) -> float:
    """Standard error of the mean of N Bernoulli trials with N_s successes."""
    if n < 2:
        raise ValueError(f"sem needs n >= 2, got {n}")
    if not 0 <= successes <= n:
        raise ValueError(f"successes must be in [0, {n}], got {successes}")
    failures = n - successes
    return math.sqrt(successes * failures / (n**2 * (n - 1)))


@dataclass(frozen=True)
class DualityCheck:
    value: float
    satisfied: bool


def duality_check(visibility: float, distinguishability: float, tol: float = 1e-9) -> DualityCheck:
    """Evaluate V^2 + D^2 and check it against the duality bound <= 1 + tol."""
    value = visibility**2 + distinguishability**2
    return DualityCheck(value, value <= 1.0 + tol)


def _index_of(labels: tuple[str, ...], name: str) -> int:
    try:
        return labels.index(name)
    except ValueError:
        raise ValueError(f"clbit label {name!r} not found in {labels}") from None


def split_by(data, by, labels=None) -> dict[str, dict[str, float]]:
    """Group a table by the outcome of the ``by`` clbits, removing them.

    Returns subensemble key (bits of ``by`` in the given order) -> weight
    table over the remaining clbits.  Remaining labels keep their order.
    """
    weights, all_labels = as_weights(data, labels)
    by = list(by)
    by_idx = [_index_of(all_labels, b) for b in by]
    drop = set(by_idx)
    out: dict[str, dict[str, float]] = {}
    for outcome, w in weights.items():
        key = "".join(outcome[i] for i in by_idx)
        rest = "".join(ch for i, ch in enumerate(outcome) if i not in drop)
        bucket = out.setdefault(key, {})
        bucket[rest] = bucket.get(rest, 0.0) + w
    return out


def remaining_labels(labels, by) -> tuple[str, ...]:
    drop = set(by)
    return tuple(l for l in labels if l not in drop)


@dataclass(frozen=True)
class SubensembleStats:
    """Conditional interference statistics of one (sub)ensemble.

    ``p0s_given_1x1y``/``p0s_given_0x1y`` are ``None`` when the subensemble
    is empty (undefined, not zero).  Weights are in input units: shot
    counts for finite data, probabilities for exact data.
    """

    p_0s: float | None
    p0s_given_1x1y: float | None
    p0s_given_0x1y: float | None
    leakage_rate: float
    total: float
    accepted: float
    n_11: float
    n_01: float
    n_0s: float
    n_0s_11: float
    n_0s_01: float


def subensemble_conditionals(data, labels=None, *, s="s", x="x", y="y") -> SubensembleStats:
    """Group events into the 1x1y / 0x1y recorder subensembles.

    Events with y = 0 are leakage: discarded, with the rate reported.
    Conditionals are renormalized over accepted events only.
    """
    weights, all_labels = as_weights(data, labels)
    si, xi, yi = (_index_of(all_labels, k) for k in (s, x, y))
    total = acc = n11 = n01 = n0s = n0s11 = n0s01 = 0.0
    for outcome, w in weights.items():
        total += w
        if outcome[yi] != "1" or outcome[xi] not in "01":
            continue  # leakage: y=0 (or an unmeasured recorder bit)
        acc += w
        s0 = outcome[si] == "0"
        n0s += w * s0
        if outcome[xi] == "1":
            n11 += w
            n0s11 += w * s0
        else:
            n01 += w
            n0s01 += w * s0
    if total <= 0:
        raise ValueError("empty counts table")
    return SubensembleStats(
        p_0s=(n0s / acc) if acc > 0 else None,
        p0s_given_1x1y=(n0s11 / n11) if n11 > 0 else None,
        p0s_given_0x1y=(n0s01 / n01) if n01 > 0 else None,
        leakage_rate=(total - acc) / total,
        total=total,
        accepted=acc,
        n_11=n11,
        n_01=n01,
        n_0s=n0s,
        n_0s_11=n0s11,
        n_0s_01=n0s01,
    )


@dataclass(frozen=True)
class DistinguishabilityResult:
    p_succ: float
    value: float  # D = 2 p_succ - 1
    inverted: bool  # D < 0: the guessing strategy should be reversed


def distinguishability(counts_open, labels=None, *, s="s", x="x", y="y") -> DistinguishabilityResult:
    """Which-way guess quality from *open-configuration* counts.

    Strategy: guess path |0> on 1x1y, path |1> on 0x1y, so
    p_succ = p(0s 1x 1y) + p(1s 0x 1y) over accepted events and
    D = 2 p_succ - 1.  A negative D is reported as-is with the inversion
    flagged.
    """
    stats = subensemble_conditionals(counts_open, labels, s=s, x=x, y=y)
    if stats.accepted <= 0:
        raise ValueError("no accepted events to estimate distinguishability from")
    n_succ = stats.n_0s_11 + (stats.n_01 - stats.n_0s_01)
    p_succ = n_succ / stats.accepted
    d = 2.0 * p_succ - 1.0
    return DistinguishabilityResult(p_succ, d, d < 0)


def visibility(per_theta: Mapping[float, float]) -> float:
    """Grid-extremum fringe contrast (max - min) / (max + min) over theta.

    Requires at least two distinct theta samples spanning a half-period
    (pi) of the fringe.
    """
    thetas = sorted(per_theta)
    if len(thetas) < 2 or (thetas[-1] - thetas[0]) < math.pi - 1e-9:
        raise ValueError("degenerate theta grid: need >= 2 samples spanning a half-period")
    values = [per_theta[t] for t in thetas]
    hi, lo = max(values), min(values)
    if hi + lo == 0:
        return 0.0
    return (hi - lo) / (hi + lo)


def cosine_fit_visibility(per_theta: Mapping[float, float]) -> float:
    """Secondary estimator: least-squares cosine amplitude over the grid.

    Fits p(theta) ~ a + b cos(theta) + c sin(theta) and returns
    sqrt(b^2 + c^2) / a.  More robust on noisy data than the grid
    extremum, but it is *not* the defining formula; reported separately.
    """
    import numpy as np

    thetas = np.array(sorted(per_theta))
    vals = np.array([per_theta[t] for t in thetas])
    basis = np.stack([np.ones_like(thetas), np.cos(thetas), np.sin(thetas)], axis=1)
    coef, *_ = np.linalg.lstsq(basis, vals, rcond=None)
    a, b, c = coef
    if a == 0:
        return 0.0
    return float(math.hypot(b, c) / abs(a))


@dataclass(frozen=True)
class ThetaRow:
    theta_rad: float
    p0s: float | None
    p0s_sem: float | None
    p0s_g11: float | None
    p0s_g11_sigma_th: float | None
    p0s_g11_sem: float | None
    p0s_g01: float | None
    p0s_g01_sigma_th: float | None
    p0s_g01_sem: float | None
    leakage_rate: float
    accepted_shots: float


@dataclass(frozen=True)
class ReportScalars:
    V_11: float | None
    V_01: float | None
    D: float | None
    p_succ: float | None
    duality: float | None
    phi: float
    config_hash: str

    def to_json_dict(self) -> dict:
        return {
            "V_11": self.V_11,
            "V_01": self.V_01,
            "D": self.D,
            "p_succ": self.p_succ,
            "duality": self.duality,
            "phi": self.phi,
            "config_hash": self.config_hash,
        }


@dataclass
class EraserReport:
    """Per-theta conditional fringes plus scalar summary of one sweep."""

    rows: list[ThetaRow]
    scalars: ReportScalars
    sigma_magnification: float = 5.0  # presentation metadata for plot export

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for row in self.rows:
                writer.writerow(
                    [
                        _fmt(getattr(row, col))
                        for col in CSV_COLUMNS
                    ]
                )

    def scalars_json(self) -> str:
        return json.dumps(self.scalars.to_json_dict(), indent=2, sort_keys=True)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _row_from_stats(theta: float, stats: SubensembleStats) -> ThetaRow:
    acc = stats.accepted
    g11_sem = g11_sig = g01_sem = g01_sig = p0s_sem_v = None
    if acc >= 2 and stats.p_0s is not None:
        p0s_sem_v = sem(stats.n_0s, int(acc))
    if stats.n_11 >= 2 and stats.p0s_given_1x1y is not None:
        g11_sig = sigma_th(stats.p0s_given_1x1y, int(stats.n_11))
        g11_sem = sem(stats.n_0s_11, int(stats.n_11))
    if stats.n_01 >= 2 and stats.p0s_given_0x1y is not None:
        g01_sig = sigma_th(stats.p0s_given_0x1y, int(stats.n_01))
        g01_sem = sem(stats.n_0s_01, int(stats.n_01))
    return ThetaRow(
        theta_rad=theta,
        p0s=stats.p_0s,
        p0s_sem=p0s_sem_v,
        p0s_g11=stats.p0s_given_1x1y,
        p0s_g11_sigma_th=g11_sig,
        p0s_g11_sem=g11_sem,
        p0s_g01=stats.p0s_given_0x1y,
        p0s_g01_sigma_th=g01_sig,
        p0s_g01_sem=g01_sem,
        leakage_rate=stats.leakage_rate,
        accepted_shots=acc,
    )


def build_report(
    per_theta_counts: Mapping[float, object],
    *,
    phi: float,
    config_hash: str,
    open_counts=None,
    labels=None,
) -> EraserReport:
    """Assemble the per-theta table and scalar summary for one subensemble.

    ``per_theta_counts`` maps theta -> counts table (or exact result).  The
    distinguishability block needs open-configuration counts and is left
    null when ``open_counts`` is not given; V comes from the closed sweep.
    """
    rows = []
    g11: dict[float, float] = {}
    g01: dict[float, float] = {}
    for theta in sorted(per_theta_counts):
        stats = subensemble_conditionals(per_theta_counts[theta], labels)
        rows.append(_row_from_stats(theta, stats))
        if stats.p0s_given_1x1y is not None:
            g11[theta] = stats.p0s_given_1x1y
        if stats.p0s_given_0x1y is not None:
            g01[theta] = stats.p0s_given_0x1y
    v11 = visibility(g11) if len(g11) >= 2 else None
    v01 = visibility(g01) if len(g01) >= 2 else None
    d_val = p_succ = None
    if open_counts is not None:
        dres = distinguishability(open_counts, labels)
        d_val, p_succ = dres.value, dres.p_succ
    duality = v11**2 + d_val**2 if (v11 is not None and d_val is not None) else None
    scalars = ReportScalars(v11, v01, d_val, p_succ, duality, phi, config_hash)
    return EraserReport(rows, scalars)

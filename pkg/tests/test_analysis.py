import csv
import math

import numpy as np
import pytest

from qeraser.analysis import (
    CSV_COLUMNS,
    build_report,
    cosine_fit_visibility,
    distinguishability,
    duality_check,
    sem,
    sigma_th,
    split_by,
    subensemble_conditionals,
    visibility,
)
from qeraser.engine import CountsTable, run_exact
from qeraser.experiments import EraserConfig, build_two_recorder_eraser
from qeraser.noise import NoiseModel, QubitNoiseParams

LBL = ("s", "x", "y")
GRID = [k * 0.1 * math.pi for k in range(21)]


def test_conditionals_symmetric_table():
    counts = {"011": 500, "111": 500, "001": 500, "101": 500}
    stats = subensemble_conditionals(counts, LBL)
    assert stats.p0s_given_1x1y == 0.5
    assert stats.p0s_given_0x1y == 0.5
    assert stats.leakage_rate == 0.0


def test_conditionals_deterministic_table():
    counts = {"011": 1000, "101": 1000}
    stats = subensemble_conditionals(counts, LBL)
    assert stats.p0s_given_1x1y == 1.0
    assert stats.p0s_given_0x1y == 0.0


def test_conditionals_with_leakage():
    # 100 leaked of 5000: rate 0.02, conditionals computed on the 4900 kept.
    counts = {"011": 2450, "101": 2450, "000": 60, "110": 40}
    stats = subensemble_conditionals(counts, LBL)
    assert stats.leakage_rate == pytest.approx(100 / 5000)
    assert stats.accepted == 4900
    assert stats.p0s_given_1x1y == 1.0 and stats.p0s_given_0x1y == 0.0


def test_empty_subensemble_is_none_not_zero():
    counts = {"011": 10}
    stats = subensemble_conditionals(counts, LBL)
    assert stats.p0s_given_1x1y == 1.0
    assert stats.p0s_given_0x1y is None


def test_conditionals_invariant_under_table_order():
    a = {"011": 7, "111": 3, "001": 2, "101": 8}
    b = dict(reversed(list(a.items())))
    sa = subensemble_conditionals(a, LBL)
    sb = subensemble_conditionals(b, LBL)
    assert sa == sb


def test_distinguishability_limits():
    # Hand-built exact open-configuration tables.
    perfect = {"011": 0.5, "101": 0.5}  # phi = 0: recorder pins the path
    d = distinguishability(perfect, LBL)
    assert d.p_succ == 1.0 and d.value == 1.0 and not d.inverted
    erased = {"011": 0.25, "111": 0.25, "001": 0.25, "101": 0.25}  # phi = pi/2
    d = distinguishability(erased, LBL)
    assert d.p_succ == 0.5 and d.value == 0.0
    flipped = {"111": 0.5, "001": 0.5}  # phi = pi: anti-correlated recorder
    d = distinguishability(flipped, LBL)
    assert d.p_succ == 0.0 and d.value == -1.0 and d.inverted


def test_distinguishability_matches_engine():
    cfg = EraserConfig(theta=0.0, phi=math.pi / 3, closed_configuration=False)
    d = distinguishability(run_exact(build_two_recorder_eraser(cfg)))
    assert abs(d.value - 0.5) < 1e-12


def test_visibility_closed_forms():
    for phi, want in ((math.pi / 2, 1.0), (0.0, 0.0), (math.pi / 4, math.sqrt(2) / 2)):
        per_theta = {t: 0.5 * (1 + math.sin(phi) * math.cos(t)) for t in GRID}
        assert abs(visibility(per_theta) - want) < 1e-12
    assert abs(visibility({t: 0.5 * (1 + math.cos(t)) for t in GRID}) - 1.0) < 1e-12


def test_visibility_rejects_degenerate_grid():
    with pytest.raises(ValueError):
        visibility({0.0: 0.5})
    with pytest.raises(ValueError):
        visibility({0.0: 0.4, 0.5: 0.6})  # span < half period


def test_cosine_fit_visibility_on_exact_fringe():
    per_theta = {t: 0.5 * (1 + 0.6 * math.cos(t)) for t in GRID}
    assert abs(cosine_fit_visibility(per_theta) - 0.6) < 1e-9


def test_sigma_th_values():
    assert abs(sigma_th(0.5, 5000) - 0.0070711) < 1e-7
    assert sigma_th(0.0, 100) == 0.0
    assert sigma_th(1.0, 100) == 0.0
    # Direct formula evaluation oracle: sqrt(0.8536 * 0.1464 / 5000).
    assert abs(sigma_th(0.8536, 5000) - 0.004999340385) < 1e-9
    with pytest.raises(ValueError):
        sigma_th(1.5, 10)
    with pytest.raises(ValueError):
        sigma_th(0.5, 0)


def test_sem_values():
    # Direct formula oracle: sqrt(300 * 700 / (1000^2 * 999)).
    assert abs(sem(300, 1000) - math.sqrt(300 * 700 / (1000**2 * 999))) < 1e-15
    assert abs(sem(300, 1000) - 0.0144986278) < 1e-9
    assert sem(0, 1000) == 0.0
    assert sem(1000, 1000) == 0.0
    with pytest.raises(ValueError):
        sem(1, 1)
    with pytest.raises(ValueError):
        sem(-1, 10)


def test_sem_converges_to_sigma_th():
    n = 10**6
    s = sem(int(0.3 * n), n)
    sig = sigma_th(0.3, n)
    assert abs(s - sig) / sig < 1e-3


def test_duality_check_cases():
    assert duality_check(1.0, 0.0).satisfied and duality_check(1.0, 0.0).value == 1.0
    r = duality_check(0.5, 0.5)
    assert r.value == 0.5 and r.satisfied
    r = duality_check(0.5, math.sqrt(3) / 2)
    assert abs(r.value - 1.0) < 1e-12 and r.satisfied
    assert not duality_check(0.9, 0.9).satisfied


def test_split_by_groups_and_projects():
    counts = CountsTable({"0110": 5, "0111": 3, "1010": 2}, 10, ("s", "x", "y", "a"))
    split = split_by(counts, ["a"])
    assert split["0"] == {"011": 5, "101": 2}
    assert split["1"] == {"011": 3}


def test_visibility_decreases_with_delay_noise():
    # Monotone fringe degradation under fixed-T2 dephasing (exact engine).
    t2 = 8e-6
    vs = []
    for t_delay in (0, 10000, 20000, 40000):
        per = {}
        for theta in GRID:
            cfg = EraserConfig(theta=theta, phi=math.pi / 2, t_delay=t_delay)
            circ = build_two_recorder_eraser(cfg)
            noise = NoiseModel.from_dict(
                {1: QubitNoiseParams(t2=t2), 2: QubitNoiseParams(t2=t2)}, circ.num_qubits
            )
            stats = subensemble_conditionals(run_exact(circ, noise))
            per[theta] = stats.p0s_given_1x1y
        vs.append(visibility(per))
    assert all(b < a for a, b in zip(vs, vs[1:]))


def _report_from_exact(phi):
    per_theta = {}
    for theta in GRID:
        per_theta[theta] = run_exact(
            build_two_recorder_eraser(EraserConfig(theta=theta, phi=phi))
        )
    open_res = run_exact(
        build_two_recorder_eraser(
            EraserConfig(theta=0.0, phi=phi, closed_configuration=False)
        )
    )
    return build_report(per_theta, phi=phi, config_hash="deadbeef0123", open_counts=open_res)


def test_report_csv_schema_and_scalars(tmp_path):
    report = _report_from_exact(math.pi / 3)
    path = tmp_path / "report.csv"
    report.write_csv(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 1 + len(GRID)
    assert abs(report.scalars.V_11 - math.sqrt(3) / 2) < 1e-12
    assert abs(report.scalars.D - 0.5) < 1e-12
    assert abs(report.scalars.duality - 1.0) < 1e-12
    assert report.scalars.config_hash == "deadbeef0123"
    # Exact inputs: conditional pairs sum to 1.
    for row in report.rows:
        assert abs(row.p0s_g11 + row.p0s_g01 - 1.0) < 1e-12

import io
import math

import numpy as np
import pytest

from unruh_decoherence.entanglement import concurrence, concurrence_analytic
from unruh_decoherence.state import STANDARD_R_VALUES
from unruh_decoherence.sweep import (
    C_ZERO_TOL,
    CSV_HEADER,
    ConcurrenceRecord,
    SweepConfig,
    emit_figure,
    find_esd,
    parse_r_list,
    read_csv,
    records_to_csv,
    run_sweep,
    run_verify,
)


def c_numeric(records):
    return [rec.c_numeric for rec in records]


def test_sweep_phase_flip_single(capsys):
    recs = run_sweep(SweepConfig("phase-flip", "single", (0.0,), 3))
    assert [rec.p for rec in recs] == [0, 0.5, 1]
    np.testing.assert_allclose(c_numeric(recs), [1, 0, 1], atol=1e-12)
    assert capsys.readouterr().out.startswith(",".join(CSV_HEADER) + "\n")


def test_sweep_phase_damping_both():
    recs = run_sweep(SweepConfig("phase-damping", "both", (0.0,), 3))
    np.testing.assert_allclose(c_numeric(recs), [1, 0.5, 0], atol=1e-12)
    np.testing.assert_allclose([rec.c_analytic for rec in recs], [1, 0.5, 0], atol=1e-12)


@pytest.mark.parametrize("kind,scenario", [("bit-flip", "both"), ("depolarizing", "single"), ("phase-flip", "both")])
def test_sweep_p0_column_is_cos_r(kind, scenario):
    recs = run_sweep(SweepConfig(kind, scenario, STANDARD_R_VALUES, 2))
    for rec in recs:
        if rec.p == 0:
            assert rec.c_numeric == pytest.approx(math.cos(rec.r), abs=1e-10)


def test_sweep_order_and_bit_flip_has_no_analytic():
    cfg = SweepConfig("bit-flip", "single", (0.3, 0.1), 4)
    recs = run_sweep(cfg)
    assert [(rec.r, rec.p) for rec in recs] == [(r, p) for r in (0.3, 0.1) for p in np.linspace(0, 1, 4)]
    assert all(rec.c_analytic is None for rec in recs)
    assert records_to_csv(recs).splitlines()[1].endswith(",")


@pytest.mark.parametrize("kwargs", [
    dict(r_values=()), dict(r_values=(1.0,)), dict(p_count=1),
])
def test_sweep_config_rejects(kwargs):
    with pytest.raises(ValueError):
        SweepConfig("phase-flip", "single", **kwargs)


def test_unwritable_output_reports_path(tmp_path):
    target = tmp_path / "missing" / "out.csv"
    with pytest.raises(OSError, match="missing"):
        run_sweep(SweepConfig("phase-flip", "single", (0.0,), 2, str(target)))


def test_csv_round_trip(tmp_path):
    out = tmp_path / "s.csv"
    recs = run_sweep(SweepConfig("depolarizing", "both", STANDARD_R_VALUES, 7, str(out)))
    raw = out.read_bytes()
    assert b"\r" not in raw
    text = raw.decode("utf-8")
    parsed = read_csv(io.StringIO(text))
    assert len(parsed) == len(recs)
    assert records_to_csv(parsed) == text
    for a, b in zip(recs, parsed):
        assert b.c_numeric == float(f"{a.c_numeric:.12g}")
        assert b.p == float(f"{a.p:.12g}")


def test_record_row_format():
    rec = ConcurrenceRecord("phase-flip", "single", math.pi / 16, 0.1, 1 / 3, None)
    assert rec.as_row() == ["phase-flip", "single", "0.196349540849", "0.1", "0.333333333333", ""]


def test_read_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        read_csv(io.StringIO("a,b\n"))


def test_parse_r_list():
    assert parse_r_list("0, 0.5,inf-accel") == (0.0, 0.5, math.pi / 4)
    with pytest.raises(ValueError):
        parse_r_list("0.9")
    with pytest.raises(ValueError):
        parse_r_list(",")


@pytest.mark.parametrize("r", STANDARD_R_VALUES)
def test_esd_phase_flip_single(r):
    res = find_esd("phase-flip", "single", r)
    assert abs(res.p_star - 0.5) <= 1e-9
    assert res.bracket_width <= 1e-9


@pytest.mark.parametrize("scenario", ["single", "both"])
def test_esd_phase_damping_only_at_full_decoherence(scenario):
    for r in (0.0, math.pi / 4):
        assert find_esd("phase-damping", scenario, r).p_star == 1.0


def test_esd_depolarizing_both_earlier_for_larger_acceleration():
    p0 = find_esd("depolarizing", "both", 0).p_star
    p1 = find_esd("depolarizing", "both", math.pi / 4).p_star
    assert 0 < p1 < p0 < 1
    # at r = 0 the state is Werner with weight (1 - 4p/3)^2, dead once that weight hits 1/3
    assert p0 == pytest.approx((3 - math.sqrt(3)) / 4, abs=1e-9)


def test_esd_none_when_entanglement_survives(monkeypatch):
    import unruh_decoherence.sweep as sweep_mod

    monkeypatch.setattr(sweep_mod, "concurrence", lambda *a: 0.5)
    assert find_esd("phase-flip", "single", 0).p_star is None


def test_esd_consistent_with_sweep():
    for kind, scenario in [("depolarizing", "both"), ("bit-flip", "both"), ("depolarizing", "single")]:
        res = find_esd(kind, scenario, math.pi / 8, 1e-9)
        recs = run_sweep(SweepConfig(kind, scenario, (math.pi / 8,), 101, None))
        assert all(rec.c_numeric > C_ZERO_TOL for rec in recs if rec.p < res.p_star - 1e-9)
        assert concurrence(kind, scenario, math.pi / 8, res.p_star) <= C_ZERO_TOL
        assert concurrence(kind, scenario, math.pi / 8, res.p_star - 1e-9) > 0


def test_esd_rejects_bad_tol():
    with pytest.raises(ValueError):
        find_esd("phase-flip", "single", 0, tol=0)


def test_verify_endpoints_only():
    report = run_verify(2)
    assert report.ok and report.exit_code == 0
    assert all(o.result.n_points == 4 for o in report.outcomes)


def test_verify_detects_corrupted_formula():
    def corrupted(case, r, p):
        if case.kind.value == "phase-flip" and case.scenario.value == "both":
            # sign flipped inside (1 + 2(-1 + p)p)
            return max(0.0, (1 - 2 * (-1 + p) * p) * math.cos(r) - 2 * abs(-1 + p) * p * math.cos(r))
        return concurrence_analytic(case, r, p)

    report = run_verify(11, analytic=corrupted)
    assert report.exit_code == 1
    bad = [o for o in report.outcomes if o.status == "fail"]
    assert any(str(o.result.case) == "phase-flip/both" for o in bad)
    line = next(ln for ln in report.lines() if ln.startswith("phase-flip/both"))
    assert "FAIL" in line and "at r=" in line and "p=" in line


def test_verify_flags_depolarizing_both_discrepancy():
    def off(case, r, p):
        bump = 1e-6 if str(case) == "depolarizing/both" else 0
        return concurrence_analytic(case, r, p) + bump

    report = run_verify(3, analytic=off)
    outcome = next(o for o in report.outcomes if str(o.result.case) == "depolarizing/both")
    assert outcome.status == "discrepancy" and outcome.ok
    assert any("ground truth" in ln for ln in report.lines())


@pytest.mark.parametrize("fig", [7, 1])
def test_emit_figure_rejects(fig):
    with pytest.raises(ValueError):
        emit_figure(fig)


def test_emit_figure_default_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    recs = emit_figure(4)
    assert (tmp_path / "figure4.csv").exists()
    assert len(recs) == 5 * 101
    for rec in recs:
        assert rec.c_numeric == pytest.approx((1 - 2 * rec.p) ** 2 * math.cos(rec.r), abs=1e-10)

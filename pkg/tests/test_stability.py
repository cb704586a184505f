from dataclasses import replace

import pytest

from symstab.spaces import rescale
from symstab.stability import (
    Verdict,
    classify,
    coefficients,
    computed_weyl_bound,
    hessian_value,
    q_form,
    resolve_p,
    saddle_witness,
)


def sphere_coeffs(n, p):
    return coefficients(n, p, n * (n - 1), 2 * n * (n - 1))


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("p", [2.0, "half", 5.0])
def test_sphere_first_eigenvalue_is_degenerate(n, p):
    p = n / 2 if p == "half" else p
    co = sphere_coeffs(n, p)
    assert abs(q_form(co, n)) <= 1e-12 * co.a * n * n


def test_s3_closed_forms():
    co = sphere_coeffs(3, 1.5)
    assert (co.a, co.b, co.c) == pytest.approx((4 / 3, 4.0, 0.0))
    assert q_form(co, 8) == pytest.approx(160 / 3)
    assert hessian_value(co, 8, 1.0) == pytest.approx(1.5 * 12 ** -0.25 * 160 / 3)


def test_c_is_exactly_zero_at_half_dimension():
    assert coefficients(14, 7.0, 7.0, 7 / 3).c == 0.0
    assert coefficients(14, 8.0, 7.0, 7 / 3).c == pytest.approx(7 / 3)


def test_small_p_is_flagged_not_rejected():
    assert coefficients(3, 1.5, 6, 12).p_flagged
    assert not coefficients(5, 2.5, 20, 40).p_flagged


def test_resolve_p():
    assert resolve_p("half-dim", 8) == 4.0
    assert resolve_p("half-dim+1", 5) == 3.5
    assert resolve_p(3, 8) == 3.0


def test_su3_value_is_positive(models):
    # a = 8, b = 3 at p = 4 with s = 2, |R|^2 = 1/2; Q(4/9) = 20/81
    rep = classify(models["SU(3)"], "half-dim")
    assert (rep.coeffs.a, rep.coeffs.b) == pytest.approx((8.0, 3.0))
    assert rep.q_lambda1 == pytest.approx(20 / 81, rel=1e-12)
    assert rep.verdict is Verdict.STABLE


@pytest.mark.parametrize("space", ["Sp(3)", "SU(6)/Sp(3)", "E6/F4", "F4/Spin(9)"])
def test_unstable_entries_have_saddle_witness(models, space):
    rep = classify(models[space], "half-dim")
    assert rep.verdict is Verdict.UNSTABLE
    assert rep.q_lambda1 < 0
    neg, pos = rep.saddle_witness
    assert neg is not None and pos is not None and neg < pos


def test_e6f4_numbers(models):
    rep = classify(models["E6/F4"], "half-dim")
    assert rep.lambda1_over_s == pytest.approx(1 / 18, rel=1e-12)
    assert rep.weyl_ratio == pytest.approx(52, rel=1e-12)


@pytest.mark.parametrize("space", ["S3", "S6", "SU(4)/Sp(2)"])
def test_degenerate_spheres(models, space):
    assert classify(models[space], "half-dim").verdict is Verdict.DEGENERATE


@pytest.mark.parametrize("p", ["half-dim", "half-dim+1"])
@pytest.mark.parametrize("space", ["H3", "H4", "H5"])
def test_hyperbolic_entries_are_stable(models, space, p):
    rep = classify(models[space], p)
    assert rep.verdict is Verdict.STABLE
    assert all(q_form(rep.coeffs, lam) > 0 for lam in rep.spectrum)


def test_hyperbolic_below_half_dimension_is_inconclusive(models):
    assert classify(models["H5"], 2.0).verdict is Verdict.INCONCLUSIVE


def test_small_p_off_half_dimension_is_inconclusive(models):
    assert classify(models["S4"], 1.5).verdict is Verdict.INCONCLUSIVE


def test_sphere_stays_degenerate_above_half_dimension(models):
    # conformal vector fields keep Q(lambda1) = 0 for every p
    rep = classify(models["S5"], "half-dim+1")
    assert rep.coeffs.c > 0
    assert rep.verdict is Verdict.DEGENERATE


@pytest.mark.parametrize("c", [0.25, 1.0, 9.0])
def test_verdict_is_scale_invariant(models, c):
    for m in models.values():
        assert classify(rescale(m, c), "half-dim").verdict == classify(m, "half-dim").verdict


def test_negative_value_beyond_lambda1_is_detected():
    # c > 0 with both roots of Q above lambda1: only the wider sample sees Q < 0
    co = coefficients(8, 5.0, 2.0, 0.25)
    lo, hi = co.roots()
    assert saddle_witness(co, [lo / 2, (lo + hi) / 2, 2 * hi]) == ((lo + hi) / 2, lo / 2)


def test_saddle_witness_empty_spectrum():
    with pytest.raises(ValueError):
        saddle_witness(sphere_coeffs(3, 1.5), [])


def test_weyl_ratios_below_computed_bound(models):
    for m in models.values():
        if m.s > 0 and not m.is_constant_curvature:
            assert m.weyl_ratio < computed_weyl_bound(m.n)


def test_report_flags_printed_bound(models):
    d = classify(models["SU(3)"], "half-dim").as_dict()
    assert d["weyl_check"]["below_computed_bound"] is True
    assert d["weyl_check"]["below_printed_bound"] is False

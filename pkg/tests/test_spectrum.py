from dataclasses import replace

import pytest

from symstab.roots import NonDominantWeightError, casimir, root_system
from symstab.spaces import rescale
from symstab.spectrum import MissingSpectralData, SphericalWeights, lambda1, spectrum_sample


@pytest.mark.parametrize("label, positives", [("A2", 3), ("A5", 15), ("B3", 9), ("C3", 9), ("D4", 12),
                                              ("F4", 24), ("E6", 36)])
def test_root_counts(label, positives):
    assert len(root_system(label).positive) == positives


@pytest.mark.parametrize("label, weight, value", [
    ("A2", (1, 0), 4 / 9),
    ("A2", (1, 1), 1.0),
    ("A2", (2, 0), 10 / 9),
    ("A3", (0, 1, 0), 5 / 8),
    ("C2", (1, 0), 5 / 12),
    ("C2", (0, 1), 2 / 3),
    ("C3", (0, 1, 0), 3 / 4),
    ("A5", (0, 1, 0, 0, 0), 7 / 9),
    ("E6", (1, 0, 0, 0, 0, 0), 13 / 18),
    ("F4", (0, 0, 0, 1), 2 / 3),
    ("B3", (1, 0, 0), 3 / 5),
])
def test_casimir_values(label, weight, value):
    assert casimir(weight, label) == pytest.approx(value, rel=1e-12)


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "D4", "F4", "E6"])
def test_adjoint_casimir_is_one(label):
    rs = root_system(label)
    theta = rs.highest_root()
    assert rs.ip(theta, theta + 2 * rs.rho) == pytest.approx(1.0, rel=1e-12)


def test_casimir_rejects_bad_weights():
    with pytest.raises(NonDominantWeightError):
        casimir((-1, 0), "A2")
    with pytest.raises(ValueError):
        casimir((1, 0, 0), "A2")


def test_spherical_weights_validation():
    with pytest.raises(ValueError):
        SphericalWeights("A2", ((0, 0),))
    with pytest.raises(ValueError):
        SphericalWeights("A2", ((1, 0, 0),))


def test_su3_spectrum(models):
    assert spectrum_sample(models["SU(3)"], 3) == pytest.approx([4 / 9, 1.0, 10 / 9], rel=1e-12)


def test_spectrum_is_strictly_increasing(models):
    for m in models.values():
        if m.s > 0 and (m.spectral is not None or m.source == "ConstantCurvature"):
            vals = spectrum_sample(m, 10)
            assert len(vals) == 10
            assert all(a < b for a, b in zip(vals, vals[1:]))


def test_sphere_spectrum(models):
    assert spectrum_sample(models["S4"], 4) == [4.0, 10.0, 18.0, 28.0]


def test_quaternionic_plane_first_eigenvalue(models):
    # HP^2 normalized to s = 128 has lambda1 = 24
    lam = lambda1(models["Sp(3)/Sp(2)xSp(1)"])
    assert lam.over_s == pytest.approx(24 / 128, rel=1e-12)


def test_round_sphere_quotients_match_sphere_ratio(models):
    assert lambda1(models["SU(4)/Sp(2)"]).over_s == pytest.approx(1 / 4, rel=1e-12)
    assert lambda1(models["Sp(2)/Sp(1)xSp(1)"]).over_s == pytest.approx(1 / 3, rel=1e-12)


def test_rescaled_spectrum_scales_inversely(models):
    m = models["SU(6)/Sp(3)"]
    assert spectrum_sample(rescale(m, 4.0), 5) == pytest.approx([v / 4 for v in spectrum_sample(m, 5)])


def test_missing_spectral_data(models):
    with pytest.raises(MissingSpectralData):
        lambda1(models["H3"])
    with pytest.raises(MissingSpectralData):
        spectrum_sample(replace(models["SU(3)"], spectral=None), 3)


def test_count_validation(models):
    with pytest.raises(ValueError):
        spectrum_sample(models["S3"], 0)

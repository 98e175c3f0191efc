import math
import random

import pytest
import scipy.special

from casimir.channel_energy import (EquilibriumKind, dilog, energy,
                                    energy_curve, find_equilibria, force,
                                    short_distance_coefficient)
from casimir.dispersion import ChannelSet
from casimir.scattering import ConstantScaledCoupling, Mirror

DIRICHLET_CS = ChannelSet.from_masses([0.0])
DIRICHLET_A = Mirror(0.0, (1.0,))
DIRICHLET_B = Mirror(1.0, (1.0,))
TWO_CHANNEL = ChannelSet.from_masses([1.0, 5.0])
TWO_A = Mirror(0.0, (1.0, 5.0))
TWO_B = Mirror(1.0, (1.0, -5.0))


def _tuned():
    cs = ChannelSet.from_masses([0.0, 1.0])
    A = Mirror(0.0, ConstantScaledCoupling((1.0, 1.0), cs))
    B = Mirror(1.0, ConstantScaledCoupling((1.0, -1.0), cs))
    return A, B, cs


def test_energy_closed_form():
    E, err = energy(DIRICHLET_A, DIRICHLET_B, DIRICHLET_CS, 1.0)
    assert E == pytest.approx(-math.pi / 24.0, rel=1e-9)
    assert err < 1e-9


def test_energy_orthogonal_couplings_zero():
    cs = ChannelSet.from_masses([0.0, 2.0])
    A = Mirror(0.0, (1.0, 0.0))
    B = Mirror(1.0, (0.0, 1.0))
    for x in (0.2, 1.0, 4.0):
        assert energy(A, B, cs, x)[0] == 0.0
        assert force(A, B, cs, x)[0] == 0.0


def test_force_closed_form():
    F, _ = force(DIRICHLET_A, DIRICHLET_B, DIRICHLET_CS, 1.0)
    assert F == pytest.approx(-math.pi / 24.0, rel=1e-9)
    # E = -pi/(24 x) means F = -pi/(24 x^2)
    F2, _ = force(DIRICHLET_A, DIRICHLET_B, DIRICHLET_CS, 2.0)
    assert F2 == pytest.approx(-math.pi / 96.0, rel=1e-9)


def test_curve_dirichlet_scale_invariant():
    grid = [0.5, 0.8, 1.3, 2.1]
    curve = energy_curve(DIRICHLET_A, DIRICHLET_B, DIRICHLET_CS, grid)
    for s in curve.samples:
        assert s.x * s.energy == pytest.approx(-math.pi / 24.0, rel=1e-8)
        assert s.flag == ""


def test_curve_two_channel_interior_minimum():
    grid = [0.02 * (5.0 / 0.02) ** (i / 29) for i in range(30)]
    curve = energy_curve(TWO_A, TWO_B, TWO_CHANNEL, grid)
    energies = [s.energy for s in curve.samples]
    assert all(e <= 0 for e in energies)
    # non-monotonic: rising out of the short-distance well, dipping through
    # the repulsive window, rising again towards zero
    diffs = [b - a for a, b in zip(energies, energies[1:])]
    signs = [d > 0 for d in diffs]
    flips = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    assert flips == 2
    # decays towards zero from below at the far end
    assert -1e-3 < energies[-1] < 0


def test_curve_grid_must_increase():
    with pytest.raises(ValueError):
        energy_curve(DIRICHLET_A, DIRICHLET_B, DIRICHLET_CS, [1.0, 1.0])


def test_curve_fails_only_when_every_sample_does():
    from casimir.errors import QuadratureConvergenceError
    from casimir.quadrature import QuadratureSpec
    impossible = QuadratureSpec(rel_tol=1e-15, abs_tol=1e-300,
                                max_refinement_level=3)
    with pytest.raises(QuadratureConvergenceError):
        energy_curve(DIRICHLET_A, DIRICHLET_B, DIRICHLET_CS, [0.5, 1.0],
                     impossible)


def test_find_equilibria_none_for_pure_attraction():
    report = find_equilibria(DIRICHLET_A, DIRICHLET_B, DIRICHLET_CS,
                             (0.1, 5.0, 12))
    assert report.zeros == ()
    cs = ChannelSet.from_masses([0.0, 2.0])
    report = find_equilibria(Mirror(0.0, (1.0, 0.0)), Mirror(1.0, (0.0, 1.0)),
                             cs, (0.1, 5.0, 12))
    assert report.zeros == ()


def test_find_equilibria_two_channel_structure():
    report = find_equilibria(TWO_A, TWO_B, TWO_CHANNEL, (0.02, 5.0, 40))
    assert len(report.zeros) == 2
    first, second = report.zeros
    assert first.kind is EquilibriumKind.UNSTABLE_MAXIMUM
    assert second.kind is EquilibriumKind.STABLE_MINIMUM
    assert first.x == pytest.approx(0.6434921208102251, rel=1e-4)
    assert second.x == pytest.approx(0.8276761510120865, rel=1e-4)


def test_find_equilibria_validation():
    with pytest.raises(ValueError):
        find_equilibria(TWO_A, TWO_B, TWO_CHANNEL, (0.0, 5.0, 12))
    with pytest.raises(ValueError):
        find_equilibria(TWO_A, TWO_B, TWO_CHANNEL, (0.1, 5.0, 7))


def test_dilog_special_values():
    assert dilog(0.0) == 0.0
    assert dilog(1.0) == pytest.approx(math.pi ** 2 / 6.0, abs=1e-14)
    assert dilog(0.5) == pytest.approx(
        math.pi ** 2 / 12.0 - math.log(2.0) ** 2 / 2.0, abs=1e-14)
    assert dilog(-1.0) == pytest.approx(-math.pi ** 2 / 12.0, abs=1e-14)
    with pytest.raises(ValueError):
        dilog(1.0 + 1e-12)
    with pytest.raises(ValueError):
        dilog(-1.5)


def test_dilog_against_scipy():
    rng = random.Random(9)
    for _ in range(200):
        z = rng.uniform(-1.0, 1.0)
        assert dilog(z) == pytest.approx(
            float(scipy.special.spence(1.0 - z)), abs=1e-14)


def test_short_distance_coefficient():
    assert short_distance_coefficient(DIRICHLET_A, DIRICHLET_B) == pytest.approx(
        -math.pi / 24.0, rel=1e-13)
    A = Mirror(0.0, (1.0, 0.0))
    B = Mirror(1.0, (0.0, 1.0))
    assert short_distance_coefficient(A, B) == 0.0
    expected = -dilog(576.0 / 676.0) / (4.0 * math.pi)
    assert short_distance_coefficient(TWO_A, TWO_B) == pytest.approx(
        expected, rel=1e-13)
    with pytest.raises(ValueError):
        A2, B2, _ = _tuned()
        short_distance_coefficient(A2, B2)


def test_short_distance_asymptote_trend():
    coeff = short_distance_coefficient(TWO_A, TWO_B)
    devs = []
    for x in (4e-3, 2e-3, 1e-3):
        E, _ = energy(TWO_A, TWO_B, TWO_CHANNEL, x)
        devs.append(abs(x * E / coeff - 1.0))
    assert devs[-1] < 0.02
    assert devs[0] > devs[1] > devs[2]


def test_short_distance_asymptote_random_configs():
    # x*E at x = 1e-3 lands within 2% of the dilog coefficient for any
    # frequency-independent couplings (lightest mass normalized to 1);
    # near-orthogonal draws are skipped to keep the coefficient finite
    rng = random.Random(77)
    for _ in range(8):
        n = rng.randint(2, 4)
        masses = [1.0] + [rng.uniform(0.0, 4.0) for _ in range(n - 1)]
        cs = ChannelSet.from_masses(masses)
        while True:
            a = [rng.gauss(0, 1) for _ in range(n)]
            b = [rng.gauss(0, 1) for _ in range(n)]
            dot2 = math.fsum(u * v for u, v in zip(a, b)) ** 2
            na2 = math.fsum(u * u for u in a)
            nb2 = math.fsum(v * v for v in b)
            if dot2 > 0.05 * na2 * nb2:
                break
        A, B = Mirror(0.0, a), Mirror(1.0, b)
        coeff = short_distance_coefficient(A, B)
        E, _ = energy(A, B, cs, 1e-3)
        assert abs(1e-3 * E / coeff - 1.0) < 0.02


def test_energy_decay_rate_set_by_lightest_mass():
    # |E| ~ e^{-2 m_min x} for all-massive channels: successive ratios of
    # the tail approach the expected decay factor
    xs = [3.0, 3.5, 4.0]
    es = [abs(energy(TWO_A, TWO_B, TWO_CHANNEL, x)[0]) for x in xs]
    for e_lo, e_hi in zip(es, es[1:]):
        ratio = e_hi / e_lo
        assert ratio < math.exp(-2.0 * 1.0 * 0.5) * 1.6
        assert ratio > math.exp(-2.0 * 1.0 * 0.5) * 0.4


def test_equal_mass_attraction_sample():
    rng = random.Random(41)
    for _ in range(10):
        n = rng.randint(1, 4)
        mass = rng.uniform(0.0, 2.0)
        cs = ChannelSet.from_masses([mass] * n)
        lam_a = math.inf if rng.random() < 0.5 else rng.uniform(0.1, 100.0)
        lam_b = math.inf if rng.random() < 0.5 else rng.uniform(0.1, 100.0)
        A = Mirror(0.0, [rng.gauss(0, 1) + 0.2 for _ in range(n)], lam_a)
        B = Mirror(1.0, [rng.gauss(0, 1) + 0.2 for _ in range(n)], lam_b)
        for x in (0.1, 1.0, 6.0):
            assert force(A, B, cs, x)[0] < 0.0


def test_tuned_scenario_repulsive_at_short_distance():
    A, B, cs = _tuned()
    assert force(A, B, cs, 0.05)[0] > 0.0
    assert force(A, B, cs, 0.5)[0] > 0.0
    assert force(A, B, cs, 5.0)[0] < 0.0
    report = find_equilibria(A, B, cs, (0.02, 8.0, 40))
    assert len(report.zeros) == 1
    assert report.zeros[0].kind is EquilibriumKind.STABLE_MINIMUM
    assert report.zeros[0].x == pytest.approx(1.9889505286242488, rel=1e-4)

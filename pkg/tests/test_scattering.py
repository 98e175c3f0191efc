import math
import random

import numpy as np
import pytest

from casimir.dispersion import ChannelSet, Dispersion
from casimir.errors import DegenerateCouplingError
from casimir.scattering import (ConstantScaledCoupling, Mirror,
                                pair_determinant, pair_determinant_dx,
                                product_eigenvalues, reflection_matrix,
                                scale_coupling)

TWO_CHANNEL = ChannelSet.from_masses([1.0, 5.0])
MIRROR_A = Mirror(0.0, (1.0, 5.0))
MIRROR_B = Mirror(1.0, (1.0, -5.0))


def _dense_determinant(A, B, cs, w, x):
    rA = reflection_matrix(A, cs, w)
    rB = reflection_matrix(B, cs, w)
    P = np.diag([math.exp(-c.k(w) * x) for c in cs.channels])
    return float(np.linalg.det(np.eye(cs.n) - rA @ P @ rB @ P))


def test_scale_coupling_examples():
    cs = ChannelSet.from_masses([0.0, 0.0])
    sc = scale_coupling(Mirror(0.0, (1.0, 0.0)), cs, 2.0)
    assert sc.components == (1.0, 0.0)
    assert sc.norm2 == 1.0

    sc = scale_coupling(MIRROR_A, TWO_CHANNEL, 1.0)
    assert sc.components[0] == pytest.approx(2.0 ** -0.25, rel=1e-14)
    assert sc.components[1] == pytest.approx(5.0 * 26.0 ** -0.25, rel=1e-14)

    custom = ChannelSet((Dispersion.custom(lambda w: w, lambda w: 1.0),))
    sc = scale_coupling(Mirror(0.0, (3.0,)), custom, 0.7)
    assert sc.components == (3.0,)


def test_reflection_matrix_examples():
    cs1 = ChannelSet.from_masses([0.0])
    r = reflection_matrix(Mirror(0.0, (1.0,)), cs1, 0.4)
    assert r == pytest.approx(np.array([[-1.0]]))

    cs2 = ChannelSet.from_masses([0.0, 0.0])
    r = reflection_matrix(Mirror(0.0, (1.0, 0.0)), cs2, 1.0)
    assert r == pytest.approx(np.array([[-1.0, 0.0], [0.0, 0.0]]))

    r = reflection_matrix(Mirror(0.0, (1.0,), strength=2.0), cs1, 1.0)
    assert r == pytest.approx(np.array([[-0.5]]))


def test_reflection_negative_semidefinite():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 4)
        cs = ChannelSet.from_masses([rng.uniform(0, 4) for _ in range(n)])
        lam = math.inf if rng.random() < 0.4 else rng.uniform(0.1, 80.0)
        m = Mirror(0.0, [rng.gauss(0, 1) + 0.1 for _ in range(n)], lam)
        w = math.exp(rng.uniform(-3, 2))
        eigs = np.linalg.eigvalsh(reflection_matrix(m, cs, w))
        assert eigs.max() <= 1e-12
        assert eigs.min() >= -1.0 - 1e-12


def test_degenerate_hard_coupling_raises():
    cs = ChannelSet.from_masses([0.0])
    dead = Mirror(0.0, lambda w: (0.0,), strength=math.inf)
    with pytest.raises(DegenerateCouplingError):
        reflection_matrix(dead, cs, 1.0)
    with pytest.raises(DegenerateCouplingError):
        pair_determinant(dead, Mirror(1.0, (1.0,)), cs, 1.0, 1.0)


def test_soft_mirror_with_vanishing_coupling_decouples():
    cs = ChannelSet.from_masses([0.0])
    dead = Mirror(0.0, lambda w: (0.0,), strength=5.0)
    live = Mirror(1.0, (1.0,), strength=5.0)
    dv = pair_determinant(dead, live, cs, 1.0, 1.0)
    assert dv.value == 1.0 and dv.log_value == 0.0
    assert pair_determinant_dx(dead, live, cs, 1.0, 1.0) == 0.0


def test_pair_determinant_orthogonal_channels():
    cs = ChannelSet.from_masses([0.3, 2.0])
    A = Mirror(0.0, (1.0, 0.0))
    B = Mirror(1.0, (0.0, 1.0))
    dv = pair_determinant(A, B, cs, 0.8, 2.0)
    assert dv.value == 1.0
    assert dv.log_value == 0.0


def test_pair_determinant_single_channel_closed_form():
    cs = ChannelSet.from_masses([0.0])
    A = Mirror(0.0, (1.0,))
    B = Mirror(1.0, (1.0,))
    for w, x in [(0.7, 1.3), (2.0, 0.2), (1e-8, 1.0)]:
        dv = pair_determinant(A, B, cs, w, x)
        assert dv.value == pytest.approx(-math.expm1(-2 * w * x), rel=1e-14)


def test_pair_determinant_matches_dense_matrix_benchmark():
    dv = pair_determinant(MIRROR_A, MIRROR_B, TWO_CHANNEL, 1.0, 0.5)
    dense = _dense_determinant(MIRROR_A, MIRROR_B, TWO_CHANNEL, 1.0, 0.5)
    assert dv.value == pytest.approx(dense, rel=1e-14)


def test_pair_determinant_matches_dense_matrix_randomized():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randint(1, 4)
        cs = ChannelSet.from_masses([rng.uniform(0, 4) for _ in range(n)])
        lam_a = math.inf if rng.random() < 0.3 else rng.uniform(0.2, 60.0)
        lam_b = math.inf if rng.random() < 0.3 else rng.uniform(0.2, 60.0)
        A = Mirror(0.0, [rng.gauss(0, 1) + 0.2 for _ in range(n)], lam_a)
        B = Mirror(1.0, [rng.gauss(0, 1) + 0.2 for _ in range(n)], lam_b)
        w = math.exp(rng.uniform(-3, 2))
        x = math.exp(rng.uniform(-2.5, 1.5))
        dv = pair_determinant(A, B, cs, w, x)
        assert 0.0 < dv.value <= 1.0
        assert dv.log_value <= 0.0
        dense = _dense_determinant(A, B, cs, w, x)
        assert dv.value == pytest.approx(dense, rel=1e-13)


def test_derivative_single_channel_closed_form():
    cs = ChannelSet.from_masses([0.0])
    A = Mirror(0.0, (1.0,))
    B = Mirror(1.0, (1.0,))
    w, x = 0.9, 0.6
    expected = 2 * w * math.exp(-2 * w * x) / -math.expm1(-2 * w * x)
    assert pair_determinant_dx(A, B, cs, w, x) == pytest.approx(expected, rel=1e-13)
    # orthogonal couplings: identically zero
    cs2 = ChannelSet.from_masses([0.0, 1.0])
    assert pair_determinant_dx(Mirror(0.0, (1.0, 0.0)), Mirror(1.0, (0.0, 1.0)),
                               cs2, 1.0, 1.0) == 0.0


def test_derivative_matches_finite_differences():
    w, x, h = 1.0, 0.5, 1e-6
    an = pair_determinant_dx(MIRROR_A, MIRROR_B, TWO_CHANNEL, w, x)
    up = pair_determinant(MIRROR_A, MIRROR_B, TWO_CHANNEL, w, x + h).log_value
    dn = pair_determinant(MIRROR_A, MIRROR_B, TWO_CHANNEL, w, x - h).log_value
    assert an == pytest.approx((up - dn) / (2 * h), rel=1e-7)

    rng = random.Random(23)
    for _ in range(25):
        n = rng.randint(1, 3)
        cs = ChannelSet.from_masses([rng.uniform(0, 3) for _ in range(n)])
        A = Mirror(0.0, [rng.gauss(0, 1) + 0.2 for _ in range(n)],
                   rng.uniform(0.5, 50.0))
        B = Mirror(1.0, [rng.gauss(0, 1) + 0.2 for _ in range(n)])
        w = math.exp(rng.uniform(-2, 1.5))
        x = math.exp(rng.uniform(-1.5, 1.0))
        an = pair_determinant_dx(A, B, cs, w, x)
        up = pair_determinant(A, B, cs, w, x + h).log_value
        dn = pair_determinant(A, B, cs, w, x - h).log_value
        fd = (up - dn) / (2 * h)
        assert an == pytest.approx(fd, rel=1e-6, abs=1e-12)


def test_product_eigenvalues_perfect_and_orthogonal():
    cs1 = ChannelSet.from_masses([0.0])
    vals = product_eigenvalues(Mirror(0.0, (1.0,)), Mirror(1.0, (1.0,)), cs1, 1.0)
    assert vals == [1.0]
    cs2 = ChannelSet.from_masses([0.0, 0.0])
    vals = product_eigenvalues(Mirror(0.0, (1.0, 0.0)), Mirror(1.0, (0.0, 1.0)),
                               cs2, 2.0)
    assert vals == [0.0, 0.0]


def test_product_eigenvalues_bounded():
    rng = random.Random(31)
    for _ in range(200):
        n = rng.randint(1, 4)
        cs = ChannelSet.from_masses([rng.uniform(0, 4) for _ in range(n)])
        A = Mirror(0.0, [rng.gauss(0, 1) + 0.1 for _ in range(n)],
                   rng.uniform(0.1, 100.0))
        B = Mirror(1.0, [rng.gauss(0, 1) + 0.1 for _ in range(n)],
                   rng.uniform(0.1, 100.0))
        vals = product_eigenvalues(A, B, cs, math.exp(rng.uniform(-3, 2)))
        assert len(vals) == n
        assert all(0.0 <= v < 1.0 for v in vals)
        assert sum(1 for v in vals if v > 1e-13) <= 1


def test_constant_scaled_coupling_is_constant():
    cs = ChannelSet.from_masses([0.0, 1.0])
    m = Mirror(0.0, ConstantScaledCoupling((1.0, -1.0), cs))
    for w in (1e-6, 0.1, 1.0, 50.0):
        sc = scale_coupling(m, cs, w)
        assert sc.components[0] == pytest.approx(1.0, rel=1e-12)
        assert sc.components[1] == pytest.approx(-1.0, rel=1e-12)


def test_mirror_validation():
    with pytest.raises(ValueError):
        Mirror(0.0, (0.0, 0.0))
    with pytest.raises(ValueError):
        Mirror(0.0, (1.0,), strength=0.0)
    with pytest.raises(ValueError):
        Mirror(0.0, (1.0,), strength=-2.0)
    with pytest.raises(ValueError):
        pair_determinant(MIRROR_A, MIRROR_B, TWO_CHANNEL, 1.0, 0.0)

import pytest
import scipy.special

from casimir.errors import EmptyChannelSetError
from casimir.waveguide import (WaveguideSpec, bessel_zero, channel_modes,
                               channelize, _jm, _jm_prime)


def _bisect_root(f, lo, hi, tol=1e-13):
    f_lo = f(lo)
    assert f_lo * f(hi) < 0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if hi - lo < tol:
            return mid
        if (f(mid) < 0) == (f_lo < 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_first_roots_against_independent_bisection():
    # plain bisection on scipy's evaluator, sharing nothing with the module
    z01 = _bisect_root(scipy.special.j0, 2.0, 3.0)
    z11 = _bisect_root(scipy.special.j1, 3.0, 4.5)
    assert abs(bessel_zero(0, 1, "J") - z01) < 1e-10
    assert abs(bessel_zero(1, 1, "J") - z11) < 1e-10
    assert bessel_zero(0, 1, "J") == pytest.approx(2.404825557696, abs=1e-10)
    assert bessel_zero(1, 1, "J") == pytest.approx(3.831705970208, abs=1e-10)


def test_roots_match_scipy_tables():
    for m in range(0, 9):
        zj = scipy.special.jn_zeros(m, 4)
        zjp = scipy.special.jnp_zeros(m, 4)
        for k in range(1, 5):
            assert abs(bessel_zero(m, k, "J") - zj[k - 1]) < 1e-10
            assert abs(bessel_zero(m, k, "J_prime") - zjp[k - 1]) < 1e-10


def test_residuals_certified():
    for m in range(0, 9):
        for k in range(1, 5):
            r = bessel_zero(m, k, "J")
            assert abs(_jm(m, r)) <= 1e-11
            rp = bessel_zero(m, k, "J_prime")
            assert abs(_jm_prime(m, rp)) <= 1e-11


def test_interlacing():
    z01 = bessel_zero(0, 1, "J")
    z11 = bessel_zero(1, 1, "J")
    z02 = bessel_zero(0, 2, "J")
    assert z01 < z11 < z02


def test_index_validation():
    with pytest.raises(ValueError):
        bessel_zero(-1, 1, "J")
    with pytest.raises(ValueError):
        bessel_zero(0, 0, "J")
    with pytest.raises(ValueError):
        bessel_zero(0, 1, "Y")


def test_channelize_single_mode():
    cs = channelize(WaveguideSpec(radius=1.0, max_mass=3.0,
                                  polarization="TM", angular_orders=0))
    assert cs.n == 1
    assert cs.masses[0] == pytest.approx(2.404825557696, abs=1e-10)


def test_channelize_radius_scaling_exact():
    spec1 = WaveguideSpec(radius=1.0, max_mass=8.0, polarization="both",
                          angular_orders=5)
    spec2 = WaveguideSpec(radius=2.0, max_mass=4.0, polarization="both",
                          angular_orders=5)
    m1 = channelize(spec1).masses
    m2 = channelize(spec2).masses
    assert len(m1) == len(m2)
    for a, b in zip(m1, m2):
        assert b == a / 2.0


def test_channelize_degeneracy():
    modes = channel_modes(WaveguideSpec(radius=1.0, max_mass=4.0,
                                        polarization="TE", angular_orders=3))
    for md in modes:
        assert md.degeneracy == (2 if md.m >= 1 else 1)
    cs = channelize(WaveguideSpec(radius=1.0, max_mass=4.0,
                                  polarization="TE", angular_orders=3))
    assert cs.n == sum(md.degeneracy for md in modes)


def test_channel_count_monotone():
    def count(max_mass, radius=1.0):
        try:
            return channelize(WaveguideSpec(radius=radius, max_mass=max_mass,
                                            polarization="both",
                                            angular_orders=6)).n
        except EmptyChannelSetError:
            return 0

    counts = [count(mm) for mm in (1.0, 2.0, 4.0, 6.0, 8.0)]
    assert counts == sorted(counts)
    assert count(6.0, radius=1.5) >= count(6.0, radius=1.0)


def test_te_order_one_survives_low_cutoff():
    # the first nontrivial root of J_0' (3.83) exceeds the one of J_1'
    # (1.84), so a cutoff between them must still admit the m=1 mode
    cs = channelize(WaveguideSpec(radius=1.0, max_mass=2.0,
                                  polarization="TE", angular_orders=4))
    assert cs.n == 2
    assert cs.masses[0] == pytest.approx(1.8411837813406593, abs=1e-10)


def test_empty_cutoff_raises():
    with pytest.raises(EmptyChannelSetError):
        channelize(WaveguideSpec(radius=1.0, max_mass=1.0,
                                 polarization="TM", angular_orders=4))


def test_channelized_masses_feed_the_energy_pipeline():
    from casimir.channel_energy import force
    from casimir.scattering import Mirror

    cs = channelize(WaveguideSpec(radius=1.0, max_mass=3.9,
                                  polarization="both", angular_orders=2))
    uniform = (1.0,) * cs.n
    A = Mirror(0.0, uniform)
    B = Mirror(1.0, uniform)
    # equal couplings to every channel: attraction at any separation
    for x in (0.3, 1.0, 3.0):
        assert force(A, B, cs, x)[0] < 0.0


def test_spec_validation():
    with pytest.raises(ValueError):
        WaveguideSpec(radius=0.0, max_mass=1.0)
    with pytest.raises(ValueError):
        WaveguideSpec(radius=1.0, max_mass=-1.0)
    with pytest.raises(ValueError):
        WaveguideSpec(radius=1.0, max_mass=1.0, polarization="TEM")

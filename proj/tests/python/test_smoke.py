import math

import pytest

import sshlab


def test_clean_invariant_three_ways():
    for u, w, expected in [(1.0, 0.5, 0), (0.5, 1.0, 1), (-0.7, 1.2, 1)]:
        couplings = [u] * 12
        assert sshlab.winding_integral(couplings, w)[0] == expected
        assert sshlab.winding_integral(couplings, w, route="lu")[0] == expected
        assert sshlab.winding_closed_form(couplings, u, w) == expected
        assert sshlab.zak_phase_clean(u, w) == expected


def test_sampling_is_reproducible():
    a = sshlab.sample_couplings(50, 1.0, 0.4, seed=7, index=3)
    b = sshlab.sample_couplings(50, 1.0, 0.4, seed=7, index=3)
    assert a == b
    half = math.sqrt(3.0) * 0.4
    assert all(1.0 - half <= x <= 1.0 + half for x in a)


def test_spectrum_chiral_and_gap():
    couplings = sshlab.sample_couplings(40, 1.0, 0.5, seed=1)
    values, gap = sshlab.eigenvalues(couplings, 0.8, bc="periodic")
    assert len(values) == 80
    for lo, hi in zip(values, reversed(values)):
        assert lo == pytest.approx(-hi, abs=1e-12)
    assert gap == pytest.approx(2 * min(abs(x) for x in values))


def test_analytic_mean_nu():
    assert sshlab.z1(0.01) == pytest.approx(-0.01**2 / 2, rel=1e-3)
    w0 = sshlab.critical_w(1.0, 0.5)
    assert sshlab.mean_nu_analytic(300, 1.0, w0, 0.5) == pytest.approx(0.5, abs=1e-12)


def test_ensemble_matches_formula():
    est = sshlab.estimate_mean_nu(100, 1.0, 0.95, 0.6, realizations=2000, seed=5)
    assert est["n_realizations"] + est["n_excluded"] == 2000
    assert abs(est["value"][0] - sshlab.mean_nu_analytic(100, 1.0, 0.95, 0.6)) < 0.05


def test_born_functions():
    f, g = sshlab.born_functions(1.0, 0.99, alpha=1e-5, method="narrow_peak")
    assert f.imag < 0
    assert g.real == pytest.approx(-0.5, rel=1e-6)
    assert sshlab.band_touch_gamma(1.0, 0.9) == sshlab.critical_gamma_weak(1.0, 0.9)


def test_errors_are_typed():
    with pytest.raises(sshlab.DomainError):
        sshlab.midgap_dos(-0.1, 1.0, 0.1, 1e-6)
    with pytest.raises(ValueError):
        sshlab.eigenvalues([1.0, 1.0], 0.5, bc="twisted")


def test_run_table():
    rows = sshlab.run_table("born", delta="0.01", gamma="0:0.1:3")
    assert len(rows) == 3
    assert rows[0]["gamma"] == 0.0

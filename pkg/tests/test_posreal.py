import numpy as np
import pytest

from positivity import (TransferFunction, decompose_biproper, is_positive_real, is_positive_real_discrete,
                        is_strictly_positive_real, realpart_even_poly, relative_degree, tf_inverse)
from positivity.corpus import random_pr_system
from positivity.discretize import discrete_tf, zoh_discretize
from positivity.poly import poly_eval
from positivity.realize import to_state_space


def tf(num, den):
    return TransferFunction(num, den)


@pytest.mark.parametrize("num, den, verdict", [
    ([1.0], [1.0, 1.0], True),
    ([1.0], [1.0, -1.0], False),
    ([2.0, 1.0], [1.0, 1.0], True),
    ([1.0], [1.0, 0.0], True),
    ([1.0], [1.0, 0.0, 1.0], False),
    ([1.0], [1.0, 2.0, 1.0], False),
    ([1.0, 0.0], [1.0, 0.0, 1.0], True),
    ([1.0, 0.0, 1.0], [1.0, 1.0], False),      # improper with relative degree -1 but E < 0 somewhere
    ([1.0, 1.0, 0.0], [1.0, 0.0], True),       # s + 1: residue 1 at infinity
    ([-1.0, 0.0], [1.0], False),               # -s: negative residue at infinity
])
def test_pr_verdicts(num, den, verdict):
    assert is_positive_real(tf(num, den)).verdict is verdict


def test_failure_reasons_are_named():
    assert is_positive_real(tf([1.0], [1.0, -1.0])).check("pole-location").passed is False
    r = is_positive_real(tf([1.0], [1.0, 0.0, 1.0]))
    assert "axis-residues" in r.failed and "frequency-nonnegativity" in r.failed
    assert is_positive_real(tf([1.0], [1.0, 2.0, 1.0])).failed[0] == "relative-degree"


def test_strict_verdicts():
    assert is_strictly_positive_real(tf([2.0, 1.0], [1.0, 1.0])).strict is True
    assert is_strictly_positive_real(tf([1.0], [1.0, 0.0])).strict is False
    r = is_strictly_positive_real(tf([1.0, 0.0], [1.0, 0.0, 1.0]))
    assert r.verdict is True and r.strict is False


def test_tail_of_pr_biproper_need_not_be_pr():
    F = tf([2.0, 1.0], [1.0, 1.0])
    f0 = decompose_biproper(F).f0
    assert is_positive_real(F).verdict
    rep = is_positive_real(f0)
    assert not rep.verdict and rep.failed == ["frequency-nonnegativity"]


@pytest.mark.parametrize("num, den", [([1.0], [1.0, 1.0, 1.0]), ([1.0, 0.0, 0.0, 0.0], [1.0, 1.0]),
                                      ([1.0], [1.0, 3.0, 3.0, 1.0])])
def test_relative_degree_two_or_more_never_pr(num, den):
    F = tf(num, den)
    assert abs(relative_degree(F)) >= 2
    assert not is_positive_real(F).verdict


def test_inverse_closure_on_random_pr_systems():
    rng = np.random.default_rng(11)
    for _ in range(200):
        F = random_pr_system(rng)
        assert is_positive_real(F).verdict
        assert is_positive_real(tf_inverse(F)).verdict


def test_real_part_shift_bounded_by_gain():
    rng = np.random.default_rng(5)
    w = np.logspace(-3, 3, 1000)
    checked = 0
    for _ in range(200):
        F = random_pr_system(rng)
        if relative_degree(F) != 0:
            continue
        dec = decompose_biproper(F)
        if any(abs(p.real) < 1e-9 for p in np.roots(dec.f0.den.coeffs)):
            continue
        re0 = np.real(poly_eval(dec.f0.num, 1j * w) / poly_eval(dec.f0.den, 1j * w))
        assert np.all(re0 >= -dec.d - 1e-9)
        checked += 1
    assert checked > 20


def _random_system(rng):
    n = int(rng.integers(1, 5))
    den = np.poly(rng.uniform(-3, 0.2, n) + 0j)
    num = rng.normal(size=int(rng.integers(max(1, n - 1), n + 2)))
    if rng.random() < 0.4:
        # bias toward near-PR systems
        num = np.abs(num)
    return tf(num, np.real(den))


def test_frequency_check_agrees_with_dense_sampling():
    rng = np.random.default_rng(99)
    w = np.concatenate([[0.0], np.logspace(-4, 4, 100_000)])
    disagreements = 0
    for _ in range(500):
        F = _random_system(rng)
        E = realpart_even_poly(F)
        rep = is_positive_real(F).check("frequency-nonnegativity")
        sampled = np.min(poly_eval(E, w ** 2) / np.maximum(1.0, w ** (2 * F.den.degree)))
        band = 1e-7 * max(1.0, E.norm())
        if rep.passed and sampled < -band:
            disagreements += 1
        if not rep.passed and sampled > band:
            disagreements += 1
    assert disagreements == 0


# --- discrete ---------------------------------------------------------------

def test_discrete_pure_gain():
    assert is_positive_real_discrete(tf([1.0], [1.0])).verdict


def test_discrete_zoh_first_order_fails_on_relative_degree():
    G = discrete_tf(zoh_discretize(to_state_space(tf([1.0], [1.0, 1.0])), 0.1))
    np.testing.assert_allclose(G.num.coeffs, [1 - np.exp(-0.1)], atol=1e-15)
    np.testing.assert_allclose(G.den.coeffs, [1.0, -np.exp(-0.1)], atol=1e-15)
    rep = is_positive_real_discrete(G)
    assert not rep.verdict and "relative-degree" in rep.failed


def test_discrete_fir():
    # 1 + 0.5/z = (z + 0.5)/z: Re on the circle is 1 + 0.5 cos(theta) >= 0.5
    assert is_positive_real_discrete(tf([1.0, 0.5], [1.0, 0.0])).verdict
    assert not is_positive_real_discrete(tf([1.0, 1.5], [1.0, 0.0])).verdict


def test_discrete_unit_circle_pole():
    # (z + 1)/(z - 1): simple pole at 1 with residue 2, real part 0 on the circle
    assert is_positive_real_discrete(tf([1.0, 1.0], [1.0, -1.0])).verdict
    assert not is_positive_real_discrete(tf([1.0, 1.0], [1.0, -2.0, 1.0])).verdict


def test_discrete_check_agrees_with_dense_sampling():
    rng = np.random.default_rng(123)
    theta = np.linspace(0, np.pi, 200_001)
    z = np.exp(1j * theta)
    disagreements = 0
    for _ in range(500):
        n = int(rng.integers(1, 4))
        den = np.real(np.poly(rng.uniform(-0.95, 0.95, n)))
        num = rng.normal(size=n + 1) + np.concatenate([[rng.uniform(0.5, 2)], np.zeros(n)])
        G = tf(num, den)
        if relative_degree(G) != 0:
            continue
        rep = is_positive_real_discrete(G)
        sampled = np.min(np.real(poly_eval(G.num, z) / poly_eval(G.den, z)))
        band = 1e-6
        if rep.verdict and sampled < -band:
            disagreements += 1
        if not rep.verdict and sampled > band:
            disagreements += 1
    assert disagreements == 0

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from positivity import DegenerateInput, Polynomial, nonneg_on_halfline, poly_eval, poly_mul, poly_roots
from positivity.poly import cauchy_bound, halfline_minimum, poly_from_roots

coeff = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_leading_zeros_are_stripped():
    p = Polynomial([0.0, 0.0, 1.0, 2.0])
    assert p.degree == 1
    assert p.coeffs.tolist() == [1.0, 2.0]


def test_zero_polynomial():
    z = Polynomial([0.0, 0.0])
    assert z.is_zero and z.degree == -1
    assert Polynomial([]).is_zero


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        Polynomial([1.0, np.nan])


def test_arithmetic_and_eval():
    p, q = Polynomial([1.0, 1.0]), Polynomial([1.0, -1.0])
    assert (p * q).coeffs.tolist() == [1.0, 0.0, -1.0]
    assert (p + q).coeffs.tolist() == [2.0, 0.0]
    assert (p - p).is_zero
    assert poly_eval(p * q, 3.0) == 8.0
    assert poly_mul(p, q) == p * q
    assert Polynomial([3.0, 0.0, 1.0]).deriv().coeffs.tolist() == [6.0, 0.0]
    np.testing.assert_allclose(poly_eval(p, np.array([1j, 2.0])), [1 + 1j, 3.0])


def test_roots_of_constant_raise():
    with pytest.raises(DegenerateInput):
        poly_roots(Polynomial([3.0]))


def test_double_root_example():
    rs = poly_roots(Polynomial([1.0, 2.0, 1.0]))
    assert len(rs.roots) == 1
    assert rs.multiplicities == (2,)
    assert abs(rs.roots[0] + 1.0) < 1e-9


def test_quadratic_conjugate_pair():
    rs = poly_roots(Polynomial([1.0, 0.0, 4.0]))
    r = sorted(rs.roots, key=lambda z: z.imag)
    assert abs(r[0] + 2j) < 1e-12 and abs(r[1] - 2j) < 1e-12
    assert r[0] == np.conj(r[1])


def test_zero_roots_are_exact():
    rs = poly_roots(Polynomial([1.0, -3.0, 2.0, 0.0, 0.0]))
    assert 0j in rs.roots
    assert dict(zip(rs.roots, rs.multiplicities))[0j] == 2


@pytest.mark.parametrize("roots", [[2.0] * 3, [-1.0] * 4, [1 + 1j, 1 - 1j, 1 + 1j, 1 - 1j], [0.5, 0.5, -3.0]])
def test_repeated_roots_cluster(roots):
    rs = poly_roots(poly_from_roots(roots))
    assert sum(rs.multiplicities) == len(roots)
    assert len(rs.roots) == len(set(roots))
    for z in rs.roots:
        assert min(abs(z - r) for r in roots) < 1e-6


@settings(max_examples=300, deadline=None)
@given(st.lists(coeff, min_size=2, max_size=9).filter(lambda c: abs(c[0]) > 1e-3))
def test_roots_reconstruct_polynomial(c):
    p = Polynomial(c)
    rs = poly_roots(p)
    assert sum(rs.multiplicities) == p.degree
    rebuilt = np.real(np.poly(rs.all_roots)) * p.lead
    np.testing.assert_allclose(rebuilt, p.coeffs, atol=1e-6 * max(1.0, np.max(np.abs(p.coeffs))))


@settings(max_examples=200, deadline=None)
@given(st.lists(coeff, min_size=2, max_size=9).filter(lambda c: abs(c[0]) > 1e-2))
def test_roots_match_companion_oracle(c):
    ours = np.sort_complex(poly_roots(Polynomial(c)).all_roots)
    ref = np.roots(c)
    # every oracle root is close to one of ours (loose for ill-conditioned clusters)
    for z in ref:
        assert np.min(np.abs(ours - z)) < 1e-4 * (1 + abs(z))


def test_cauchy_bound_encloses_roots():
    rng = np.random.default_rng(3)
    for _ in range(100):
        c = rng.normal(size=rng.integers(2, 9))
        assert np.max(np.abs(np.roots(c))) <= cauchy_bound(c) + 1e-12


# --- half-line nonnegativity -------------------------------------------------

@pytest.mark.parametrize("c, holds", [
    ([1.0, -2.0, 1.0], True),       # (x-1)^2
    ([1.0, -2.0, 0.5], False),      # dips to -0.5 at x = 1
    ([1.0, 2.0, 1.0], True),
    ([-1.0], False),
    ([0.0], True),
    ([-1.0, 5.0], False),           # unbounded below
    ([1.0, 0.0, -1.0, 0.0], False),
    ([1.0, -3.0, 3.0, -1.0, 0.0], False),   # x (x-1)^3 < 0 on (0, 1)
])
def test_halfline_cases(c, holds):
    r = nonneg_on_halfline(Polynomial(c))
    assert r.holds is holds
    if not holds:
        assert poly_eval(Polynomial(c), r.witness) < 0


def test_halfline_minimum_value():
    r = halfline_minimum(Polynomial([1.0, -2.0, 0.5]))
    assert abs(r.minimum + 0.5) < 1e-12 and abs(r.argmin - 1.0) < 1e-9


def _random_halfline_poly(rng):
    kind = rng.integers(3)
    if kind == 0:
        return Polynomial(rng.normal(size=rng.integers(1, 8)))
    if kind == 1:
        # squares of positive real roots shifted slightly up or down
        roots = rng.uniform(0.1, 4.0, size=rng.integers(1, 4))
        p = poly_from_roots(np.repeat(roots, 2), rng.uniform(0.5, 2.0))
        return p + Polynomial([rng.choice([-1.0, 1.0]) * 10 ** rng.uniform(-5, -1)])
    roots = np.concatenate([rng.uniform(-3, 3, size=rng.integers(0, 4)),
                            [complex(rng.uniform(-2, 2), rng.uniform(0.1, 2))]])
    roots = np.concatenate([roots, np.conj(roots[-1:])])
    return Polynomial(np.real(np.poly(roots)) * rng.uniform(0.5, 2.0))


def halfline_oracle(p, n=100_000):
    """Dense sampling of p on [0, 2 R]; -inf when the leading coefficient is negative."""
    if p.degree >= 1 and p.lead < 0:
        return -np.inf
    if p.degree < 1:
        return p.lead if not p.is_zero else 0.0
    R = 2.0 * cauchy_bound(p.coeffs) + 1.0
    x = np.linspace(0.0, R, n)
    return float(np.min(poly_eval(p, x)))


def test_halfline_agrees_with_sampling_oracle():
    rng = np.random.default_rng(2024)
    tol, disagreements = 1e-9, []
    for i in range(1000):
        p = _random_halfline_poly(rng)
        ours = nonneg_on_halfline(p, tol)
        ref = halfline_oracle(p)
        band = 1e-6 * max(1.0, p.norm())
        if ours.holds and ref < -tol - band:
            disagreements.append((i, p.coeffs.tolist(), ref))
        if not ours.holds:
            # the witness is exact evidence; the oracle must not see clear positivity
            assert poly_eval(p, ours.witness) < -tol
            if ref > -tol + band and ours.minimum > -tol - band:
                disagreements.append((i, p.coeffs.tolist(), ref))
    assert disagreements == []

"""Quadratic spaces: evaluation, regularity, diagonalization, char-2 invariants."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffcomp.errors import UnsupportedInputError
from cliffcomp.quadform import QuadraticSpace, all_small_forms, random_form
from cliffcomp.scalars import QQ, PrimeField

F2 = PrimeField(2)
F3 = PrimeField(3)


def frac(n, d=1):
    return Fraction(n, d)


def fracs(*ns):
    return [Fraction(n) for n in ns]


def test_evaluation_upper_triangular():
    # q(x, y) = x^2 + 3xy - y^2
    q = QuadraticSpace(QQ, [fracs(1, 3), fracs(0, -1)])
    assert q.q(fracs(1, 0)) == 1
    assert q.q(fracs(0, 1)) == -1
    assert q.q(fracs(1, 1)) == 3
    assert q.q(fracs(2, -1)) == 4 - 6 - 1


def test_rejects_lower_triangular_entry():
    with pytest.raises(UnsupportedInputError):
        QuadraticSpace(QQ, [fracs(1, 0), fracs(3, -1)])


def test_polar_form_symmetry_and_polarization():
    q = QuadraticSpace(QQ, [fracs(2, 1, 0), fracs(0, -1, 4), fracs(0, 0, 3)])
    xs = [fracs(1, 0, 0), fracs(0, 1, 0), fracs(1, -1, 2), fracs(3, 1, 1)]
    for x in xs:
        assert q.bq(x, x) == 2 * q.q(x)
        for y in xs:
            assert q.bq(x, y) == q.bq(y, x)
            s = [a + b for a, b in zip(x, y)]
            assert q.q(s) == q.q(x) + q.q(y) + q.bq(x, y)


def test_polar_alternating_char2():
    q = QuadraticSpace(F2, [[1, 1], [0, 1]])
    for x in ([1, 0], [0, 1], [1, 1]):
        assert q.bq(x, x) == 0


@pytest.mark.parametrize(
    "entries,expected",
    [
        ((1, 1, 1), "regular"),
        ((1, 0, 1), "degenerate"),
        ((1, -1), "regular"),
    ],
)
def test_regularity_diagonal(entries, expected):
    q = QuadraticSpace.diagonal(QQ, fracs(*entries))
    assert q.regularity() == expected


def test_regularity_char2():
    # xy is regular; x^2 has a one-dimensional radical with q nonzero on it
    assert QuadraticSpace.from_upper_entries(F2, 2, {(0, 1): 1}).regularity() == "regular"
    assert QuadraticSpace.diagonal(F2, [1]).regularity() == "semi-regular"
    assert QuadraticSpace.diagonal(F2, [0]).regularity() == "degenerate"
    # odd dimension in char 2 is never regular
    q3 = QuadraticSpace(F2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert q3.regularity() == "semi-regular"


def test_scale_and_orthogonal_sum():
    q = QuadraticSpace.diagonal(QQ, fracs(1, -2))
    s = q.scale(frac(3))
    assert s.q(fracs(1, 1)) == 3 * q.q(fracs(1, 1))
    r = q.orthogonal_sum(QuadraticSpace.diagonal(QQ, fracs(5)))
    assert r.n == 3
    assert r.q(fracs(1, 1, 1)) == -1 + 5
    assert r.bq(fracs(1, 0, 0), fracs(0, 0, 1)) == 0


def test_restrict_to_subspace():
    q = QuadraticSpace.diagonal(QQ, fracs(1, 1, -1))
    sub = q.restrict([fracs(1, 1, 0), fracs(0, 1, 1)])
    assert sub.n == 2
    assert sub.q(fracs(1, 0)) == q.q(fracs(1, 1, 0))
    assert sub.bq(fracs(1, 0), fracs(0, 1)) == q.bq(fracs(1, 1, 0), fracs(0, 1, 1))


def _is_rational_square(x: Fraction) -> bool:
    if x <= 0:
        return x == 0
    n = x.numerator * x.denominator
    r = math.isqrt(n)
    return r * r == n


def test_diagonalization_preserves_signature_and_discriminant():
    rng = random.Random(5)
    for _ in range(25):
        entries = [frac(rng.choice([-5, -3, -1, 1, 2, 3, 7])) for _ in range(4)]
        q0 = QuadraticSpace.diagonal(QQ, entries)
        # random unimodular change of basis
        vecs = [[frac(1 if i == j else 0) for j in range(4)] for i in range(4)]
        for _ in range(6):
            i, j = rng.sample(range(4), 2)
            c = frac(rng.randint(-2, 2))
            vecs[i] = [a + c * b for a, b in zip(vecs[i], vecs[j])]
        q1 = q0.restrict(vecs)
        d0, d1 = q0.diagonalization(), q1.diagonalization()
        assert sum(1 for v in d1 if v > 0) == sum(1 for v in entries if v > 0)
        prod0 = math.prod(d0)
        prod1 = math.prod(d1)
        assert _is_rational_square(prod0 * prod1)


def test_diagonalization_refused_char2():
    with pytest.raises(UnsupportedInputError):
        QuadraticSpace.diagonal(F2, [1, 1]).diagonalization()


def test_symplectic_basis_properties():
    q = QuadraticSpace.from_upper_entries(
        F2, 4, {(0, 0): 1, (0, 1): 1, (0, 2): 1, (2, 3): 1}
    )
    assert q.regularity() == "regular"
    pairs = q.symplectic_basis()
    assert len(pairs) == 2
    flat = [v for p in pairs for v in p]
    for a in range(4):
        for b in range(4):
            want = 1 if (a // 2 == b // 2 and a != b) else 0
            assert q.bq(flat[a], flat[b]) == F2.from_int(want)


@pytest.mark.parametrize(
    "entries,arf",
    [
        ({(0, 1): 1}, 0),                      # xy
        ({(0, 0): 1, (0, 1): 1, (1, 1): 1}, 1),  # x^2 + xy + y^2
    ],
)
def test_arf_invariant_gf2(entries, arf):
    q = QuadraticSpace.from_upper_entries(F2, 2, entries)
    assert q.arf_invariant() == F2.from_int(arf)


def test_arf_refused_outside_char2():
    with pytest.raises(UnsupportedInputError):
        QuadraticSpace.diagonal(QQ, fracs(1, 1)).arf_invariant()


@pytest.mark.parametrize(
    "entries,split",
    [
        ((1, 1), False),   # disc datum -1: Q(i)
        ((1, -1), True),   # hyperbolic plane
        ((2, 3, 5), False),
        ((1, 1, 1, 1), True),   # datum (-1)^6 det = 1
        ((1, 1, 1, -1), False),
    ],
)
def test_discriminant_algebra(entries, split):
    q = QuadraticSpace.diagonal(QQ, fracs(*entries))
    assert q.discriminant_algebra().split is split


def test_center_datum_char2():
    assert QuadraticSpace.from_upper_entries(F2, 2, {(0, 1): 1}).center_datum() == 0
    ent = {(0, 0): 1, (0, 1): 1, (1, 1): 1}
    assert QuadraticSpace.from_upper_entries(F2, 2, ent).center_datum() == 1
    with pytest.raises(UnsupportedInputError):
        QuadraticSpace.diagonal(F2, [1]).center_datum()


@given(st.integers(2, 5), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_random_form_usable(n, seed):
    q = random_form(QQ, n, random.Random(seed))
    assert q.n == n and q.is_usable()


def test_all_small_forms_gf2_counts():
    forms2 = list(all_small_forms(F2, 2))
    assert all(f.is_usable() for f in forms2)
    # every usable binary form over GF(2) appears: 2^3 matrices, minus unusable
    assert len(forms2) == len({tuple(tuple(r) for r in f.M) for f in forms2})
    forms1 = list(all_small_forms(F3, 1))
    assert {f.M[0][0] for f in forms1} == {1, 2}

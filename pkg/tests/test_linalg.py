"""Exact dense and sparse linear algebra."""

import random
from fractions import Fraction

import pytest

from cliffcomp.linalg import (
    SparseEchelon,
    det,
    inv_matrix,
    kernel,
    lin_span_contains,
    mat_identity,
    mat_mul,
    mat_vec,
    rank,
    rref,
    solve,
)
from cliffcomp.scalars import QQ, PrimeField


FIELDS = [QQ, PrimeField(5), PrimeField(2)]


def rand_matrix(F, rng, n, m):
    if F is QQ:
        return [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(m)] for _ in range(n)]
    return [[rng.randrange(F.p) for _ in range(m)] for _ in range(n)]


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_inverse_roundtrip(F):
    rng = random.Random(7)
    for n in (1, 2, 3, 4):
        for _ in range(5):
            A = rand_matrix(F, rng, n, n)
            Ainv = inv_matrix(F, A)
            if Ainv is None:
                assert F.is_zero(det(F, A))
                continue
            assert mat_mul(F, A, Ainv) == mat_identity(F, n)
            assert mat_mul(F, Ainv, A) == mat_identity(F, n)
            assert not F.is_zero(det(F, A))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_kernel_and_rank(F):
    rng = random.Random(11)
    for _ in range(8):
        n, m = rng.randint(1, 4), rng.randint(1, 5)
        A = rand_matrix(F, rng, n, m)
        ker = kernel(F, A)
        assert rank(F, A) + len(ker) == m
        for v in ker:
            assert all(F.is_zero(x) for x in mat_vec(F, A, v))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_solve_consistent(F):
    rng = random.Random(3)
    for _ in range(8):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        A = rand_matrix(F, rng, n, m)
        x0 = rand_matrix(F, rng, 1, m)[0]
        b = mat_vec(F, A, x0)
        x = solve(F, A, b)
        assert x is not None
        assert mat_vec(F, A, x) == b


def test_solve_inconsistent():
    A = [[Fraction(1), Fraction(0)], [Fraction(1), Fraction(0)]]
    assert solve(QQ, A, [Fraction(1), Fraction(2)]) is None


def test_det_multiplicative():
    rng = random.Random(5)
    for _ in range(5):
        A = rand_matrix(QQ, rng, 3, 3)
        B = rand_matrix(QQ, rng, 3, 3)
        assert det(QQ, mat_mul(QQ, A, B)) == det(QQ, A) * det(QQ, B)


def test_rref_idempotent():
    A = [[Fraction(2), Fraction(4), Fraction(1)], [Fraction(1), Fraction(2), Fraction(3)]]
    R, piv, r = rref(QQ, A)
    R2, piv2, r2 = rref(QQ, R)
    assert (R, piv, r) == (R2, piv2, r2)
    assert piv == [0, 2] and r == 2


def test_span_contains():
    basis = [[Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(1), Fraction(1)]]
    assert lin_span_contains(QQ, basis, [Fraction(2), Fraction(3), Fraction(5)])
    assert not lin_span_contains(QQ, basis, [Fraction(0), Fraction(0), Fraction(1)])


def test_sparse_echelon_matches_dense_rank():
    rng = random.Random(9)
    F = QQ
    cols = list("abcdef")
    rows_dense = []
    ech = SparseEchelon(F, key=cols.index)
    for _ in range(10):
        row = {c: Fraction(rng.randint(-3, 3)) for c in cols if rng.random() < 0.6}
        row = {c: v for c, v in row.items() if v}
        rows_dense.append([row.get(c, Fraction(0)) for c in cols])
        ech.insert(dict(row))
    assert ech.rank == rank(F, rows_dense)
    # membership agrees with dense span test
    probe = {"a": Fraction(1), "c": Fraction(-2)}
    dense_probe = [probe.get(c, Fraction(0)) for c in cols]
    assert ech.contains(probe) == lin_span_contains(F, rows_dense, dense_probe)


def test_sparse_echelon_reduced_invariant():
    # every stored row contains no pivot of another row
    rng = random.Random(2)
    F = PrimeField(5)
    ech = SparseEchelon(F, key=lambda c: c)
    for _ in range(15):
        row = {c: rng.randrange(5) for c in range(8) if rng.random() < 0.5}
        ech.insert(row)
    pivots = ech.pivots
    for p, row in ech.rows.items():
        assert row[p] == F.one()
        assert all(c == p for c in row if c in pivots)


def test_sparse_echelon_residue_semantics():
    F = QQ
    ech = SparseEchelon(F)
    assert ech.insert({0: Fraction(2), 1: Fraction(2)}) is not None
    # a multiple of the first row reduces to nothing
    assert ech.insert({0: Fraction(3), 1: Fraction(3)}) is None
    res = ech.insert({1: Fraction(1)})
    assert res == {1: Fraction(1)}
    assert ech.rank == 2
    assert ech.contains({0: Fraction(7), 1: Fraction(-4)})

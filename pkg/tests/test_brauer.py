"""2-torsion classes: supports, the constant metric, restriction, recovery."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffcomp.algebra import QuaternionAlgebra
from cliffcomp.brauer import (
    BrauerClass,
    EtaleBase,
    clifford_class_of_form,
    compositum,
    even_clifford_classes,
    quaternion_model,
    quaternion_symbol_of,
    trivial_class,
)
from cliffcomp.quadform import QuadraticSpace
from cliffcomp.scalars import (
    PLACE_REAL,
    Place,
    PrimeField,
    QQ,
    hilbert_symbol,
    hilbert_symbol_bruteforce,
)

F2 = PrimeField(2)
F3 = PrimeField(3)


def cls(*symbols):
    return BrauerClass(QQ, [(Fraction(a), Fraction(b)) for a, b in symbols])


def fracs(*ns):
    return [Fraction(n) for n in ns]


@pytest.mark.parametrize(
    "a,b,places",
    [
        (-1, -1, {PLACE_REAL, Place(2)}),
        (1, 1, set()),
        (1, -1, set()),
        (2, 5, {Place(2), Place(5)}),
        (-1, 3, {Place(2), Place(3)}),
    ],
)
def test_symbol_support(a, b, places):
    c = cls((a, b))
    assert c.support == frozenset(places)
    assert c.is_trivial() == (not places)


def test_support_has_even_size():
    rng = random.Random(11)
    pool = [-1, 2, 3, 5, -7, 15, -30, 11]
    for _ in range(60):
        c = cls(*[(rng.choice(pool), rng.choice(pool)) for _ in range(rng.randint(1, 3))])
        assert len(c.support) % 2 == 0
        for v in c.support:
            assert c.invariant_at(v) == -1
        assert c.invariant_at(Place(13)) == 1 or Place(13) in c.support


def test_product_is_2torsion_and_commutative():
    a, b = cls((-1, -1)), cls((2, 5))
    assert a * b == b * a
    assert (a * a).is_trivial()
    assert (a * b * b) == a
    assert a * trivial_class(QQ) == a


def test_distance_is_discrete_metric():
    pts = [cls(), cls((-1, -1)), cls((2, 5)), cls((-1, -1), (2, 5)), cls((3, 7))]
    for x in pts:
        assert x.distance(x) == 0
        for y in pts:
            assert x.distance(y) == y.distance(x)
            assert x.distance(y) == (0 if x == y else 1)
            for z in pts:
                assert x.distance(z) <= x.distance(y) + y.distance(z)


def test_distance_translation_invariance():
    # d(ab, ac) = d(b, c), and d(b, c) = d(bc, 1)
    pts = [cls(), cls((-1, -1)), cls((2, 5)), cls((-1, 3))]
    for a in pts:
        for b in pts:
            for c in pts:
                assert (a * b).distance(a * c) == b.distance(c)
                assert b.distance(c) == (b * c).distance(trivial_class(QQ))


symbol_entries = st.sampled_from([-1, 2, 3, 5, -7, 10, 21, -2])


@given(st.lists(st.tuples(symbol_entries, symbol_entries), max_size=3),
       st.lists(st.tuples(symbol_entries, symbol_entries), max_size=3))
@settings(max_examples=40, deadline=None)
def test_equality_iff_product_trivial(s1, s2):
    c1 = cls(*s1)
    c2 = cls(*s2)
    assert (c1 == c2) == (c1 * c2).is_trivial()


@pytest.mark.parametrize("place", [PLACE_REAL, Place(2), Place(3), Place(5), Place(7)])
def test_hilbert_symbol_against_bruteforce(place):
    for a in range(-8, 9):
        for b in range(-8, 9):
            if a == 0 or b == 0:
                continue
            lhs = hilbert_symbol(Fraction(a), Fraction(b), place)
            assert lhs == hilbert_symbol_bruteforce(Fraction(a), Fraction(b), place)


def test_hilbert_symbol_rational_arguments():
    assert hilbert_symbol(Fraction(1, 2), Fraction(5), Place(2)) == \
        hilbert_symbol(Fraction(2), Fraction(5), Place(2))
    assert hilbert_symbol(Fraction(-9, 4), Fraction(-1), PLACE_REAL) == -1


@pytest.mark.parametrize(
    "entries,expected",
    [
        ((1, 1, 1, 1), [(-1, -1)]),
        ((1, 1, 1), [(-1, -1)]),
        ((1, -1), []),
        ((2, 5), [(2, 5)]),
    ],
)
def test_clifford_class_of_form(entries, expected):
    got = clifford_class_of_form(QuadraticSpace.diagonal(QQ, fracs(*entries)))
    assert got == cls(*expected)


def test_even_clifford_classes_split_and_field():
    kind, cp, cm = even_clifford_classes(QuadraticSpace.diagonal(QQ, fracs(1, 1, 1, 1)))
    assert kind == "split" and cp == cls((-1, -1)) and cm == cls((-1, -1))
    kind2, z, res = even_clifford_classes(QuadraticSpace.diagonal(QQ, fracs(2, 3, -1, 5)))
    assert kind2 == "field" and res.is_trivial()


@pytest.mark.parametrize(
    "F,a,b,trivial",
    [
        (QQ, Fraction(-1), Fraction(-1), False),
        (QQ, Fraction(1), Fraction(-3), True),
        (F3, 1, 1, True),
        (F3, 2, 2, True),
    ],
)
def test_quaternion_symbol_recovery(F, a, b, trivial):
    Q = QuaternionAlgebra(F, a, b)
    sym = quaternion_symbol_of(Q)
    assert BrauerClass(F, [sym]).is_trivial() == trivial
    if not trivial:
        assert BrauerClass(F, [sym]) == BrauerClass(F, [(a, b)])


def test_quaternion_symbol_recovery_char2():
    sym = quaternion_symbol_of(QuaternionAlgebra(F2, 1, 1))
    assert BrauerClass(F2, [sym]).is_trivial()


def test_restriction_to_quadratic_fields():
    c = cls((-1, -1))
    assert c.restrict(EtaleBase((-1,))).is_trivial()       # Q(i) splits it
    assert not c.restrict(EtaleBase((2,))).is_trivial()    # stays definite
    big = EtaleBase((2, 5))
    assert big.degree == 4
    assert big.place_degree_one(PLACE_REAL)        # totally real
    assert not EtaleBase((-1,)).place_degree_one(PLACE_REAL)


def test_compositum_degrees():
    Zi, Z2 = EtaleBase((-1,)), EtaleBase((2,))
    assert compositum(Zi, Z2).degree == 4
    assert compositum(Zi, Zi).degree == 2


def test_quaternion_model_roundtrip():
    assert quaternion_model(trivial_class(QQ)) is None or \
        BrauerClass(QQ, [quaternion_model(trivial_class(QQ))]).is_trivial()
    target = cls((-1, -1), (2, 5))
    sym = quaternion_model(target)
    assert BrauerClass(QQ, [sym]) == target


def test_finite_field_classes_always_trivial():
    assert BrauerClass(F3, [(1, 1), (2, 1)]).is_trivial()
    assert BrauerClass(F3, [(2, 2)]).distance(trivial_class(F3)) == 0

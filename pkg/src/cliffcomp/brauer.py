"""2-torsion Brauer classes over Q and finite fields, kept symbolic.

A class over Q is a product of quaternion symbols (a, b).  Its complete
invariant is the finite set of places where the product of Hilbert
symbols is -1.  Classes over a quadratic or biquadratic etale extension S
of Q arise here only as restrictions of classes from Q; a restricted
class is trivial iff no support place stays degree-1 in S (splits, resp.
splits completely).  Over finite fields every class is trivial.

Distances are 0 or 1: a nontrivial 2-torsion class over a number field
has index exactly 2, so two distinct classes always differ by a
quaternion algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (
    Algebra,
    El,
    QuaternionAlgebra,
    hom_on_generators,
)
from .errors import CertificationError, UnsupportedInputError
from .linalg import kernel, solve
from .scalars import (
    Field,
    Place,
    QQ,
    EtaleQuadratic,
    RationalField,
    hilbert_symbol,
    relevant_places,
)


# ---------------------------------------------------------------------------
# classes over the base field

class BrauerClass:
    """A 2-torsion class over the base field, as a list of symbols."""

    def __init__(self, F: Field, symbols: list):
        self.F = F
        self.symbols = [(a, b) for a, b in symbols]
        if isinstance(F, RationalField):
            self._support = frozenset(_support_places(self.symbols))
        else:
            # finite base field: Brauer group is trivial
            self._support = frozenset()

    @property
    def support(self) -> frozenset:
        return self._support

    def is_trivial(self) -> bool:
        return not self._support

    def __mul__(self, other: "BrauerClass") -> "BrauerClass":
        if self.F != other.F:
            raise UnsupportedInputError("classes live over different fields")
        return BrauerClass(self.F, self.symbols + other.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, BrauerClass) and self.F == other.F and self._support == other._support

    def __hash__(self):
        return hash((self.F, self._support))

    def distance(self, other: "BrauerClass") -> int:
        """0 if equal, else 1 (a quaternion factor always suffices)."""
        return 0 if self == other else 1

    def restrict(self, S: "EtaleBase") -> "RestrictedClass":
        return RestrictedClass(self, S)

    def invariant_at(self, v: Place) -> int:
        return -1 if v in self._support else 1

    def to_json(self) -> dict:
        F = self.F
        return {
            "symbols": [[F.fmt(a), F.fmt(b)] for a, b in self.symbols],
            "support": sorted(repr(v) for v in self._support),
            "trivial": self.is_trivial(),
        }

    def __repr__(self):
        if self.is_trivial():
            return "BrauerClass(1)"
        sym = "*".join(f"({self.F.fmt(a)},{self.F.fmt(b)})" for a, b in self.symbols)
        return f"BrauerClass({sym}; support {sorted(repr(v) for v in self._support)})"


def _support_places(symbols: list) -> list:
    vals = []
    for a, b in symbols:
        vals.extend([a, b])
    if not vals:
        return []
    out = []
    for v in relevant_places(vals):
        prod = 1
        for a, b in symbols:
            prod *= hilbert_symbol(a, b, v)
        if prod == -1:
            out.append(v)
    return out


def trivial_class(F: Field) -> BrauerClass:
    return BrauerClass(F, [])


# ---------------------------------------------------------------------------
# etale base extensions of Q and restricted classes

@dataclass(frozen=True)
class EtaleBase:
    """A quadratic or biquadratic etale extension of Q, or Q itself.

    data: () for Q, (m,) for Q(sqrt m), (m1, m2) for Q(sqrt m1, sqrt m2).
    Split quadratic etale (square datum) is allowed with a flag; classes
    over a split base are pairs and live outside this type.
    """

    data: tuple

    def __post_init__(self):
        if len(self.data) > 2:
            raise UnsupportedInputError("at most biquadratic bases supported")
        for m in self.data:
            if QQ.is_square(Fraction(m)) or m == 0:
                raise UnsupportedInputError("etale base data must be nonsquare")
        if len(self.data) == 2:
            m1, m2 = self.data
            if QQ.is_square(Fraction(m1) * Fraction(m2)):
                raise UnsupportedInputError("biquadratic base is degenerate")

    @property
    def degree(self) -> int:
        return 1 << len(self.data)

    def place_degree_one(self, v: Place) -> bool:
        """Does v keep a degree-1 place upstairs (split completely)?"""
        for m in self.data:
            E = EtaleQuadratic(QQ, Fraction(m), False)
            if E.place_behavior(v) != "split":
                return False
        return True

    def __repr__(self):
        if not self.data:
            return "Q"
        if len(self.data) == 1:
            return f"Q(sqrt {self.data[0]})"
        return f"Q(sqrt {self.data[0]}, sqrt {self.data[1]})"


def etale_base_of(et: Optional[EtaleQuadratic]) -> EtaleBase:
    """EtaleBase from a quadratic etale datum over Q (must be a field)."""
    if et is None:
        return EtaleBase(())
    if et.split:
        raise UnsupportedInputError("split etale base has no single field of scalars")
    from .scalars import squarefree_part

    return EtaleBase((squarefree_part(et.datum),))


def compositum(Z: EtaleBase, S: EtaleBase) -> EtaleBase:
    """The compositum of two (at most quadratic) field bases."""
    data = tuple(dict.fromkeys(Z.data + S.data))
    if len(data) == 2:
        m1, m2 = data
        if QQ.is_square(Fraction(m1) * Fraction(m2)):
            # same field twice
            return EtaleBase((m1,))
    return EtaleBase(data)


class RestrictedClass:
    """res_S(c) for a class c over Q and an etale field base S."""

    def __init__(self, cls: BrauerClass, S: EtaleBase):
        if not isinstance(cls.F, RationalField) and S.data:
            raise UnsupportedInputError("restriction bases are for classes over Q")
        self.cls = cls
        self.S = S
        self._support = frozenset(v for v in cls.support if S.place_degree_one(v))

    def is_trivial(self) -> bool:
        return not self._support

    def __mul__(self, other: "RestrictedClass") -> "RestrictedClass":
        if self.S != other.S:
            raise UnsupportedInputError("restricted classes over different bases")
        return RestrictedClass(self.cls * other.cls, self.S)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RestrictedClass)
            and self.S == other.S
            and self._support == other._support
        )

    def __hash__(self):
        return hash((self.S, self._support))

    def distance(self, other: "RestrictedClass") -> int:
        return 0 if self == other else 1

    def conjugate(self) -> "RestrictedClass":
        """Image under the nontrivial base automorphism: unchanged, being a
        restriction from downstairs."""
        return self

    def to_json(self) -> dict:
        d = self.cls.to_json()
        d["base"] = repr(self.S)
        d["support"] = sorted(repr(v) for v in self._support)
        d["trivial"] = self.is_trivial()
        return d

    def __repr__(self):
        return f"Res[{self.S}]{self.cls!r}"


# ---------------------------------------------------------------------------
# symbol recovery from degree-2 algebras

def _as_scalar(A: Algebra, x: El):
    """The scalar c with x = c * 1, or None.  Works whatever the basis."""
    F = A.F
    one = A.one()
    if x.is_zero():
        return F.zero()
    i, ui = next(iter(one.c.items()))
    if i not in x.c:
        return None
    lam = F.div(x.c[i], ui)
    return lam if x == lam * one else None


def quaternion_symbol_of(A: Algebra, tries: int = 400, seed: int = 0) -> tuple:
    """Recover a symbol (a, b) with A isomorphic to the quaternion algebra
    (a, b) (char != 2) or [a, b) (char 2).  Certified by building the
    isomorphism on generators."""
    import random

    F = A.F
    if A.dim != 4:
        raise UnsupportedInputError("symbol recovery needs a 4-dimensional algebra")
    rng = random.Random(seed)

    def trd(x: El):
        t = F.zero()
        for i in range(4):
            t = F.add(t, A.mul(x, A.basis_el(i)).c.get(i, F.zero()))
        # regular trace = 2 * reduced trace on a degree-2 algebra
        return t

    def candidates():
        for i in range(4):
            yield A.basis_el(i)
        for i in range(4):
            for j in range(i + 1, 4):
                yield A.basis_el(i) + A.basis_el(j)
                yield A.basis_el(i) - A.basis_el(j)
        for _ in range(tries):
            yield A.random_element(rng)

    one = A.one()
    if F.char != 2:
        half = F.inv(F.from_int(2))
        x = None
        for c in candidates():
            # regular trace is twice the reduced trace, so Trd(c)/2 = trd(c)/4
            c0 = c - F.mul(trd(c), F.mul(half, half)) * one
            sq = A.mul(c0, c0)
            a = _as_scalar(A, sq)
            if a is not None and not F.is_zero(a) and not c0.is_zero():
                x = c0
                break
        if x is None:
            raise CertificationError("no invertible trace-zero element found")
        # y anticommuting with x: kernel of L_x + R_x
        L = A.lmul_matrix(x)
        R = A.rmul_matrix(x)
        M = [[F.add(L[r][c2], R[r][c2]) for c2 in range(4)] for r in range(4)]
        ker = kernel(F, M)
        y = None
        for coeffs in _small_combos(F, len(ker), rng, tries):
            cand = A.zero()
            for cf, v in zip(coeffs, ker):
                if not F.is_zero(cf):
                    cand = cand + cf * El(A, {i: t for i, t in enumerate(v) if not F.is_zero(t)})
            if cand.is_zero():
                continue
            sq = A.mul(cand, cand)
            b = _as_scalar(A, sq)
            if b is not None and not F.is_zero(b):
                y = cand
                break
        if y is None:
            raise CertificationError("no anticommuting unit found")
        Qref = QuaternionAlgebra(F, a, b)
        phi = hom_on_generators(Qref, A, [1, 2], [x, y], label="symbol")
        phi.verify("full")
        if not phi.is_bijective():
            raise CertificationError("symbol witness is not an isomorphism")
        return (a, b)
    # char 2: u with u^2 = u + a, then v with vu = (u+1)v and v^2 = b
    u = None
    for c in candidates():
        sq = A.mul(c, c)
        a = _as_scalar(A, sq - c)
        if a is not None and not c.is_zero():
            # need a noncentral generator: scalars satisfy the equation too
            if _as_scalar(A, c) is not None:
                continue
            u = c
            break
    if u is None:
        raise CertificationError("no separable generator found")
    L = A.lmul_matrix(u)
    R = A.rmul_matrix(u)
    # v u + u v = v
    M = [
        [F.add(F.add(L[r][c2], R[r][c2]), F.neg(F.one()) if r == c2 else F.zero()) for c2 in range(4)]
        for r in range(4)
    ]
    ker = kernel(F, M)
    v = None
    for coeffs in _small_combos(F, len(ker), rng, tries):
        cand = A.zero()
        for cf, w in zip(coeffs, ker):
            if not F.is_zero(cf):
                cand = cand + cf * El(A, {i: t for i, t in enumerate(w) if not F.is_zero(t)})
        if cand.is_zero():
            continue
        sq = A.mul(cand, cand)
        b = _as_scalar(A, sq)
        if b is not None and not F.is_zero(b):
            v = cand
            break
    if v is None:
        raise CertificationError("no twisted-commuting unit found")
    Qref = QuaternionAlgebra(F, a, b)
    phi = hom_on_generators(Qref, A, [1, 2], [u, v], label="symbol")
    phi.verify("full")
    if not phi.is_bijective():
        raise CertificationError("symbol witness is not an isomorphism")
    return (a, b)


def _small_combos(F: Field, n: int, rng, tries: int):
    if n == 0:
        return
    units = []
    for i in range(n):
        row = [F.zero()] * n
        row[i] = F.one()
        units.append(row)
    yield from units
    for i in range(n):
        for j in range(i + 1, n):
            row = [F.zero()] * n
            row[i] = F.one()
            row[j] = F.one()
            yield row
            row2 = list(row)
            row2[j] = F.neg(F.one())
            yield row2
    for _ in range(tries):
        if F.char == 0:
            yield [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        else:
            yield [F.from_int(rng.randrange(F.order)) for _ in range(n)]


def class_of_algebra(A: Algebra) -> BrauerClass:
    """The symbolic class carried by a constructor-built algebra."""
    if A.brauer_symbols is None:
        raise UnsupportedInputError(f"{A.label} carries no symbolic class")
    return BrauerClass(A.F, A.brauer_symbols)


# ---------------------------------------------------------------------------
# Clifford classes of quadratic forms

def clifford_class_of_form(q) -> BrauerClass:
    """[C(q)] for even-dimensional q, [C0(q)] for odd-dimensional q.

    Over finite fields the class is trivial.  Over Q (char 0) it is
    computed by the splitting recursion
    [C(<b1, ..., bm>)] = (b1, b2) * [C(-b1 b2 <b3, ..., bm>)],
    and for odd dimension [C0(q)] = [C(<-a1 a2, ..., -a1 an>)].
    """
    F = q.F
    if not isinstance(F, RationalField):
        return trivial_class(F)
    diag = q.diagonalization()
    if any(F.is_zero(d) for d in diag):
        raise UnsupportedInputError("Clifford class needs a regular form")
    if q.n % 2:
        a1 = diag[0]
        diag = [F.neg(F.mul(a1, a)) for a in diag[1:]]
    return _clifford_class_even(diag)


def _clifford_class_even(diag: list) -> BrauerClass:
    F = QQ
    symbols = []
    work = list(diag)
    while work:
        b1, b2 = work[0], work[1]
        symbols.append((b1, b2))
        scale = F.neg(F.mul(b1, b2))
        work = [F.mul(scale, a) for a in work[2:]]
    return BrauerClass(F, symbols)


def even_clifford_classes(q):
    """Classes attached to C0(q) for even-dimensional regular q over Q.

    Returns ("split", c_plus, c_minus) when the discriminant is trivial
    (both equal [C(q)] for a form, the adjoint algebra being split), or
    ("field", EtaleBase, RestrictedClass) when the center is a field.
    """
    et = q.discriminant_algebra()
    c = clifford_class_of_form(q)
    if et.split:
        return ("split", c, c)
    Z = etale_base_of(et)
    return ("field", Z, c.restrict(Z))


# ---------------------------------------------------------------------------
# quaternion model search

def quaternion_model(cls: BrauerClass) -> tuple:
    """A single symbol (a, b) over Q with the same class.  (1, 1) if trivial."""
    if not isinstance(cls.F, RationalField):
        return (cls.F.one(), cls.F.one())
    if cls.is_trivial():
        return (Fraction(1), Fraction(1))
    primes = sorted({v.p for v in cls.support if not v.is_real})
    pool = set()
    for r in range(len(primes) + 1):
        for sub in itertools.combinations(primes, r):
            prod = 1
            for p in sub:
                prod *= p
            pool.add(Fraction(prod))
            pool.add(Fraction(-prod))
    extra = [Fraction(p) for p in (2, 3, 5, 7, 11, 13) if p not in primes]
    widened = pool | {a * e for a in pool for e in extra[:3]} | {a * e for a in pool for e in [-f for f in extra[:3]]}
    for pair_pool in (pool, widened):
        for a in sorted(pair_pool, key=lambda x: (abs(x), x < 0)):
            for b in sorted(pair_pool, key=lambda x: (abs(x), x < 0)):
                if a == 0 or b == 0:
                    continue
                if BrauerClass(QQ, [(a, b)]) == cls:
                    return (a, b)
    raise UnsupportedInputError(f"no small quaternion model found for {cls!r}")

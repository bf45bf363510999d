"""Exact base fields, square testing, Hilbert symbols, quadratic etale data.

Two families of base fields are supported: the rationals (elements are
stdlib Fractions) and finite fields GF(p^k) (elements are ints for k = 1,
tuples of ints for k > 1).  A Field object carries the arithmetic; the
elements themselves are plain hashable Python values so they can key
sparse dictionaries.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

from .errors import InputTooLargeError, UnsupportedInputError

# Default bound on |numerator|, |denominator| for exact factor work.
FACTOR_BOUND = 2**63


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise UnsupportedInputError(f"cannot interpret {x!r} as a rational")


class Field:
    """Common interface for exact base fields."""

    char: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def from_int(self, n: int):
        raise NotImplementedError

    def pow(self, x, n: int):
        if n < 0:
            return self.pow(self.inv(x), -n)
        acc, base = self.one(), x
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def is_square(self, x) -> bool:
        raise NotImplementedError

    def sqrt(self, x):
        """A square root of x, or None."""
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise UnsupportedInputError("field is not finite")

    def parse(self, s: str):
        raise NotImplementedError

    def fmt(self, x) -> str:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class RationalField(Field):
    """The rationals with exact Fraction arithmetic."""

    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def sub(self, x, y):
        return x - y

    def div(self, x, y):
        if y == 0:
            raise ZeroDivisionError("division by zero")
        return x / y

    def is_zero(self, x) -> bool:
        return x == 0

    def from_int(self, n: int):
        return Fraction(n)

    def is_square(self, x) -> bool:
        """Exact square test on a Fraction in lowest terms.

        A reduced n/d is a square iff n >= 0 and both n and d are perfect
        squares.  The factor bound is enforced to keep the contract of the
        exact-factorization code paths uniform.
        """
        x = _as_fraction(x)
        _check_bound(x.numerator)
        _check_bound(x.denominator)
        if x < 0:
            return False
        n, d = x.numerator, x.denominator
        return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d

    def sqrt(self, x):
        x = _as_fraction(x)
        if not self.is_square(x):
            return None
        return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))

    def parse(self, s: str):
        return Fraction(str(s))

    def fmt(self, x) -> str:
        x = _as_fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def to_json(self) -> dict:
        return {"kind": "Q"}

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    """GF(p) with elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or not _is_prime(p):
            raise UnsupportedInputError(f"{p} is not prime")
        self.p = p
        self.k = 1
        self.char = p
        self.order = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, x, y):
        return (x + y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def from_int(self, n: int):
        return n % self.p

    def is_square(self, x) -> bool:
        x %= self.p
        if self.p == 2 or x == 0:
            return True
        return pow(x, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, x):
        x %= self.p
        if not self.is_square(x):
            return None
        for t in range(self.p):
            if (t * t) % self.p == x:
                return t
        return None

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def parse(self, s: str):
        return int(s) % self.p

    def fmt(self, x) -> str:
        return str(x % self.p)

    def to_json(self) -> dict:
        return {"kind": "GF", "p": self.p, "k": 1}

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class ExtField(Field):
    """GF(p^k), k > 1; elements are k-tuples of ints (coefficients of 1, t, ..., t^(k-1))."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p):
            raise UnsupportedInputError(f"{p} is not prime")
        if k < 2:
            raise UnsupportedInputError("use PrimeField for k = 1")
        self.p = p
        self.k = k
        self.char = p
        self.order = p**k
        if modulus is None:
            modulus = _find_irreducible(p, k)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise UnsupportedInputError("modulus must be monic of degree k")
        if not _poly_is_irreducible(modulus, p):
            raise UnsupportedInputError("modulus is reducible")
        self.modulus = modulus

    def zero(self):
        return (0,) * self.k

    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def gen(self):
        return (0, 1) + (0,) * (self.k - 2)

    def add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def neg(self, x):
        p = self.p
        return tuple((-a) % p for a in x)

    def mul(self, x, y):
        prod = _poly_mul(x, y, self.p)
        return tuple(_poly_mod(prod, self.modulus, self.p)[: self.k])

    def inv(self, x):
        if self.is_zero(x):
            raise ZeroDivisionError("inverse of zero")
        g, u, _ = _poly_egcd(tuple(x), self.modulus, self.p)
        if len(_poly_trim(g)) != 1:
            raise ZeroDivisionError("element not invertible")
        c = pow(g[0], -1, self.p)
        u = tuple((ci * c) % self.p for ci in u)
        u = u + (0,) * (self.k - len(u))
        return tuple(_poly_mod(u, self.modulus, self.p)[: self.k])

    def is_zero(self, x) -> bool:
        return all(c % self.p == 0 for c in x)

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.k - 1)

    def is_square(self, x) -> bool:
        if self.p == 2 or self.is_zero(x):
            return True
        return self.pow(x, (self.order - 1) // 2) == self.one()

    def sqrt(self, x):
        if not self.is_square(x):
            return None
        for t in self.elements():
            if self.mul(t, t) == x:
                return t
        return None

    def elements(self) -> Iterator[tuple]:
        def rec(i):
            if i == self.k:
                yield ()
                return
            for rest in rec(i + 1):
                for c in range(self.p):
                    yield (c,) + rest

        return rec(0)

    def parse(self, s: str):
        parts = [int(c) for c in str(s).split(",")]
        if len(parts) == 1:
            return self.from_int(parts[0])
        if len(parts) != self.k:
            raise UnsupportedInputError(f"need {self.k} coefficients")
        return tuple(c % self.p for c in parts)

    def fmt(self, x) -> str:
        return ",".join(str(c) for c in x)

    def to_json(self) -> dict:
        return {"kind": "GF", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.k == self.k
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("GF", self.p, self.k, self.modulus))


QQ = RationalField()


def field_from_json(d: dict) -> Field:
    if d.get("kind") == "Q":
        return QQ
    if d.get("kind") == "GF":
        p, k = int(d["p"]), int(d.get("k", 1))
        if k == 1:
            return PrimeField(p)
        mod = tuple(d["modulus"]) if "modulus" in d else None
        return ExtField(p, k, mod)
    raise UnsupportedInputError(f"unknown field descriptor {d!r}")


# ---------------------------------------------------------------------------
# integer utilities

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_bound(n: int, bound: int = FACTOR_BOUND) -> None:
    if abs(n) >= bound:
        raise InputTooLargeError(f"|{n}| exceeds the exact-arithmetic bound {bound}")


def trial_factor(n: int, bound: int = FACTOR_BOUND) -> dict[int, int]:
    """Factor |n| by trial division.  Raises InputTooLargeError beyond bound."""
    _check_bound(n, bound)
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(x) -> int:
    """The squarefree integer representing the square class of a nonzero rational."""
    x = _as_fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in trial_factor(n).items():
        if e % 2:
            out *= p
    return out


# ---------------------------------------------------------------------------
# polynomial helpers for GF(p^k)

def _poly_trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return tuple(out)


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(_poly_trim(m)) - 1
    while len(_poly_trim(a)) - 1 >= dm and any(a):
        a = list(_poly_trim(a))
        da = len(a) - 1
        if da < dm:
            break
        lead = a[-1] % p
        shift = da - dm
        for i in range(dm + 1):
            a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a = list(_poly_trim(a))
    a = list(a) + [0] * max(0, dm - len(a))
    return tuple(c % p for c in a[:dm]) if dm > 0 else ()


def _poly_egcd(a, b, p):
    """Extended gcd of polynomials over GF(p): g, u, v with u*a + v*b = g."""
    r0, r1 = _poly_trim(a), _poly_trim(b)
    s0, s1 = (1,), (0,)
    t0, t1 = (0,), (1,)
    while any(r1) and r1 != (0,):
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1, p), p)
    return r0, s0, t0


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim(tuple((x - y) % p for x, y in zip(a, b)))


def _poly_divmod(a, b, p):
    a = list(_poly_trim(a))
    b = _poly_trim(b)
    db = len(b) - 1
    if b == (0,):
        raise ZeroDivisionError
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(1, len(a) - db)
    while len(_poly_trim(a)) - 1 >= db and any(a):
        a = list(_poly_trim(a))
        da = len(a) - 1
        if da < db:
            break
        c = (a[-1] * inv_lead) % p
        q[da - db] = c
        for i in range(db + 1):
            a[da - db + i] = (a[da - db + i] - c * b[i]) % p
    return _poly_trim(tuple(q)), _poly_trim(tuple(a))


def _poly_is_irreducible(m, p) -> bool:
    """Exhaustive divisor test, adequate at desk scale (small p, small degree)."""
    m = _poly_trim(m)
    deg = len(m) - 1
    if deg <= 1:
        return deg == 1

    def monic_polys(d):
        def rec(i):
            if i == d:
                yield (1,)
                return
            for rest in rec(i + 1):
                for c in range(p):
                    yield (c,) + rest

        for tail in rec(0):
            yield tail

    for d in range(1, deg // 2 + 1):
        for cand in monic_polys(d):
            _, r = _poly_divmod(m, cand, p)
            if r == (0,):
                return False
    return True


def _find_irreducible(p: int, k: int) -> tuple[int, ...]:
    def candidates():
        def rec(i):
            if i == k:
                yield (1,)
                return
            for rest in rec(i + 1):
                for c in range(p):
                    yield (c,) + rest

        return rec(0)

    for cand in candidates():
        if _poly_is_irreducible(cand, p):
            return cand
    raise UnsupportedInputError(f"no irreducible polynomial found for GF({p}^{k})")


# ---------------------------------------------------------------------------
# places of Q and Hilbert symbols

class Place:
    """A place of the rationals: 'inf' or a prime p."""

    def __init__(self, v):
        if v == "inf" or v is math.inf:
            self.p = None
        else:
            p = int(v)
            if not _is_prime(p):
                raise UnsupportedInputError(f"{p} is not a prime place")
            self.p = p

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, Place) and other.p == self.p

    def __hash__(self):
        return hash(("place", self.p))

    def __lt__(self, other):
        a = -1 if self.p is None else self.p
        b = -1 if other.p is None else other.p
        return a < b

    def __repr__(self):
        return "inf" if self.p is None else str(self.p)


PLACE_REAL = Place("inf")


def _val_unit(x: Fraction, p: int) -> tuple[int, Fraction]:
    """p-adic valuation and unit part of a nonzero rational."""
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v, Fraction(n, d)


def _unit_mod(u: Fraction, m: int) -> int:
    """A p-adic unit's residue mod m (m a power of the relevant prime)."""
    return (u.numerator * pow(u.denominator, -1, m)) % m


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, values in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, place: Place) -> int:
    """Hilbert symbol (a, b)_v over Q_v, by the classical local formulas."""
    a, b = _as_fraction(a), _as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = place.p
    alpha, u = _val_unit(a, p)
    beta, w = _val_unit(b, p)
    if p != 2:
        # (a,b)_p = (-1|p)^(alpha*beta) (u|p)^beta (w|p)^alpha
        sign = 1
        if alpha % 2 and beta % 2:
            sign *= legendre(-1, p)
        if beta % 2:
            sign *= legendre(_unit_mod(u, p), p)
        if alpha % 2:
            sign *= legendre(_unit_mod(w, p), p)
        return sign
    # p = 2: epsilon(u) = (u-1)/2, omega(u) = (u^2-1)/8 mod 2 on odd residues mod 8
    u8 = _unit_mod(u, 8)
    w8 = _unit_mod(w, 8)
    eps_u = (u8 - 1) // 2 % 2
    eps_w = (w8 - 1) // 2 % 2
    om_u = (u8 * u8 - 1) // 8 % 2
    om_w = (w8 * w8 - 1) // 8 % 2
    e = eps_u * eps_w + alpha * om_w + beta * om_u
    return -1 if e % 2 else 1


def hilbert_symbol_bruteforce(a, b, place: Place) -> int:
    """Independent congruence-search oracle for the Hilbert symbol.

    Tests solubility of z^2 = a x^2 + b y^2 by searching primitive triples
    mod p^k, with k chosen so that a primitive solution is Hensel-liftable:
    k = 1 for odd p with both arguments units (after stripping square
    factors of p), k = 2 when exactly one has odd valuation, k = 3 when
    both do, and k = 6 at p = 2.  At the real place it reads off signs.
    """
    import numpy as np

    a, b = _as_fraction(a), _as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = place.p

    def strip(x: Fraction) -> int:
        # integer of the same square class with p-valuation in {0, 1}
        v, u = _val_unit(x, p)
        num = u.numerator * u.denominator  # same square class as the unit
        return num * (p if v % 2 else 1)

    ai, bi = strip(a), strip(b)
    va, vb = ai % p == 0, bi % p == 0
    if p == 2:
        k = 6
    elif va and vb:
        k = 3
    elif va or vb:
        k = 2
    else:
        k = 1
    n = p**k
    xs = np.arange(n, dtype=np.int64)
    sq = np.zeros(n, dtype=bool)
    sq[(xs * xs) % n] = True
    ax2 = (ai % n) * ((xs * xs) % n) % n
    by2 = (bi % n) * ((xs * xs) % n) % n
    unit = xs % p != 0
    # z is implicit: need a x^2 + b y^2 to be a square mod n, with the
    # triple (x, y, z) primitive. If x or y is a unit any square z works;
    # if both are divisible by p, z must be a unit, i.e. the sum must be a
    # unit square.
    usq = np.zeros(n, dtype=bool)
    usq[(xs[unit] * xs[unit]) % n] = True
    for x in range(n):
        t = (ax2[x] + by2) % n
        if unit[x]:
            if sq[t].any():
                return 1
        else:
            if sq[t[unit]].any():
                return 1
            if usq[t[~unit]].any():
                return 1
    return -1


def relevant_places(values) -> list[Place]:
    """inf, 2, and the odd primes dividing any numerator or denominator."""
    primes: set[int] = set()
    for x in values:
        x = _as_fraction(x)
        if x == 0:
            continue
        for n in (x.numerator, x.denominator):
            for q in trial_factor(n):
                primes.add(q)
    primes.discard(2)
    return [PLACE_REAL, Place(2)] + [Place(q) for q in sorted(primes)]


# ---------------------------------------------------------------------------
# quadratic etale algebras

class EtaleQuadratic:
    """A quadratic etale algebra over a base field.

    char != 2: F[X]/(X^2 - m), split iff m is a square.
    char == 2: F[X]/(X^2 + X + a) (Artin-Schreier), split iff a = t^2 + t
    has a solution.  The standard involution sends the generator x to -x,
    resp. x + 1; on the split algebra F x F it swaps the factors.
    """

    def __init__(self, field: Field, datum, split: bool):
        self.field = field
        self.datum = datum
        self.split = split

    @property
    def char2(self) -> bool:
        return self.field.char == 2

    def conj_coords(self, c0, c1):
        """Standard involution on coordinates w.r.t. basis 1, x."""
        F = self.field
        if self.char2:
            # x -> x + 1
            return F.add(c0, c1), c1
        return c0, F.neg(c1)

    def norm(self, c0, c1):
        """Norm of c0 + c1 x to the base field."""
        F = self.field
        if self.char2:
            # (c0 + c1 x)(c0 + c1 (x+1)) = c0^2 + c0 c1 + c1^2 a
            return F.add(F.add(F.mul(c0, c0), F.mul(c0, c1)), F.mul(F.mul(c1, c1), self.datum))
        # (c0 + c1 x)(c0 - c1 x) = c0^2 - c1^2 m
        return F.sub(F.mul(c0, c0), F.mul(F.mul(c1, c1), self.datum))

    def place_behavior(self, place: Place) -> str:
        """'split', 'inert', or 'ramified' at a place of Q (rational base only)."""
        if self.field is not QQ and not isinstance(self.field, RationalField):
            raise UnsupportedInputError("place behavior is defined over Q only")
        m = _as_fraction(self.datum)
        if self.split:
            return "split"
        if place.is_real:
            return "split" if m > 0 else "inert"
        p = place.p
        v, u = _val_unit(m, p)
        if p != 2:
            if v % 2:
                return "ramified"
            return "split" if legendre(_unit_mod(u, p), p) == 1 else "inert"
        if v % 2:
            return "ramified"
        r = _unit_mod(u, 8)
        if r == 1:
            return "split"
        if r == 5:
            return "inert"
        return "ramified"

    def splits_at(self, place: Place) -> bool:
        return self.place_behavior(place) == "split"

    def is_isomorphic(self, other: "EtaleQuadratic") -> bool:
        if self.field != other.field:
            return False
        if self.split or other.split:
            return self.split == other.split
        F = self.field
        if self.char2:
            # same Artin-Schreier class iff a - a' is in the image of t^2 + t
            diff = F.sub(self.datum, other.datum)
            return _artin_schreier_solvable(F, diff)
        q = F.div(self.datum, other.datum)
        return F.is_square(q)

    def to_json(self) -> dict:
        F = self.field
        return {
            "base": F.to_json(),
            "datum": F.fmt(self.datum),
            "split": self.split,
            "char2": self.char2,
        }

    def __repr__(self):
        kind = "split" if self.split else "field"
        return f"EtaleQuadratic({self.field}, datum={self.field.fmt(self.datum)}, {kind})"

    def __eq__(self, other):
        return isinstance(other, EtaleQuadratic) and self.is_isomorphic(other)

    def __hash__(self):
        # coarse: hash by splitness only; equality does the real work
        return hash(("etale2", self.field, self.split))


def _artin_schreier_solvable(F: Field, a) -> bool:
    """Does t^2 + t = a have a solution?  Exhaustive over finite fields."""
    if F.char != 2:
        raise UnsupportedInputError("Artin-Schreier test needs char 2")
    for t in F.elements():
        if F.add(F.mul(t, t), t) == a:
            return True
    return False


def quad_ext_info(F: Field, datum) -> EtaleQuadratic:
    """The quadratic etale algebra attached to a datum.

    char != 2: datum m must be nonzero; char 2: any a (Artin-Schreier).
    """
    if F.char != 2:
        m = datum
        if F.is_zero(m):
            raise UnsupportedInputError("datum must be nonzero when char != 2")
        return EtaleQuadratic(F, m, F.is_square(m))
    return EtaleQuadratic(F, datum, _artin_schreier_solvable(F, datum))


def etale_split(F: Field) -> EtaleQuadratic:
    """The split quadratic etale algebra F x F."""
    if F.char != 2:
        return EtaleQuadratic(F, F.one(), True)
    # a = 0: t^2 + t = 0 solvable by t = 0
    return EtaleQuadratic(F, F.zero(), True)

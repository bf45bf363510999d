"""Finite-dimensional associative algebras with exact arithmetic.

Elements are sparse dicts {basis_index: coefficient} wrapped in El for
operator syntax.  Structure constants are produced lazily by mul_bb and
memoized, so large constructor-built algebras (matrix, tensor, opposite,
product) never materialize a full table.  Verification is explicit and
separate: constructor-built algebras are associative by construction,
hand-entered tables get checked.

Brauer bookkeeping: an algebra may carry `brauer_symbols`, a list of
(a, b) pairs over the base field whose quaternion classes multiply to the
algebra's class.  Constructors propagate it; code that needs a class and
finds None must compute one rather than guess.
"""

from __future__ import annotations

import math
import random
from typing import Callable, Optional

from .errors import CertificationError, UnsupportedInputError
from .linalg import kernel, lin_span_contains, rank, rref, solve
from .scalars import Field


# ---------------------------------------------------------------------------
# sparse coordinate helpers

def sp_add(F: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        nv = F.add(out.get(k, F.zero()), v)
        if F.is_zero(nv):
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def sp_scale(F: Field, c, a: dict) -> dict:
    if F.is_zero(c):
        return {}
    return {k: F.mul(c, v) for k, v in a.items()}


def sp_sub(F: Field, a: dict, b: dict) -> dict:
    return sp_add(F, a, sp_scale(F, F.neg(F.one()), b))


def sp_eq(F: Field, a: dict, b: dict) -> bool:
    return not sp_sub(F, a, b)


class El:
    """Algebra element: thin wrapper over sparse coords with arithmetic."""

    __slots__ = ("A", "c")

    def __init__(self, A: "Algebra", coords: dict):
        self.A = A
        self.c = {k: v for k, v in coords.items() if not A.F.is_zero(v)}

    def __add__(self, other):
        return El(self.A, sp_add(self.A.F, self.c, other.c))

    def __sub__(self, other):
        return El(self.A, sp_sub(self.A.F, self.c, other.c))

    def __neg__(self):
        return El(self.A, sp_scale(self.A.F, self.A.F.neg(self.A.F.one()), self.c))

    def __mul__(self, other):
        if isinstance(other, El):
            return self.A.mul(self, other)
        return El(self.A, sp_scale(self.A.F, other, self.c))

    def __rmul__(self, scalar):
        return El(self.A, sp_scale(self.A.F, scalar, self.c))

    def __pow__(self, n: int):
        acc = self.A.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        return isinstance(other, El) and self.A is other.A and sp_eq(self.A.F, self.c, other.c)

    def __hash__(self):
        return hash((id(self.A), frozenset(self.c.items())))

    def is_zero(self) -> bool:
        return not self.c

    def dense(self) -> list:
        F = self.A.F
        return [self.c.get(i, F.zero()) for i in range(self.A.dim)]

    def __repr__(self):
        if not self.c:
            return "0"
        F = self.A.F
        return " + ".join(f"{F.fmt(v)}*{self.A.basis_name(k)}" for k, v in sorted(self.c.items()))


class Algebra:
    """Base class.  Subclasses set F, dim, _unit and implement mul_bb."""

    F: Field
    dim: int
    label: str = "A"
    brauer_symbols: Optional[list] = None

    def __init__(self):
        self._mul_cache: dict = {}
        self._unit: dict = {}

    def mul_bb(self, i: int, j: int) -> dict:
        """Product of basis elements i and j as sparse coords."""
        raise NotImplementedError

    def _mul_bb_cached(self, i: int, j: int) -> dict:
        key = (i, j)
        out = self._mul_cache.get(key)
        if out is None:
            out = self.mul_bb(i, j)
            self._mul_cache[key] = out
        return out

    def mul(self, x: El, y: El) -> El:
        F = self.F
        acc: dict = {}
        for i, xi in x.c.items():
            for j, yj in y.c.items():
                prod = self._mul_bb_cached(i, j)
                if not prod:
                    continue
                s = F.mul(xi, yj)
                for k, v in prod.items():
                    nv = F.add(acc.get(k, F.zero()), F.mul(s, v))
                    if F.is_zero(nv):
                        acc.pop(k, None)
                    else:
                        acc[k] = nv
        return El(self, acc)

    def zero(self) -> El:
        return El(self, {})

    def one(self) -> El:
        return El(self, dict(self._unit))

    def basis_el(self, i: int) -> El:
        return El(self, {i: self.F.one()})

    def basis_name(self, i: int) -> str:
        return f"e{i}"

    def el(self, coords: dict) -> El:
        return El(self, coords)

    def scalar(self, c) -> El:
        return El(self, sp_scale(self.F, c, self._unit))

    @property
    def deg(self) -> Optional[int]:
        """Degree as central simple algebra, when dim is a perfect square."""
        n = math.isqrt(self.dim)
        return n if n * n == self.dim else None

    def trd_vec(self) -> Optional[list]:
        """Reduced traces of the basis elements, or None if unknown."""
        return None

    def trd(self, x: El):
        """Reduced trace.  Falls back to tr(L_x)/deg when characteristic allows."""
        v = self.trd_vec()
        F = self.F
        if v is not None:
            acc = F.zero()
            for i, xi in x.c.items():
                acc = F.add(acc, F.mul(xi, v[i]))
            return acc
        n = self.deg
        if n is None:
            raise UnsupportedInputError(f"{self.label}: no reduced trace available")
        if F.char and n % F.char == 0:
            raise UnsupportedInputError(
                f"{self.label}: regular-trace fallback invalid in characteristic {F.char}"
            )
        t = F.zero()
        for i in range(self.dim):
            prod = self.mul(x, self.basis_el(i))
            t = F.add(t, prod.c.get(i, F.zero()))
        return F.div(t, F.from_int(n))

    def lmul_matrix(self, x: El) -> list:
        """Matrix of left multiplication by x, columns indexed by basis."""
        F = self.F
        cols = [self.mul(x, self.basis_el(j)).c for j in range(self.dim)]
        return [[cols[j].get(i, F.zero()) for j in range(self.dim)] for i in range(self.dim)]

    def rmul_matrix(self, x: El) -> list:
        F = self.F
        cols = [self.mul(self.basis_el(j), x).c for j in range(self.dim)]
        return [[cols[j].get(i, F.zero()) for j in range(self.dim)] for i in range(self.dim)]

    def random_element(self, rng: random.Random, scale: int = 3) -> El:
        F = self.F
        coords = {}
        for i in range(self.dim):
            if rng.random() < 0.5:
                continue
            if F.char == 0:
                from fractions import Fraction

                coords[i] = Fraction(rng.randint(-scale, scale))
            else:
                coords[i] = F.from_int(rng.randrange(F.order))
        return El(self, coords)

    def verify_unit(self) -> None:
        one = self.one()
        for i in range(self.dim):
            b = self.basis_el(i)
            if self.mul(one, b) != b or self.mul(b, one) != b:
                raise CertificationError(f"{self.label}: unit fails on basis {i}")

    def verify_associative(self, mode: str = "auto", rng_seed: int = 0, samples: int = 300) -> None:
        """Check (e_i e_j) e_k = e_i (e_j e_k); full for small dim, sampled beyond."""
        n = self.dim
        if mode == "auto":
            mode = "full" if n <= 16 else "sample"
        if mode == "none":
            return
        if mode == "full":
            triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
        else:
            rng = random.Random(rng_seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for i, j, k in triples:
            a, b, c = self.basis_el(i), self.basis_el(j), self.basis_el(k)
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise CertificationError(f"{self.label}: associativity fails at ({i},{j},{k})")

    def __repr__(self):
        return f"{self.label}[dim {self.dim} over {self.F}]"


class ExplicitAlgebra(Algebra):
    """Algebra from an explicit structure table.

    table[(i, j)] is the sparse product of basis i and j; missing keys mean
    zero.  The unit must be supplied as sparse coords.  Hand-entered tables
    should be constructed with verify="full" (the default for dim <= 16).
    """

    def __init__(
        self,
        F: Field,
        dim: int,
        table: dict,
        unit: dict,
        label: str = "A",
        names: Optional[list] = None,
        trd: Optional[list] = None,
        brauer_symbols: Optional[list] = None,
        verify: str = "auto",
        deg: Optional[int] = None,
    ):
        super().__init__()
        self.F = F
        self.dim = dim
        self._table = table
        self._unit = {k: v for k, v in unit.items() if not F.is_zero(v)}
        self.label = label
        self._names = names
        self._trd = trd
        self.brauer_symbols = brauer_symbols
        self._deg_override = deg
        self.verify_unit()
        self.verify_associative(verify)

    @property
    def deg(self) -> Optional[int]:
        if self._deg_override is not None:
            return self._deg_override
        return super().deg

    def mul_bb(self, i: int, j: int) -> dict:
        return self._table.get((i, j), {})

    def basis_name(self, i: int) -> str:
        if self._names:
            return self._names[i]
        return f"e{i}"

    def trd_vec(self):
        return self._trd


class FieldAlgebra(Algebra):
    """The base field as a 1-dimensional algebra."""

    def __init__(self, F: Field):
        super().__init__()
        self.F = F
        self.dim = 1
        self._unit = {0: F.one()}
        self.label = f"{F}"
        self.brauer_symbols = []

    def mul_bb(self, i, j):
        return {0: self.F.one()}

    def basis_name(self, i):
        return "1"

    def trd_vec(self):
        return [self.F.one()]

    def _center_basis_structured(self):
        return [[self.F.one()]]


class QuaternionAlgebra(Algebra):
    """Quaternion algebra with its canonical symplectic involution.

    char != 2: (a, b): i^2 = a, j^2 = b, ij = -ji = k.
    char == 2: [a, b): i^2 = i + a, j^2 = b, ji = k + j where k = ij.
    gamma is the canonical involution x -> Trd(x) - x.
    """

    def __init__(self, F: Field, a, b, label: Optional[str] = None):
        super().__init__()
        if F.is_zero(b) or (F.char != 2 and F.is_zero(a)):
            raise UnsupportedInputError("quaternion parameters must be invertible")
        self.F = F
        self.a = a
        self.b = b
        self.dim = 4
        self._unit = {0: F.one()}
        self.char2 = F.char == 2
        if label is None:
            label = f"({F.fmt(a)},{F.fmt(b)})" if not self.char2 else f"[{F.fmt(a)},{F.fmt(b)})"
        self.label = label
        self.brauer_symbols = [(a, b)]
        self._table = self._build_table()
        self.verify_associative("full")

    def _build_table(self):
        F, a, b = self.F, self.a, self.b
        one = F.one()
        t = {}
        if not self.char2:
            ab = F.mul(a, b)
            # basis 1, i, j, k
            t[(1, 1)] = {0: a}
            t[(2, 2)] = {0: b}
            t[(3, 3)] = {0: F.neg(ab)}
            t[(1, 2)] = {3: one}
            t[(2, 1)] = {3: F.neg(one)}
            t[(1, 3)] = {2: a}
            t[(3, 1)] = {2: F.neg(a)}
            t[(2, 3)] = {1: F.neg(b)}
            t[(3, 2)] = {1: b}
        else:
            ab = F.mul(a, b)
            # i^2 = i + a, j^2 = b, k = ij, ji = k + j; the rest follows by
            # associativity: ki = aj, ik = aj + k, jk = bi + b, kj = bi, k^2 = ab
            t[(1, 1)] = {0: a, 1: one}
            t[(2, 2)] = {0: b}
            t[(1, 2)] = {3: one}
            t[(2, 1)] = {2: one, 3: one}
            t[(3, 1)] = {2: a}
            t[(1, 3)] = {2: a, 3: one}
            t[(2, 3)] = {0: b, 1: b}
            t[(3, 2)] = {1: b}
            t[(3, 3)] = {0: ab}
        for i in range(4):
            t[(0, i)] = {i: one}
            t[(i, 0)] = {i: one}
        return t

    def mul_bb(self, i, j):
        return self._table.get((i, j), {})

    def basis_name(self, i):
        return ["1", "i", "j", "k"][i]

    def trd_vec(self):
        F = self.F
        two = F.from_int(2)
        if self.char2:
            return [F.zero(), F.one(), F.zero(), F.zero()]
        return [two, F.zero(), F.zero(), F.zero()]

    def gamma(self) -> "Involution":
        """Canonical involution x -> Trd(x) - x."""
        F = self.F
        one = F.one()
        if self.char2:
            imgs = [{0: one}, {0: one, 1: one}, {2: one}, {3: one}]
        else:
            m1 = F.neg(one)
            imgs = [{0: one}, {1: m1}, {2: m1}, {3: m1}]
        return Involution(self, imgs, label="gamma", verify="full")

    def _center_basis_structured(self):
        return [self.one().dense()]


class MatrixAlgebra(Algebra):
    """n x n matrices over a base algebra; basis (r, c, t) lexicographic."""

    def __init__(self, base: Algebra, n: int, label: Optional[str] = None):
        super().__init__()
        self.base = base
        self.n = n
        self.F = base.F
        self.dim = n * n * base.dim
        one = base.one()
        self._unit = {}
        for r in range(n):
            for t, v in one.c.items():
                self._unit[self._idx(r, r, t)] = v
        self.label = label or f"M{n}({base.label})"
        self.brauer_symbols = base.brauer_symbols

    def _idx(self, r: int, c: int, t: int) -> int:
        return (r * self.n + c) * self.base.dim + t

    def _unidx(self, i: int):
        t = i % self.base.dim
        rc = i // self.base.dim
        return rc // self.n, rc % self.n, t

    def mul_bb(self, i, j):
        r1, c1, t1 = self._unidx(i)
        r2, c2, t2 = self._unidx(j)
        if c1 != r2:
            return {}
        prod = self.base._mul_bb_cached(t1, t2)
        return {self._idx(r1, c2, t): v for t, v in prod.items()}

    def basis_name(self, i):
        r, c, t = self._unidx(i)
        bn = self.base.basis_name(t)
        return f"E{r}{c}" if bn == "1" else f"E{r}{c}*{bn}"

    def trd_vec(self):
        tv = self.base.trd_vec()
        if tv is None:
            return None
        F = self.F
        out = [F.zero()] * self.dim
        for r in range(self.n):
            for t in range(self.base.dim):
                out[self._idx(r, r, t)] = tv[t]
        return out

    @property
    def deg(self):
        d = self.base.deg
        return None if d is None else self.n * d

    def _center_basis_structured(self):
        F = self.F
        out = []
        for z in center_basis(self.base):
            v = [F.zero()] * self.dim
            for r in range(self.n):
                for t, c in enumerate(z):
                    if not F.is_zero(c):
                        v[self._idx(r, r, t)] = c
            out.append(v)
        return out

    def from_matrix(self, M: list) -> El:
        """Element from an n x n array of base-algebra Els (or sparse dicts)."""
        coords = {}
        for r in range(self.n):
            for c in range(self.n):
                entry = M[r][c]
                ec = entry.c if isinstance(entry, El) else entry
                for t, v in ec.items():
                    if not self.F.is_zero(v):
                        coords[self._idx(r, c, t)] = v
        return El(self, coords)

    def to_matrix(self, x: El) -> list:
        out = [[self.base.zero() for _ in range(self.n)] for _ in range(self.n)]
        for i, v in x.c.items():
            r, c, t = self._unidx(i)
            out[r][c] = out[r][c] + v * self.base.basis_el(t)
        return out


class TensorAlgebra(Algebra):
    """Tensor product over the common base field; basis pairs (i, j)."""

    def __init__(self, A: Algebra, B: Algebra, label: Optional[str] = None):
        super().__init__()
        if A.F != B.F:
            raise UnsupportedInputError("tensor factors must share the base field")
        self.A, self.B = A, B
        self.F = A.F
        self.dim = A.dim * B.dim
        self._unit = {}
        for i, u in A._unit.items():
            for j, v in B._unit.items():
                self._unit[i * B.dim + j] = self.F.mul(u, v)
        self.label = label or f"{A.label}(x){B.label}"
        if A.brauer_symbols is not None and B.brauer_symbols is not None:
            self.brauer_symbols = list(A.brauer_symbols) + list(B.brauer_symbols)

    def _unidx(self, i):
        return i // self.B.dim, i % self.B.dim

    def idx(self, i, j):
        return i * self.B.dim + j

    def mul_bb(self, i, j):
        a1, b1 = self._unidx(i)
        a2, b2 = self._unidx(j)
        pa = self.A._mul_bb_cached(a1, a2)
        if not pa:
            return {}
        pb = self.B._mul_bb_cached(b1, b2)
        if not pb:
            return {}
        F = self.F
        out = {}
        for ka, va in pa.items():
            for kb, vb in pb.items():
                out[self.idx(ka, kb)] = F.mul(va, vb)
        return out

    def basis_name(self, i):
        a, b = self._unidx(i)
        return f"{self.A.basis_name(a)}(x){self.B.basis_name(b)}"

    def trd_vec(self):
        ta, tb = self.A.trd_vec(), self.B.trd_vec()
        if ta is None or tb is None:
            return None
        F = self.F
        out = [F.zero()] * self.dim
        for i in range(self.A.dim):
            for j in range(self.B.dim):
                out[self.idx(i, j)] = F.mul(ta[i], tb[j])
        return out

    @property
    def deg(self):
        da, db = self.A.deg, self.B.deg
        return None if da is None or db is None else da * db

    def pure(self, x: El, y: El) -> El:
        F = self.F
        coords = {}
        for i, xi in x.c.items():
            for j, yj in y.c.items():
                coords[self.idx(i, j)] = F.mul(xi, yj)
        return El(self, coords)

    def _center_basis_structured(self):
        F = self.F
        out = []
        for za in center_basis(self.A):
            for zb in center_basis(self.B):
                v = [F.zero()] * self.dim
                for i, ca in enumerate(za):
                    if F.is_zero(ca):
                        continue
                    for j, cb in enumerate(zb):
                        if not F.is_zero(cb):
                            v[self.idx(i, j)] = F.mul(ca, cb)
                out.append(v)
        return out


class OppositeAlgebra(Algebra):
    """Same space, reversed multiplication.  Brauer class unchanged for 2-torsion."""

    def __init__(self, A: Algebra):
        super().__init__()
        self.A = A
        self.F = A.F
        self.dim = A.dim
        self._unit = dict(A._unit)
        self.label = f"{A.label}^op"
        self.brauer_symbols = A.brauer_symbols

    def mul_bb(self, i, j):
        return self.A._mul_bb_cached(j, i)

    def basis_name(self, i):
        return self.A.basis_name(i)

    def trd_vec(self):
        return self.A.trd_vec()

    @property
    def deg(self):
        return self.A.deg

    def _center_basis_structured(self):
        return center_basis(self.A)


class ProductAlgebra(Algebra):
    """Direct product A x B; basis is the disjoint union."""

    def __init__(self, A: Algebra, B: Algebra, label: Optional[str] = None):
        super().__init__()
        if A.F != B.F:
            raise UnsupportedInputError("product factors must share the base field")
        self.A, self.B = A, B
        self.F = A.F
        self.dim = A.dim + B.dim
        self._unit = dict(A._unit)
        for j, v in B._unit.items():
            self._unit[A.dim + j] = v
        self.label = label or f"{A.label}x{B.label}"

    def mul_bb(self, i, j):
        if i < self.A.dim and j < self.A.dim:
            return self.A._mul_bb_cached(i, j)
        if i >= self.A.dim and j >= self.A.dim:
            prod = self.B._mul_bb_cached(i - self.A.dim, j - self.A.dim)
            return {k + self.A.dim: v for k, v in prod.items()}
        return {}

    def basis_name(self, i):
        if i < self.A.dim:
            return f"l.{self.A.basis_name(i)}"
        return f"r.{self.B.basis_name(i - self.A.dim)}"

    def inject_left(self, x: El) -> El:
        return El(self, dict(x.c))

    def inject_right(self, y: El) -> El:
        return El(self, {k + self.A.dim: v for k, v in y.c.items()})

    def _center_basis_structured(self):
        F = self.F
        out = []
        for za in center_basis(self.A):
            out.append(list(za) + [F.zero()] * self.B.dim)
        for zb in center_basis(self.B):
            out.append([F.zero()] * self.A.dim + list(zb))
        return out


# ---------------------------------------------------------------------------
# involutions

class Involution:
    """An F-linear anti-automorphism of order <= 2, given on the basis."""

    def __init__(self, A: Algebra, images: list, label: str = "sigma", verify: str = "auto"):
        self.A = A
        self.images = [dict(im) for im in images]
        self.label = label
        if verify != "none":
            self.verify(verify)

    def apply(self, x: El) -> El:
        F = self.A.F
        acc: dict = {}
        for i, xi in x.c.items():
            for k, v in self.images[i].items():
                nv = F.add(acc.get(k, F.zero()), F.mul(xi, v))
                if F.is_zero(nv):
                    acc.pop(k, None)
                else:
                    acc[k] = nv
        return El(self.A, acc)

    def __call__(self, x: El) -> El:
        return self.apply(x)

    def matrix(self) -> list:
        F = self.A.F
        n = self.A.dim
        return [[self.images[j].get(i, F.zero()) for j in range(n)] for i in range(n)]

    def verify(self, mode: str = "auto", rng_seed: int = 0, samples: int = 400) -> None:
        A = self.A
        n = A.dim
        one = A.one()
        if self.apply(one) != one:
            raise CertificationError(f"{self.label}: does not fix the unit")
        for i in range(n):
            b = A.basis_el(i)
            if self.apply(self.apply(b)) != b:
                raise CertificationError(f"{self.label}: not an involution on basis {i}")
        if mode == "auto":
            mode = "full" if n <= 32 else "sample"
        if mode == "full":
            pairs = ((i, j) for i in range(n) for j in range(n))
        else:
            rng = random.Random(rng_seed)
            pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for i, j in pairs:
            x, y = A.basis_el(i), A.basis_el(j)
            if self.apply(A.mul(x, y)) != A.mul(self.apply(y), self.apply(x)):
                raise CertificationError(f"{self.label}: anti-multiplicativity fails at ({i},{j})")

    def sym_basis(self) -> list:
        """Basis of Sym(A, sigma) = ker(sigma - id), as dense vectors."""
        F = self.A.F
        M = self.matrix()
        n = self.A.dim
        N = [[F.sub(M[i][j], F.one() if i == j else F.zero()) for j in range(n)] for i in range(n)]
        return kernel(F, N)

    def alt_basis(self) -> list:
        """Basis of Alt(A, sigma) = {x - sigma(x)}, as dense vectors."""
        F = self.A.F
        n = self.A.dim
        rows = []
        for i in range(n):
            x = self.A.basis_el(i)
            d = x - self.apply(x)
            rows.append(d.dense())
        R, piv, r = rref(F, rows)
        return [R[i] for i in range(r)]

    def symd_basis(self) -> list:
        """Basis of {x + sigma(x)}, as dense vectors."""
        F = self.A.F
        rows = []
        for i in range(self.A.dim):
            x = self.A.basis_el(i)
            rows.append((x + self.apply(x)).dense())
        R, piv, r = rref(F, rows)
        return [R[i] for i in range(r)]


def involution_on_tensor(T: TensorAlgebra, sA: Involution, sB: Involution, label=None) -> Involution:
    """sA (x) sB on a tensor product."""
    imgs = []
    for idx in range(T.dim):
        a, b = T._unidx(idx)
        ia, ib = sA.images[a], sB.images[b]
        out = {}
        for ka, va in ia.items():
            for kb, vb in ib.items():
                out[T.idx(ka, kb)] = T.F.mul(va, vb)
        imgs.append(out)
    return Involution(T, imgs, label=label or f"{sA.label}(x){sB.label}", verify="none")


def involution_on_product(P: ProductAlgebra, sA: Involution, sB: Involution, label=None) -> Involution:
    imgs = []
    for i in range(P.A.dim):
        imgs.append(dict(sA.images[i]))
    for j in range(P.B.dim):
        imgs.append({k + P.A.dim: v for k, v in sB.images[j].items()})
    return Involution(P, imgs, label=label or f"{sA.label}x{sB.label}", verify="none")


def swap_involution(P: ProductAlgebra) -> Involution:
    """The factor swap on A x A^op style products where both sides share a basis."""
    if P.A.dim != P.B.dim:
        raise UnsupportedInputError("swap needs equal factor dimensions")
    imgs = []
    for i in range(P.A.dim):
        imgs.append({P.A.dim + i: P.F.one()})
    for j in range(P.B.dim):
        imgs.append({j: P.F.one()})
    return Involution(P, imgs, label="swap", verify="auto")


def transpose_involution(M: MatrixAlgebra) -> Involution:
    """Transpose on M_n(F) (base must be the field)."""
    if M.base.dim != 1:
        raise UnsupportedInputError("plain transpose needs a field base")
    imgs = []
    for idx in range(M.dim):
        r, c, t = M._unidx(idx)
        imgs.append({M._idx(c, r, t): M.F.one()})
    return Involution(M, imgs, label="transpose", verify="none")


def adjoint_involution(M: MatrixAlgebra, G: list, base_inv: Optional[Involution] = None,
                       label: str = "adj") -> Involution:
    """Involution X -> G^-1 theta(X)^t G on M_n(base).

    G is an n x n array of base-algebra elements (El), invertible, with
    theta(G)^t = G or -G (theta = base_inv, identity if None).  Entries of
    G^-1 are computed by solving over the matrix algebra itself.
    """
    from .linalg import inv_matrix

    base = M.base
    F = M.F
    n = M.n

    def theta(x: El) -> El:
        return base_inv.apply(x) if base_inv else x

    # invert G as a matrix over the (possibly noncommutative) base by
    # Gaussian elimination in the big algebra: solve G * Y = I column-wise
    big = M.from_matrix(G)
    Ginv = _alg_inverse(M, big)
    if Ginv is None:
        raise UnsupportedInputError("adjoint form is singular")
    Gm = G
    Ginv_m = M.to_matrix(Ginv)
    imgs = []
    for idx in range(M.dim):
        r, c, t = M._unidx(idx)
        # image of E_rc * b_t: G^-1 (theta-transpose of E_rc b_t) G
        # theta-transpose has theta(b_t) at position (c, r)
        tb = theta(base.basis_el(t))
        rowmat = [[base.zero() for _ in range(n)] for _ in range(n)]
        rowmat[c][r] = tb
        X = M.from_matrix(rowmat)
        img = M.mul(M.mul(Ginv, X), big)
        imgs.append(img.c)
    return Involution(M, imgs, label=label, verify="auto")


def _alg_inverse(A: Algebra, x: El) -> Optional[El]:
    """Inverse of x in A via the left-multiplication matrix."""
    F = A.F
    L = A.lmul_matrix(x)
    one = A.one().dense()
    y = solve(F, L, one)
    if y is None:
        return None
    inv = El(A, {i: v for i, v in enumerate(y) if not F.is_zero(v)})
    if A.mul(x, inv) != A.one() or A.mul(inv, x) != A.one():
        return None
    return inv


def alg_inverse(A: Algebra, x: El) -> Optional[El]:
    return _alg_inverse(A, x)


def involution_type(A: Algebra, sigma: Involution) -> str:
    """'orthogonal', 'symplectic', or 'unitary'.

    Unitary means sigma moves the center.  For the first kind the type is
    read off dim Sym in characteristic not 2 and from whether 1 lies in
    Alt in characteristic 2.
    """
    F = A.F
    cb = center_basis(A)
    for v in cb:
        x = El(A, {i: c for i, c in enumerate(v) if not F.is_zero(c)})
        if sigma.apply(x) != x:
            return "unitary"
    n = A.deg
    if F.char == 2:
        alt = sigma.alt_basis()
        one = A.one().dense()
        return "symplectic" if lin_span_contains(F, alt, one) else "orthogonal"
    if n is None:
        raise UnsupportedInputError("cannot type an involution without a degree")
    s = len(sigma.sym_basis())
    if s == n * (n + 1) // 2:
        return "orthogonal"
    if s == n * (n - 1) // 2:
        return "symplectic"
    raise CertificationError(f"unexpected symmetric dimension {s} for degree {n}")


# ---------------------------------------------------------------------------
# centers, idempotents, corners

def center_basis(A: Algebra) -> list:
    """Basis of the center as dense vectors.

    Structured algebras compute it from their factors; otherwise it is the
    joint commutant of the basis (or of a generating set if the algebra
    records one in _gen_indices).
    """
    structured = getattr(A, "_center_basis_structured", None)
    if structured is not None:
        return structured()
    F = A.F
    n = A.dim
    gens = getattr(A, "_gen_indices", None) or range(n)
    rows = []
    for g in gens:
        L = A.lmul_matrix(A.basis_el(g))
        R = A.rmul_matrix(A.basis_el(g))
        for r in range(n):
            rows.append([F.sub(L[r][c], R[r][c]) for c in range(n)])
    return kernel(F, rows)


def centralizer_basis(A: Algebra, elems: list) -> list:
    """Basis of the centralizer of the given elements, as dense vectors."""
    F = A.F
    n = A.dim
    rows = []
    for x in elems:
        L = A.lmul_matrix(x)
        R = A.rmul_matrix(x)
        for r in range(n):
            rows.append([F.sub(L[r][c], R[r][c]) for c in range(n)])
    return kernel(F, rows)


def center_structure(A: Algebra):
    """For an algebra whose center has dim 2: (etale, idempotent or None).

    Returns the quadratic etale description of the center and, when it is
    split, a primitive central idempotent e (the other being 1 - e).
    dim-1 centers return (None, None).
    """
    from .scalars import quad_ext_info

    F = A.F
    cb = center_basis(A)
    if len(cb) == 1:
        return None, None
    if len(cb) != 2:
        raise UnsupportedInputError(f"center has dimension {len(cb)}")
    one = A.one()
    # pick w in the center, independent of 1
    cand = []
    for v in cb:
        x = El(A, {i: c for i, c in enumerate(v) if not F.is_zero(c)})
        cand.append(x)
    w = None
    one_dense = one.dense()
    for x in cand:
        if not lin_span_contains(F, [one_dense], x.dense()):
            w = x
            break
    if w is None:
        raise CertificationError("center basis degenerate")
    # w^2 = alpha w + beta
    w2 = A.mul(w, w)
    sol = solve(F, _two_col(w.dense(), one_dense), w2.dense())
    if sol is None:
        raise CertificationError("center element fails its quadratic equation")
    alpha, beta = sol
    if F.char != 2:
        half = F.inv(F.from_int(2))
        v = w - (F.mul(alpha, half)) * one
        m = F.add(beta, F.mul(F.mul(alpha, alpha), F.div(F.one(), F.from_int(4))))
        et = quad_ext_info(F, m)
        if not et.split:
            return et, None
        r = F.sqrt(m)
        e = (one + F.inv(r) * v) * half
    else:
        if F.is_zero(alpha):
            raise CertificationError("center is not etale (inseparable element)")
        u = F.inv(alpha) * w
        c = F.div(beta, F.mul(alpha, alpha))
        et = quad_ext_info(F, c)
        if not et.split:
            return et, None
        t = None
        for cand_t in F.elements():
            if F.add(F.mul(cand_t, cand_t), cand_t) == c:
                t = cand_t
                break
        if t is None:
            raise CertificationError("split etale datum without Artin-Schreier root")
        e = u + t * one
    if A.mul(e, e) != e:
        raise CertificationError("constructed central idempotent fails e^2 = e")
    return et, e


def _two_col(u: list, v: list) -> list:
    return [[a, b] for a, b in zip(u, v)]


def corner_algebra(A: Algebra, e: El, label: str = "corner"):
    """The unital algebra e A e for a central idempotent e.

    Returns (B, embed) where embed maps B elements back into A.
    """
    F = A.F
    rows = []
    reps = []
    for i in range(A.dim):
        x = A.mul(e, A.mul(A.basis_el(i), e))
        d = x.dense()
        if not lin_span_contains(F, rows, d):
            rows.append(d)
            reps.append(x)
    dim = len(reps)
    R, piv, r = rref(F, [x.dense() for x in reps])
    # re-extract representatives in echelon form for stable coordinates
    basis = [El(A, {i: c for i, c in enumerate(row) if not F.is_zero(c)}) for row in R[:r]]

    def coords_of(x: El) -> dict:
        sol = solve(F, [list(col) for col in zip(*[b.dense() for b in basis])], x.dense())
        if sol is None:
            raise CertificationError("element not in corner span")
        return {i: v for i, v in enumerate(sol) if not F.is_zero(v)}

    table = {}
    for i in range(dim):
        for j in range(dim):
            table[(i, j)] = coords_of(A.mul(basis[i], basis[j]))
    unit = coords_of(e)
    B = ExplicitAlgebra(F, dim, table, unit, label=label, verify="none")

    def embed(x: El) -> El:
        acc = A.zero()
        for i, v in x.c.items():
            acc = acc + v * basis[i]
        return acc

    def project(x: El) -> El:
        return El(B, coords_of(A.mul(e, A.mul(x, e))))

    return B, embed, project


def restrict_involution(B: Algebra, embed, project, sigma: Involution, label="sigma|") -> Involution:
    """Restriction of an involution along a corner embedding."""
    imgs = []
    for i in range(B.dim):
        imgs.append(project(sigma.apply(embed(B.basis_el(i)))).c)
    return Involution(B, imgs, label=label, verify="auto")


# ---------------------------------------------------------------------------
# homomorphisms

class AlgebraHom:
    """Unital algebra homomorphism given by images of all basis elements."""

    def __init__(self, A: Algebra, B: Algebra, images: list, label: str = "phi"):
        self.A, self.B = A, B
        self.images = [dict(im) for im in images]
        self.label = label

    def apply(self, x: El) -> El:
        F = self.B.F
        acc: dict = {}
        for i, xi in x.c.items():
            for k, v in self.images[i].items():
                nv = F.add(acc.get(k, F.zero()), F.mul(xi, v))
                if F.is_zero(nv):
                    acc.pop(k, None)
                else:
                    acc[k] = nv
        return El(self.B, acc)

    def __call__(self, x):
        return self.apply(x)

    def verify(self, mode: str = "auto", rng_seed: int = 0, samples: int = 400) -> None:
        """Unit preservation and multiplicativity on basis pairs."""
        A, B = self.A, self.B
        if self.apply(A.one()) != B.one():
            raise CertificationError(f"{self.label}: unit not preserved")
        n = A.dim
        if mode == "auto":
            mode = "full" if n <= 40 else "sample"
        if mode == "full":
            pairs = ((i, j) for i in range(n) for j in range(n))
        else:
            rng = random.Random(rng_seed)
            pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for i, j in pairs:
            lhs = self.apply(El(A, A._mul_bb_cached(i, j)))
            rhs = B.mul(El(B, self.images[i]), El(B, self.images[j]))
            if lhs != rhs:
                raise CertificationError(f"{self.label}: multiplicativity fails at ({i},{j})")

    def is_injective(self) -> bool:
        F = self.B.F
        M = [El(self.B, im).dense() for im in self.images]
        return rank(F, M) == self.A.dim

    def is_bijective(self) -> bool:
        return self.is_injective() and self.A.dim == self.B.dim

    def respects(self, sA: Involution, sB: Involution, mode: str = "full") -> bool:
        """phi(sigma_A(x)) = sigma_B(phi(x)) on the basis."""
        for i in range(self.A.dim):
            x = self.A.basis_el(i)
            if self.apply(sA.apply(x)) != sB.apply(self.apply(x)):
                return False
        return True


def hom_on_generators(A: Algebra, B: Algebra, gen_indices: list, gen_images: list,
                      label: str = "phi") -> AlgebraHom:
    """Extend a map on generating basis elements to all of A.

    Products of the generators must span A; images are found by expressing
    each basis element as a linear combination of generator monomials.
    """
    from .linalg import SparseEchelon, inv_matrix

    F = A.F
    ech = SparseEchelon(F)
    span_rows: list = []
    span_elems_B: list = []
    one_A, one_B = A.one(), B.one()
    frontier = [(one_A, one_B)]
    ech.insert(dict(one_A.c))
    span_rows.append(one_A.dense())
    span_elems_B.append(one_B)
    gen_images = [gim if isinstance(gim, El) else El(B, gim) for gim in gen_images]
    while frontier and len(span_rows) < A.dim:
        new_frontier = []
        for xa, xb in frontier:
            for gi, gim in zip(gen_indices, gen_images):
                ya = A.mul(xa, A.basis_el(gi))
                if ech.insert(dict(ya.c)) is None:
                    continue
                yb = B.mul(xb, gim)
                span_rows.append(ya.dense())
                span_elems_B.append(yb)
                new_frontier.append((ya, yb))
        frontier = new_frontier
    if len(span_rows) != A.dim:
        raise UnsupportedInputError(f"{label}: generators span only {len(span_rows)} of {A.dim}")
    S = [list(col) for col in zip(*span_rows)]  # columns are the span elements
    Sinv = inv_matrix(F, S)
    if Sinv is None:
        raise CertificationError("span solve failed")
    images = []
    for i in range(A.dim):
        img = B.zero()
        for j in range(A.dim):
            c = Sinv[j][i]
            if not F.is_zero(c):
                img = img + c * span_elems_B[j]
        images.append(img.c)
    return AlgebraHom(A, B, images, label=label)

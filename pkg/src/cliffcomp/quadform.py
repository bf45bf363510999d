"""Quadratic spaces over an exact field, any characteristic.

A form is stored as an upper-triangular coefficient matrix M with
q(x) = x^t M x, so q is meaningful in characteristic 2 where the
polar form b_q(x, y) = q(x+y) - q(x) - q(y) has matrix M + M^t.

Regular means b_q nondegenerate.  In characteristic 2 an odd-dimensional
form is never regular; the right notion is semi-regular: the radical of
b_q is one-dimensional and q does not vanish on it.
"""

from __future__ import annotations

import random
from typing import Optional

from .errors import UnsupportedInputError
from .linalg import det, kernel, mat_mul, mat_transpose
from .scalars import Field, quad_ext_info


class QuadraticSpace:
    def __init__(self, F: Field, coeffs: list, label: Optional[str] = None):
        self.F = F
        n = len(coeffs)
        for i, row in enumerate(coeffs):
            if len(row) != n:
                raise UnsupportedInputError("coefficient matrix must be square")
            for j in range(i):
                if not F.is_zero(row[j]):
                    raise UnsupportedInputError("coefficient matrix must be upper triangular")
        self.n = n
        self.M = [list(row) for row in coeffs]
        self.label = label or "q"

    @classmethod
    def diagonal(cls, F: Field, entries: list, label: Optional[str] = None):
        n = len(entries)
        M = [[entries[i] if i == j else F.zero() for j in range(n)] for i in range(n)]
        lbl = label or "<" + ",".join(F.fmt(a) for a in entries) + ">"
        return cls(F, M, label=lbl)

    @classmethod
    def from_upper_entries(cls, F: Field, n: int, entries: dict, label=None):
        """entries maps (i, j) with i <= j to coefficients."""
        M = [[F.zero()] * n for _ in range(n)]
        for (i, j), v in entries.items():
            if i > j:
                raise UnsupportedInputError("entries must have i <= j")
            M[i][j] = v
        return cls(F, M, label=label)

    def q(self, x: list):
        F = self.F
        acc = F.zero()
        for i in range(self.n):
            if F.is_zero(x[i]):
                continue
            for j in range(i, self.n):
                if not F.is_zero(self.M[i][j]) and not F.is_zero(x[j]):
                    acc = F.add(acc, F.mul(self.M[i][j], F.mul(x[i], x[j])))
        return acc

    def polar_matrix(self) -> list:
        F = self.F
        Mt = mat_transpose(self.M)
        return [[F.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.M, Mt)]

    def bq(self, x: list, y: list):
        F = self.F
        B = self.polar_matrix()
        acc = F.zero()
        for i in range(self.n):
            if F.is_zero(x[i]):
                continue
            for j in range(self.n):
                if not F.is_zero(y[j]):
                    acc = F.add(acc, F.mul(x[i], F.mul(B[i][j], y[j])))
        return acc

    def radical(self) -> list:
        """Basis of the radical of the polar form."""
        return kernel(self.F, self.polar_matrix())

    def regularity(self) -> str:
        """'regular', 'semi-regular', or 'degenerate'."""
        F = self.F
        rad = self.radical()
        if not rad:
            return "regular"
        if F.char == 2 and self.n % 2 == 1 and len(rad) == 1:
            if not F.is_zero(self.q(rad[0])):
                return "semi-regular"
        return "degenerate"

    def is_usable(self) -> bool:
        return self.regularity() in ("regular", "semi-regular")

    def scale(self, lam) -> "QuadraticSpace":
        F = self.F
        if F.is_zero(lam):
            raise UnsupportedInputError("scaling by zero")
        M = [[F.mul(lam, v) for v in row] for row in self.M]
        return QuadraticSpace(F, M, label=f"{F.fmt(lam)}*{self.label}")

    def orthogonal_sum(self, other: "QuadraticSpace") -> "QuadraticSpace":
        F = self.F
        n, m = self.n, other.n
        M = [[F.zero()] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                M[i][j] = self.M[i][j]
        for i in range(m):
            for j in range(m):
                M[n + i][n + j] = other.M[i][j]
        return QuadraticSpace(F, M, label=f"{self.label}+{other.label}")

    def restrict(self, vectors: list, label=None) -> "QuadraticSpace":
        """The form on the span of the given (independent) vectors."""
        F = self.F
        k = len(vectors)
        Mfull = [[F.zero()] * k for _ in range(k)]
        for a in range(k):
            Mfull[a][a] = self.q(vectors[a])
            for b in range(a + 1, k):
                Mfull[a][b] = self.bq(vectors[a], vectors[b])
        return QuadraticSpace(F, Mfull, label=label or f"{self.label}|W")

    def diagonalization(self) -> list:
        """Diagonal entries of an equivalent diagonal form (char != 2 only)."""
        F = self.F
        if F.char == 2:
            raise UnsupportedInputError("no diagonal form in characteristic 2")
        B = self.polar_matrix()  # = 2 * Gram
        half = F.inv(F.from_int(2))
        G = [[F.mul(half, v) for v in row] for row in B]
        n = self.n
        basis = [[F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]

        def gram(u, v):
            acc = F.zero()
            for i in range(n):
                if F.is_zero(u[i]):
                    continue
                for j in range(n):
                    if not F.is_zero(v[j]):
                        acc = F.add(acc, F.mul(u[i], F.mul(G[i][j], v[j])))
            return acc

        out = []
        vecs = [list(b) for b in basis]
        while vecs:
            # find a vector of nonzero length, possibly after a shear
            pick = None
            for v in vecs:
                if not F.is_zero(gram(v, v)):
                    pick = v
                    break
            if pick is None:
                found = False
                for a in range(len(vecs)):
                    for b in range(a + 1, len(vecs)):
                        w = [F.add(x, y) for x, y in zip(vecs[a], vecs[b])]
                        if not F.is_zero(gram(w, w)):
                            vecs[a] = w
                            pick = w
                            found = True
                            break
                    if found:
                        break
                if pick is None:
                    # the form vanishes identically on the remaining space
                    out.extend(F.zero() for _ in vecs)
                    break
            d = gram(pick, pick)
            out.append(d)
            rest = []
            dinv = F.inv(d)
            for v in vecs:
                if v is pick:
                    continue
                c = F.mul(dinv, gram(pick, v))
                rest.append([F.sub(x, F.mul(c, y)) for x, y in zip(v, pick)])
            vecs = rest
        return out

    def symplectic_basis(self) -> list:
        """Pairs (u_i, v_i) with b(u_i, v_i) = 1, mutually orthogonal planes.

        Requires the polar form to be nondegenerate and alternating; the
        reduction below assumes b(x, x) = 0, i.e. characteristic 2.
        """
        F = self.F
        if F.char != 2:
            raise UnsupportedInputError("symplectic reduction implemented for char 2 only")
        if self.regularity() != "regular":
            raise UnsupportedInputError("symplectic basis needs a regular form")
        n = self.n
        vecs = [[F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]
        pairs = []
        while vecs:
            u = vecs[0]
            mate = None
            for v in vecs[1:]:
                if not F.is_zero(self.bq(u, v)):
                    mate = v
                    break
            if mate is None:
                raise UnsupportedInputError("polar form degenerate on remaining space")
            c = F.inv(self.bq(u, mate))
            v = [F.mul(c, x) for x in mate]
            pairs.append((u, v))
            rest = []
            for w in vecs:
                if w is u or w is mate:
                    continue
                # make w orthogonal to the plane (u, v)
                cu = self.bq(v, w)
                cv = self.bq(u, w)
                w2 = [
                    F.sub(x, F.add(F.mul(cu, uu), F.mul(cv, vv)))
                    for x, uu, vv in zip(w, u, v)
                ]
                rest.append(w2)
            vecs = rest
        return pairs

    def arf_invariant(self):
        """Arf invariant (char 2, regular even-dimensional): sum q(u_i) q(v_i)."""
        F = self.F
        if F.char != 2:
            raise UnsupportedInputError("Arf invariant lives in characteristic 2")
        acc = F.zero()
        for u, v in self.symplectic_basis():
            acc = F.add(acc, F.mul(self.q(u), self.q(v)))
        return acc

    def center_datum(self):
        """Datum of the discriminant quadratic etale algebra.

        char != 2: m = (-1)^(n(n-1)/2) det(Gram); char 2 (n even): the Arf
        invariant as an Artin-Schreier datum.
        """
        F = self.F
        if F.char == 2:
            if self.n % 2:
                raise UnsupportedInputError("odd-dimensional center datum undefined in char 2")
            return self.arf_invariant()
        B = self.polar_matrix()
        half = F.inv(F.from_int(2))
        G = [[F.mul(half, v) for v in row] for row in B]
        d = det(F, G)
        if F.is_zero(d):
            raise UnsupportedInputError("degenerate form has no discriminant datum")
        e = (self.n * (self.n - 1) // 2) % 2
        return F.neg(d) if e else d

    def discriminant_algebra(self):
        return quad_ext_info(self.F, self.center_datum())

    def to_json(self) -> dict:
        F = self.F
        return {
            "base": F.to_json(),
            "dim": self.n,
            "coeffs": [[F.fmt(v) for v in row] for row in self.M],
        }

    def __repr__(self):
        return f"QuadraticSpace({self.label}, n={self.n} over {self.F})"


def random_form(F: Field, n: int, rng: random.Random, tries: int = 200) -> QuadraticSpace:
    """A random regular (or semi-regular) n-dimensional form."""
    from fractions import Fraction

    for _ in range(tries):
        M = [[F.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                if F.char == 0:
                    M[i][j] = Fraction(rng.randint(-4, 4))
                else:
                    M[i][j] = F.from_int(rng.randrange(F.order))
        q = QuadraticSpace(F, M)
        if q.is_usable():
            return q
    raise UnsupportedInputError(f"no usable random form found in {tries} tries")


def all_small_forms(F: Field, n: int, coeff_pool: Optional[list] = None):
    """Every usable upper-triangular form with entries from the pool (tests)."""
    import itertools

    if coeff_pool is None:
        coeff_pool = list(F.elements())
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    for combo in itertools.product(coeff_pool, repeat=len(slots)):
        M = [[F.zero()] * n for _ in range(n)]
        for (i, j), v in zip(slots, combo):
            M[i][j] = v
        q = QuadraticSpace(F, M)
        if q.is_usable():
            yield q

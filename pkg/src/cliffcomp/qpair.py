"""Quadratic pairs: an involution of the first kind together with a
linear form f on the symmetric elements satisfying f(x + sigma(x)) = Trd(x).

In characteristic not 2 the form is forced: f = Trd/2 on Sym.  In
characteristic 2 the pair is extra data; it is encoded by a splitting
element l with l + sigma(l) = 1 and Trd(l s) = f(s), which is also what
the Clifford quotient construction consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .algebra import (
    Algebra,
    El,
    FieldAlgebra,
    Involution,
    MatrixAlgebra,
    QuaternionAlgebra,
    TensorAlgebra,
    involution_on_tensor,
    involution_type,
)
from .errors import CertificationError, UnsupportedInputError
from .linalg import inv_matrix, mat_transpose, solve
from .quadform import QuadraticSpace


@dataclass
class QPair:
    """An algebra with quadratic pair (A, sigma, f)."""

    A: Algebra
    sigma: Involution
    sym_rows: list
    f_on_sym: list
    ell: El
    label: str = "(A,sigma,f)"

    def f(self, s: El):
        """Evaluate f on a symmetric element."""
        F = self.A.F
        cols = [list(col) for col in zip(*self.sym_rows)]
        sol = solve(F, cols, s.dense())
        if sol is None:
            raise UnsupportedInputError("f evaluated off the symmetric subspace")
        acc = F.zero()
        for c, v in zip(sol, self.f_on_sym):
            if not F.is_zero(c):
                acc = F.add(acc, F.mul(c, v))
        return acc

    def verify(self) -> None:
        """Check the defining identities of a quadratic pair."""
        A, F = self.A, self.A.F
        one = A.one()
        if self.ell + self.sigma.apply(self.ell) != one:
            raise CertificationError(f"{self.label}: l + sigma(l) != 1")
        for t, row in enumerate(self.sym_rows):
            s = El(A, {i: v for i, v in enumerate(row) if not F.is_zero(v)})
            if self.sigma.apply(s) != s:
                raise CertificationError(f"{self.label}: symmetric basis row {t} not fixed")
            lhs = A.trd(A.mul(self.ell, s))
            if lhs != self.f_on_sym[t]:
                raise CertificationError(f"{self.label}: Trd(l s) != f(s) on row {t}")
        # f(x + sigma x) = Trd(x) on the basis
        for i in range(A.dim):
            x = A.basis_el(i)
            s = x + self.sigma.apply(x)
            if s.is_zero():
                if not F.is_zero(A.trd(x)):
                    raise CertificationError(f"{self.label}: trace identity fails at basis {i}")
                continue
            if self.f(s) != A.trd(x):
                raise CertificationError(f"{self.label}: f(x + sigma x) != Trd(x) at basis {i}")

    def involution_type(self) -> str:
        return involution_type(self.A, self.sigma)


def _solve_ell(A: Algebra, sigma: Involution, sym_rows: list, f_on_sym: list) -> El:
    """Find l with l + sigma(l) = 1 and Trd(l s_t) = f(s_t)."""
    F = A.F
    d = A.dim
    rows = []
    rhs = []
    smat = sigma.matrix()
    for r in range(d):
        row = [F.add(smat[r][c], F.one() if r == c else F.zero()) for c in range(d)]
        rows.append(row)
        rhs.append(A.one().dense()[r])
    for srow, val in zip(sym_rows, f_on_sym):
        s = El(A, {i: v for i, v in enumerate(srow) if not F.is_zero(v)})
        # Trd(l s) as a linear form in the coords of l
        coefs = []
        for i in range(d):
            coefs.append(A.trd(A.mul(A.basis_el(i), s)))
        rows.append(coefs)
        rhs.append(val)
    sol = solve(F, rows, rhs)
    if sol is None:
        raise UnsupportedInputError("no splitting element: not a quadratic pair")
    return El(A, {i: v for i, v in enumerate(sol) if not F.is_zero(v)})


def _half_trd_pair(A: Algebra, sigma: Involution, label: str) -> QPair:
    """The canonical pair in characteristic not 2: f = Trd/2, l = 1/2."""
    F = A.F
    if F.char == 2:
        raise UnsupportedInputError("canonical half-trace pair needs char != 2")
    half = F.inv(F.from_int(2))
    sym = sigma.sym_basis()
    f_vals = []
    for row in sym:
        s = El(A, {i: v for i, v in enumerate(row) if not F.is_zero(v)})
        f_vals.append(F.mul(half, A.trd(s)))
    ell = El(A, {k: F.mul(half, v) for k, v in A.one().c.items()})
    pair = QPair(A, sigma, sym, f_vals, ell, label=label)
    pair.verify()
    return pair


def pair_from_ell(A: Algebra, sigma: Involution, ell: El, label: str) -> QPair:
    """The pair with f(s) = Trd(l s) for a chosen l with l + sigma(l) = 1."""
    F = A.F
    if ell + sigma.apply(ell) != A.one():
        raise UnsupportedInputError("l + sigma(l) != 1")
    sym = sigma.sym_basis()
    f_vals = []
    for row in sym:
        s = El(A, {i: v for i, v in enumerate(row) if not F.is_zero(v)})
        f_vals.append(A.trd(A.mul(ell, s)))
    pair = QPair(A, sigma, sym, f_vals, ell, label=label)
    pair.verify()
    return pair


def pair_from_form(q: QuadraticSpace):
    """The adjoint quadratic pair of a regular even-dimensional form.

    Returns (pair, aux) where aux carries the identification of V (x) V
    with End(V): aux["phi"](i, j) is the matrix of the rank-one map
    phi(e_i (x) e_j), aux["B"] the polar matrix, aux["A"] the matrix
    algebra, for use by the comparison with the even Clifford algebra.

    In characteristic not 2 odd dimensions are allowed as well.
    """
    F = q.F
    n = q.n
    if q.regularity() != "regular":
        raise UnsupportedInputError("adjoint pair needs a regular form")
    if F.char == 2 and n % 2:
        raise UnsupportedInputError("char 2 quadratic pairs need even dimension")
    A = MatrixAlgebra(FieldAlgebra(F), n, label=f"End({q.label})")
    B = q.polar_matrix()
    Binv = inv_matrix(F, B)
    if Binv is None:
        raise UnsupportedInputError("polar form is singular")

    # sigma(X) = B^-1 X^t B
    imgs = []
    for idx in range(A.dim):
        r, c, _ = A._unidx(idx)
        # X = E_rc; X^t = E_cr; B^-1 E_cr B has entries Binv[i][c] B[r][j]
        out = {}
        for i in range(n):
            if F.is_zero(Binv[i][c]):
                continue
            for j in range(n):
                v = F.mul(Binv[i][c], B[r][j])
                if not F.is_zero(v):
                    out[A._idx(i, j, 0)] = v
        imgs.append(out)
    sigma = Involution(A, imgs, label=f"ad({q.label})", verify="auto")

    def phi(i: int, j: int) -> El:
        # phi(e_i (x) e_j) = E_ij B as a matrix: row i gets B's row j
        out = {}
        for t in range(n):
            v = B[j][t]
            if not F.is_zero(v):
                out[A._idx(i, t, 0)] = v
        return El(A, out)

    # f on the Gamma spanning set: f(phi(e_i (x) e_i)) = q(e_i),
    # f(phi(e_i (x) e_j) + phi(e_j (x) e_i)) = b_q(e_i, e_j)
    gam_elems = []
    gam_vals = []
    for i in range(n):
        gam_elems.append(phi(i, i))
        gam_vals.append(q.q([F.one() if t == i else F.zero() for t in range(n)]))
    for i in range(n):
        for j in range(i + 1, n):
            gam_elems.append(phi(i, j) + phi(j, i))
            gam_vals.append(B[i][j])
    sym = sigma.sym_basis()
    # express each symmetric basis row in the Gamma span
    cols = [list(col) for col in zip(*[g.dense() for g in gam_elems])]
    f_vals = []
    for row in sym:
        sol = solve(F, cols, list(row))
        if sol is None:
            raise CertificationError("Gamma set fails to span the symmetric elements")
        acc = F.zero()
        for c, v in zip(sol, gam_vals):
            if not F.is_zero(c):
                acc = F.add(acc, F.mul(c, v))
        f_vals.append(acc)
    ell = _solve_ell(A, sigma, sym, f_vals)
    pair = QPair(A, sigma, sym, f_vals, ell, label=f"Ad({q.label})")
    pair.verify()
    aux = {"A": A, "B": B, "Binv": Binv, "phi": phi, "q": q}
    return pair, aux


def pair_on_quaternion_tensor(Q1: QuaternionAlgebra, Q2: QuaternionAlgebra,
                              ell_choice: Optional[El] = None):
    """The canonical quadratic pair on Q1 (x) Q2 with sigma = gamma (x) gamma.

    In characteristic 2 the pair is induced by a splitting element; the
    default is i1 (x) 1, whose trace condition holds because Trd(i1) = 1.
    """
    A = TensorAlgebra(Q1, Q2)
    sigma = involution_on_tensor(A, Q1.gamma(), Q2.gamma(), label="gamma(x)gamma")
    sigma.verify("auto")
    F = A.F
    if F.char != 2:
        return _half_trd_pair(A, sigma, label=f"({A.label},can)")
    if ell_choice is None:
        ell_choice = A.pure(Q1.basis_el(1), Q2.one())
    return pair_from_ell(A, sigma, ell_choice, label=f"({A.label},l)")

"""Shared helpers: independent involution typing and center probes."""

from math import isqrt

from cliffcomp.algebra import El, center_basis, involution_type
from cliffcomp.scalars import quad_ext_info


def _center_elements(A, cb):
    F = A.F
    return [El(A, {i: c for i, c in enumerate(v) if not F.is_zero(c)}) for v in cb]


def computed_involution_type(A, tau, cb=None) -> str:
    """Type an involution from first principles, without needing A.deg.

    Unitary iff the center moves; otherwise read the symmetric dimension
    against z * m(m+1)/2 vs z * m(m-1)/2 over the base field (char != 2),
    or use the alternating criterion in characteristic 2.
    """
    F = A.F
    if cb is None:
        cb = center_basis(A)
    for x in _center_elements(A, cb):
        if tau.apply(x) != x:
            return "unitary"
    if F.char == 2:
        return involution_type(A, tau)
    s = len(tau.sym_basis())
    zdim = len(cb)
    m = isqrt(A.dim // zdim)
    if s == zdim * m * (m + 1) // 2:
        return "orthogonal"
    if s == zdim * m * (m - 1) // 2:
        return "symplectic"
    raise AssertionError(f"symmetric dimension {s} fits no type for dim {A.dim}")


def central_etale_split(A, cb) -> bool:
    """Split flag of a dimension-2 center with the given basis."""
    from cliffcomp.linalg import lin_span_contains, solve

    F = A.F
    assert len(cb) == 2
    one = A.one().dense()
    w = None
    for x in _center_elements(A, cb):
        if not lin_span_contains(F, [one], x.dense()):
            w = x
            break
    assert w is not None, "center basis degenerate"
    w2 = (w * w).dense()
    cols = [[a, b] for a, b in zip(w.dense(), one)]
    sol = solve(F, cols, w2)
    assert sol is not None, "central element fails a quadratic equation"
    alpha, beta = sol
    if F.char != 2:
        quarter = F.inv(F.from_int(4))
        m = F.add(beta, F.mul(F.mul(alpha, alpha), quarter))
        return quad_ext_info(F, m).split
    assert not F.is_zero(alpha), "center not etale"
    return quad_ext_info(F, F.div(beta, F.mul(alpha, alpha))).split

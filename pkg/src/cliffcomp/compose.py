"""Explicit composition homomorphisms at the predicted minimal degrees.

construct_composition builds, for a form or pair source and a requested
target type, an algebra with involution (B, tau) together with a certified
homomorphism alpha from the even Clifford algebra C such that
tau . alpha = alpha . sigma_bar.  The degree of B over its center matches
the minimal-degree formula (exactly when the formula is exact, by a
divisibility check otherwise) and witness.verify() recomputes every
certificate from scratch.
"""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import CertificationError, NotCoveredError, UnsupportedInputError
from .scalars import Field, RationalField, EtaleQuadratic, squarefree_part
from .linalg import kernel
from .algebra import (
    Algebra,
    AlgebraHom,
    El,
    ExplicitAlgebra,
    FieldAlgebra,
    Involution,
    MatrixAlgebra,
    OppositeAlgebra,
    ProductAlgebra,
    QuaternionAlgebra,
    TensorAlgebra,
    adjoint_involution,
    alg_inverse,
    center_basis,
    center_structure,
    corner_algebra,
    hom_on_generators,
    involution_on_tensor,
    involution_type,
    restrict_involution,
    swap_involution,
)
from .quadform import QuadraticSpace
from .clifford import CliffordAlgebra, even_clifford, PairCliffordData
from .brauer import (
    BrauerClass,
    RestrictedClass,
    trivial_class,
    clifford_class_of_form,
    etale_base_of,
    quaternion_model,
    quaternion_symbol_of,
)
from .mcd import (
    InvariantProfile,
    McdResult,
    mcd_first_kind,
    mcd_unitary,
    admissible_degree,
    profile_from_form,
    profile_from_pair_clifford,
    EXACT,
    NOT_COVERED,
)

ORTH, SYMP = "orthogonal", "symplectic"


# ---------------------------------------------------------------------------
# small involution helpers

def hat_involution(Q: QuaternionAlgebra) -> Involution:
    """The orthogonal involution on a quaternion algebra fixing i and j."""
    if Q.F.char == 2:
        raise UnsupportedInputError("orthogonal quaternion involution needs char != 2")
    F = Q.F
    imgs = [{0: F.one()}, {1: F.one()}, {2: F.one()}, {3: F.neg(F.one())}]
    return Involution(Q, imgs, label="hat", verify="full")


def etale_algebra(S: EtaleQuadratic):
    """A quadratic field datum as a 2-dimensional explicit algebra, together
    with its standard involution."""
    if S.split:
        raise UnsupportedInputError("split etale data are handled by product targets")
    F = S.field
    one = F.one()
    ww = {0: S.datum, 1: one} if S.char2 else {0: S.datum}
    table = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}, (1, 1): ww}
    E = ExplicitAlgebra(F, 2, table, {0: one}, label="S", verify="full",
                        names=["1", "w"])
    imgs = []
    for t in range(2):
        c0, c1 = (one, F.zero()) if t == 0 else (F.zero(), one)
        d0, d1 = S.conj_coords(c0, c1)
        imgs.append({k: v for k, v in ((0, d0), (1, d1)) if not F.is_zero(v)})
    iota = Involution(E, imgs, label="iota", verify="full")
    return E, iota


def model_algebra(F: Field, cls: BrauerClass) -> Optional[QuaternionAlgebra]:
    """A quaternion algebra in the given class, or None for the trivial one."""
    a, b = quaternion_model(cls)
    one = F.one()
    if a == one and b == one:
        return None
    return QuaternionAlgebra(F, a, b)


# ---------------------------------------------------------------------------
# involution extension by an inner twist

def _constraint_kernel(B: Algebra, constraints: list, sigma0: Involution, eps) -> list:
    """Basis of {u : u sigma0(x) = y u for all (x, y), sigma0(u) = eps u}."""
    F = B.F
    dim = B.dim
    space = [[F.one() if i == j else F.zero() for j in range(dim)] for i in range(dim)]

    def shrink(image_of):
        nonlocal space
        if not space:
            return
        cols = [image_of(El(B, {i: c for i, c in enumerate(v) if not F.is_zero(c)}))
                for v in space]
        rows = [[cols[j].c.get(i, F.zero()) for j in range(len(cols))] for i in range(dim)]
        ker = kernel(F, rows)
        new_space = []
        for kv in ker:
            acc = [F.zero()] * dim
            for j, kc in enumerate(kv):
                if F.is_zero(kc):
                    continue
                for i in range(dim):
                    acc[i] = F.add(acc[i], F.mul(kc, space[j][i]))
            new_space.append(acc)
        space = new_space

    for x, y in constraints:
        sx = sigma0.apply(x)
        shrink(lambda u, sx=sx, y=y: B.mul(u, sx) - B.mul(y, u))
    shrink(lambda u: sigma0.apply(u) - eps * u)
    return space


def extend_involution(B: Algebra, constraints: list, sigma0: Involution,
                      want: Optional[str] = None, seed: int = 0, tries: int = 64):
    """An involution tau = Int(u) . sigma0 on B with tau(x) = y for every
    constraint pair (x, y), of the wanted type when one is reachable.

    Returns (tau, u, eps) or None.  u ranges over the solution space of the
    intertwining equations; different invertible u can realize different
    types, so several candidates are classified before giving up.
    """
    F = B.F
    one = F.one()
    if all(sigma0.apply(x) == y for x, y in constraints):
        ttype = involution_type(B, sigma0)
        if want is None or ttype == want:
            return sigma0, B.one(), one
    if F.char == 2:
        eps_options = [one]
    else:
        eps_options = [one, F.neg(one)]
        if want is not None and involution_type(B, sigma0) != want:
            # a twist by an alternating unit flips the first-kind type
            eps_options.reverse()
    rng = random.Random(seed)
    fallback = None
    for eps in eps_options:
        space = _constraint_kernel(B, constraints, sigma0, eps)
        if not space:
            continue
        queue = list(space)
        for i in range(len(space)):
            for j in range(i + 1, len(space)):
                queue.append([F.add(a, b) for a, b in zip(space[i], space[j])])
        budget = tries
        while budget > 0:
            budget -= 1
            if queue:
                vec = queue.pop(0)
            else:
                vec = [F.zero()] * B.dim
                for v in space:
                    c = F.from_int(rng.randint(-2, 2))
                    if F.is_zero(c):
                        continue
                    for i in range(B.dim):
                        vec[i] = F.add(vec[i], F.mul(c, v[i]))
            u = El(B, {i: c for i, c in enumerate(vec) if not F.is_zero(c)})
            if u.is_zero():
                continue
            uinv = alg_inverse(B, u)
            if uinv is None:
                continue
            imgs = [B.mul(B.mul(u, sigma0.apply(B.basis_el(i))), uinv).c
                    for i in range(B.dim)]
            tau = Involution(B, imgs, label="tau", verify="auto")
            ttype = involution_type(B, tau)
            if want is None or ttype == want:
                return tau, u, eps
            if fallback is None:
                fallback = (tau, u, eps)
    if want is None and fallback is not None:
        return fallback
    return None


# ---------------------------------------------------------------------------
# sources

@dataclass
class SourceData:
    """A source (C, sigma_bar) together with its invariant profile."""

    profile: InvariantProfile
    C0: Algebra
    sigma: Involution
    q: Optional[QuadraticSpace] = None
    pair_data: Optional[PairCliffordData] = None
    label: str = ""


def source_from_form(q: QuadraticSpace) -> SourceData:
    prof = profile_from_form(q)
    C, C0, embed, project, tau = even_clifford(q)
    return SourceData(prof, C0, tau, q=q, label=q.label)


def source_from_pair(data: PairCliffordData) -> SourceData:
    prof = profile_from_pair_clifford(data)
    return SourceData(prof, data.C, data.sigma_bar, pair_data=data,
                      label=getattr(data.C, "label", "C"))


def _source_generators(src: SourceData) -> list:
    """Elements generating the source algebra, kept small for the solver."""
    C0 = src.C0
    if src.pair_data is not None:
        return [El(C0, dict(c)) for c in src.pair_data.a_images]
    q = src.q
    F = q.F
    diag = all(F.is_zero(q.M[i][j]) for i in range(q.n) for j in range(i + 1, q.n))
    anisotropic = all(not F.is_zero(q.M[i][i]) for i in range(q.n))
    masks = [m for m in range(1 << q.n) if bin(m).count("1") % 2 == 0]
    pos = {m: t for t, m in enumerate(masks)}
    if diag and anisotropic:
        # adjacent products generate the rest up to scalars
        wanted = [(1 << i) | (1 << (i + 1)) for i in range(q.n - 1)]
    else:
        wanted = [(1 << i) | (1 << j) for i in range(q.n) for j in range(i + 1, q.n)]
    return [C0.basis_el(pos[m]) for m in wanted]


def _constraints_for(src: SourceData, alpha_of) -> list:
    return [(alpha_of(g), alpha_of(src.sigma.apply(g))) for g in _source_generators(src)]


# ---------------------------------------------------------------------------
# corner data for split centers

def _corner_class(F: Field, corner: Algebra, seeds: Optional[list] = None) -> BrauerClass:
    if not isinstance(F, RationalField):
        return trivial_class(F)
    if corner.dim == 1:
        return trivial_class(F)
    if corner.dim == 4:
        return BrauerClass(F, [quaternion_symbol_of(corner)])
    got = _compressed_class(F, corner, seeds or [])
    if got is not None:
        return got
    raise UnsupportedInputError(
        f"cannot certify the class of a dimension-{corner.dim} factor at this scale"
    )


def _scalar_of(A: Algebra, x: El):
    """lam with x = lam * 1, or None."""
    F = A.F
    one = A.one()
    if not x.c:
        return F.zero()
    k, v = next(iter(one.c.items()))
    if k not in x.c:
        return None
    lam = F.mul(x.c[k], F.inv(v))
    scaled = El(A, {kk: F.mul(lam, vv) for kk, vv in one.c.items()})
    return lam if scaled == x else None


def _sqrt_rational(x):
    if x <= 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _compressed_class(F: Field, corner: Algebra, seeds: list) -> Optional[BrauerClass]:
    """Class via compression by an explicit idempotent.

    pAp has the same class as A for any nonzero idempotent p, so a square
    root of 1 in the corner cuts the problem down to a certifiable size.
    """
    one = corner.one()
    half = F.inv(F.add(F.one(), F.one()))
    basis = [corner.basis_el(i) for i in range(corner.dim)]
    pool = list(seeds)
    pool.extend(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            pool.append(basis[i] + basis[j])
            pool.append(basis[i] - basis[j])
    budget = 60
    for w in pool:
        lam = _scalar_of(corner, w * w)
        if lam is None or F.is_zero(lam):
            continue
        s = _sqrt_rational(lam)
        if s is None:
            continue
        u = El(corner, {k: F.mul(F.inv(s), v) for k, v in w.c.items()})
        if u == one or u == El(corner, {k: F.neg(v) for k, v in one.c.items()}):
            continue
        p = El(corner, {k: F.mul(half, v) for k, v in (one + u).c.items()})
        for idem in (p, one - p):
            budget -= 1
            sub, _, _ = corner_algebra(corner, idem, label=f"{corner.label}c")
            if sub.dim == 1:
                return trivial_class(F)
            if sub.dim == 4:
                return BrauerClass(F, [quaternion_symbol_of(sub)])
        if budget <= 0:
            break
    return None


def _split_corners(src: SourceData) -> list:
    """Both corner algebras of a split-center source, with certified classes.

    For degree 2 mod 4 the two classes must agree (a structure invariant of
    the even Clifford algebra), and in all cases they must reproduce the
    classes stored in the invariant profile.
    """
    C0 = src.C0
    F = C0.F
    prof = src.profile
    if not prof.z_split:
        raise UnsupportedInputError("corner data needs a split center")
    if src.pair_data is not None and src.pair_data.center_idempotent is not None:
        e = src.pair_data.center_idempotent
        if not isinstance(e, El):
            e = El(C0, dict(e))
    else:
        et, e = center_structure(C0)
        if e is None:
            raise CertificationError("profile says split center, algebra disagrees")
    out = []
    for idem in (e, C0.one() - e):
        corner, embed, project = corner_algebra(C0, idem, label=f"{C0.label}^")
        seeds = [project(idem * C0.basis_el(i)) for i in range(C0.dim)]
        out.append({"B0": corner, "embed": embed, "project": project,
                    "cls": _corner_class(F, corner, seeds), "idem": idem})
    if prof.n % 4 == 2 and out[0]["cls"] != out[1]["cls"]:
        raise CertificationError("corner classes must agree in degree 2 mod 4")
    a, b = out[0]["cls"], out[1]["cls"]
    matches = (a == prof.c_plus and b == prof.c_minus) or (
        a == prof.c_minus and b == prof.c_plus
    )
    if not matches:
        raise CertificationError("corner classes disagree with the invariant profile")
    return out


# ---------------------------------------------------------------------------
# full-Clifford targets for field centers (form sources)

def _lambda_pool(F: Field, classes: list, extra) -> list:
    """Scaling candidates: signed squarefree products of small primes and
    the primes supporting the classes in play."""
    if not isinstance(F, RationalField):
        if F.char == 2:
            return [F.one()]
        return [x for x in F.elements() if not F.is_zero(x)]
    primes = {2, 3}
    for cls in classes:
        for pl in cls.support:
            if pl.p is not None:
                primes.add(pl.p)
    if extra is not None:
        for p in _factor_small(abs(squarefree_part(extra))):
            primes.add(p)
    primes = sorted(primes)[:6]
    pool = []
    for mask in range(1 << len(primes)):
        prod = Fraction(1)
        for i, p in enumerate(primes):
            if mask >> i & 1:
                prod *= p
        pool.extend([prod, -prod])
    return pool


def _factor_small(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _disc_datum(q: QuadraticSpace):
    et = q.discriminant_algebra()
    return None if et.split else et.datum


def _scaled_even_iso(src: SourceData, lam) -> tuple:
    """The canonical isomorphism from C0 of a form onto C0 of its rescaling,
    viewed inside the full Clifford algebra of the rescaled form.

    Returns (Cfull, hom C0 -> Cfull, reversal of Cfull).
    """
    q = src.q
    F = q.F
    Cf = CliffordAlgebra(q.scale(lam))
    masks = [m for m in range(1 << q.n) if bin(m).count("1") % 2 == 0]
    pos = {m: t for t, m in enumerate(masks)}
    gens, imgs = [], []
    ilam = F.inv(lam)
    for i in range(q.n):
        for j in range(i + 1, q.n):
            m = (1 << i) | (1 << j)
            gens.append(pos[m])
            imgs.append(El(Cf, {m: ilam}))
    phi = hom_on_generators(src.C0, Cf, gens, imgs, label="rescale")
    phi.verify("full" if src.C0.dim <= 40 else "sample")
    if not phi.is_injective():
        raise CertificationError("even Clifford rescaling is not injective")
    return Cf, phi, Cf.reversal(verify="none")


def _best_rescaling(src: SourceData, objective, support: list):
    """Scaling of the source form minimizing an objective of the full
    Clifford class; returns (lam, Cfull, embedding hom, reversal)."""
    q = src.q
    F = q.F
    pool = _lambda_pool(F, [clifford_class_of_form(q)] + support, _disc_datum(q))
    best = None
    for lam in pool:
        if F.is_zero(lam):
            continue
        d = objective(clifford_class_of_form(q.scale(lam)))
        if best is None or d < best[1]:
            best = (lam, d)
            if d == 0:
                break
    lam = best[0]
    Cf, phi, rev = _scaled_even_iso(src, lam)
    return lam, Cf, phi, rev


# ---------------------------------------------------------------------------
# witnesses

@dataclass
class CompositionWitness:
    """A certified composition homomorphism alpha: (C, sigma) -> (B, tau)."""

    source: SourceData
    request: dict
    target: Algebra
    tau: Involution
    alpha: AlgebraHom
    expected: McdResult
    degree: int
    tau_type: str
    class_symbols: list
    trace: list = field(default_factory=list)
    seed: int = 0

    def verify(self, mode: str = "auto") -> dict:
        """Recompute every certificate; raises on any failure."""
        checks = {}
        self.alpha.verify("full" if self.source.C0.dim <= 40 else mode)
        checks["algebra_hom"] = True
        self.tau.verify(mode)
        checks["involution"] = True
        if not self.alpha.respects(self.source.sigma, self.tau, mode="full"):
            raise CertificationError("homomorphism does not intertwine the involutions")
        checks["intertwines"] = True
        ttype = involution_type(self.target, self.tau)
        if ttype != self.tau_type:
            raise CertificationError(f"involution type changed: {ttype}")
        kind = self.request["kind"]
        if kind == "unitary" and ttype != "unitary":
            raise CertificationError("unitary request produced a first-kind involution")
        if kind == "first":
            if ttype == "unitary":
                raise CertificationError("first-kind request produced a unitary involution")
            if self.target.F.char != 2 and ttype != self.request["t"]:
                raise CertificationError(f"wanted type {self.request['t']}, got {ttype}")
        checks["type"] = ttype
        deg = _degree_over_center(self.target, unitary=(kind == "unitary"))
        if deg != self.degree:
            raise CertificationError("stored degree is stale")
        checks["degree"] = deg
        if self.expected.status == EXACT:
            if deg != self.expected.value:
                raise CertificationError(
                    f"degree {deg} does not match the exact formula value {self.expected.value}"
                )
        elif deg % self.expected.value:
            raise CertificationError(
                f"degree {deg} is not a multiple of {self.expected.value}"
            )
        checks["matches_formula"] = self.expected.status
        if self.source.profile.n % 4 == 2:
            if not self.alpha.is_injective():
                raise CertificationError("compositions in degree 2 mod 4 must be injective")
            checks["injective"] = True
        adm = admissible_degree(self.source.profile, self.request, deg)
        if not adm["ok"]:
            raise CertificationError("witness degree fails the admissibility form")
        checks["admissible"] = adm["case"]
        return checks

    def to_json(self) -> dict:
        F = self.target.F
        return {
            "source": self.source.label,
            "kind": self.request["kind"],
            "target_dim": self.target.dim,
            "degree": self.degree,
            "log2_degree": self.degree.bit_length() - 1,
            "involution_type": self.tau_type,
            "expected": self.expected.to_json(),
            "class_symbols": [[F.fmt(a), F.fmt(b)] for a, b in self.class_symbols],
            "hom_images": [
                [F.fmt(c) for c in self.alpha.apply(self.source.C0.basis_el(i)).dense()]
                for i in range(self.source.C0.dim)
            ],
            "involution_images": [
                [F.fmt(c) for c in self.tau.apply(self.target.basis_el(i)).dense()]
                for i in range(self.target.dim)
            ],
            "trace": list(self.trace),
            "seed": self.seed,
        }


def _degree_over_center(B: Algebra, unitary: bool) -> int:
    if unitary:
        if len(center_basis(B)) != 2:
            raise CertificationError("unitary target must have a quadratic etale center")
        d = math.isqrt(B.dim // 2)
        if 2 * d * d != B.dim:
            raise CertificationError("target dimension is not 2 d^2")
        return d
    d = math.isqrt(B.dim)
    if d * d != B.dim:
        raise CertificationError("target dimension is not a perfect square")
    return d


# ---------------------------------------------------------------------------
# first kind

def construct_first_kind(src: SourceData, c: BrauerClass, t: str,
                         seed: int = 0) -> CompositionWitness:
    prof = src.profile
    F = prof.F
    if F.char == 2:
        t = SYMP  # the two first-kind types coincide as target types
    expected = mcd_first_kind(prof, c, t)
    if expected.status == NOT_COVERED:
        raise NotCoveredError(f"no construction covers this case: {expected.case}")
    n = prof.n
    trace = [f"target: first kind, type {t}, case {expected.case}"]
    request = {"kind": "first", "c": c, "t": t}

    if n % 2:
        return _first_kind_from_block(
            src, src.C0, src.sigma, (lambda x: x), c, c * prof.c_odd, t,
            expected, request, trace, seed,
        )

    if prof.z_split and n % 4 == 0:
        sides = _split_corners(src)
        sides.sort(key=lambda s: c.distance(s["cls"]))
        side = sides[0]
        trace.append(f"projected to the factor of class {side['cls']}")
        sig_c = restrict_involution(side["B0"], side["embed"], side["project"],
                                    src.sigma, label="sigma^")
        return _first_kind_from_block(
            src, side["B0"], sig_c, side["project"], c, c * side["cls"], t,
            expected, request, trace, seed,
        )

    if prof.z_split:  # n = 2 mod 4: injectivity needs both corners
        return _first_kind_split_injective(src, c, t, expected, request, trace, seed)

    # field center: route through the full Clifford algebra of a rescaling
    if src.q is None:
        raise UnsupportedInputError(
            "field-center pair sources have no full-Clifford model at this scale"
        )
    lam, Cf, phi, rev = _best_rescaling(src, lambda cl: c.distance(cl), [c])
    twist = c * clifford_class_of_form(src.q.scale(lam))
    trace.append(f"rescaled the form by {F.fmt(lam)}")
    return _first_kind_from_block(
        src, Cf, rev, (lambda x: phi.apply(x)), c, twist, t,
        expected, request, trace, seed,
    )


def _first_kind_from_block(src, B0, sigma0_B0, alpha0, c, twist_cls, t,
                           expected, request, trace, seed):
    """Common tail: tensor a quaternion model of the class twist, extend the
    involution to the wanted type, doubling by a 2x2 matrix layer when the
    formula says the type switch costs a factor of 2."""
    F = src.profile.F
    G = model_algebra(F, twist_cls)
    symbols = []
    if G is None:
        B1, a1, sigma1 = B0, alpha0, sigma0_B0
    else:
        B1 = TensorAlgebra(B0, G, label=f"{B0.label}(x)Q")
        a1 = (lambda a0, TT, GG: lambda x: TT.pure(a0(x), GG.one()))(alpha0, B1, G)
        sigma1 = involution_on_tensor(B1, sigma0_B0, G.gamma())
        symbols.append((G.a, G.b))
        trace.append(f"tensored with the quaternion algebra ({F.fmt(G.a)},{F.fmt(G.b)})")

    def finish(B, alpha_of, sigma_start, layer_note):
        got = extend_involution(B, _constraints_for(src, alpha_of), sigma_start,
                                want=(None if F.char == 2 else t), seed=seed)
        if got is None:
            return None
        tau, u, eps = got
        images = [alpha_of(src.C0.basis_el(i)).c for i in range(src.C0.dim)]
        alpha = AlgebraHom(src.C0, B, images, label="alpha")
        deg = _degree_over_center(B, unitary=False)
        trace.append(layer_note)
        return CompositionWitness(src, request, B, tau, alpha, expected, deg,
                                  involution_type(B, tau), symbols, trace, seed)

    deg1 = _degree_over_center(B1, unitary=False)
    if deg1 == expected.value or (expected.status != EXACT and deg1 % expected.value == 0):
        wit = finish(B1, a1, sigma1, f"involution extended on a degree-{deg1} target")
        if wit is not None:
            return wit
        if expected.status == EXACT:
            raise CertificationError(
                "the formula promises this degree but no involution extension was found"
            )
    elif deg1 < expected.value:
        # the formula includes a type-switch factor: a direct extension at
        # the lower degree must not exist
        probe = extend_involution(B1, _constraints_for(src, a1), sigma1,
                                  want=t, seed=seed, tries=16)
        if probe is not None:
            raise CertificationError(
                f"found a type-{t} extension below the formula degree"
            )
        trace.append(f"no type-{t} extension exists at degree {deg1}; doubling")

    M = MatrixAlgebra(B1, 2, label=f"M2({B1.label})")
    zero, one = B1.zero(), B1.one()

    def a2(x):
        y = a1(x)
        return M.from_matrix([[y, zero], [zero, y]])

    sigma2 = adjoint_involution(M, [[one, zero], [zero, one]], base_inv=sigma1,
                                label="conj-transpose")
    wit = finish(M, a2, sigma2, "doubled by a 2x2 matrix layer for the type switch")
    if wit is None:
        raise CertificationError("no involution extension found on the doubled target")
    return wit


def _first_kind_split_injective(src, c, t, expected, request, trace, seed):
    """n = 2 mod 4 with split center: block-diagonal target through one
    corner and the twisted image of the other, which keeps the map
    injective because the canonical involution exchanges the corners."""
    F = src.profile.F
    sides = _split_corners(src)
    side = sides[0]
    theta0 = _corner_first_kind_involution(src, side)
    G = model_algebra(F, c * side["cls"])
    symbols = []
    if G is None:
        B0, emb0, theta = side["B0"], (lambda x: x), theta0
    else:
        B0 = TensorAlgebra(side["B0"], G, label="corner(x)Q")
        emb0 = lambda x: B0.pure(x, G.one())
        theta = involution_on_tensor(B0, theta0, G.gamma())
        symbols.append((G.a, G.b))
        trace.append(f"tensored with the quaternion algebra ({F.fmt(G.a)},{F.fmt(G.b)})")
    M = MatrixAlgebra(B0, 2, label=f"M2({B0.label})")
    zero = B0.zero()
    proj = side["project"]
    sig = src.sigma

    def alpha_of(x):
        top = emb0(proj(x))
        bot = theta.apply(emb0(proj(sig.apply(x))))
        return M.from_matrix([[top, zero], [zero, bot]])

    sigma0 = adjoint_involution(M, [[B0.one(), zero], [zero, B0.one()]],
                                base_inv=theta, label="conj-transpose")
    got = extend_involution(M, _constraints_for(src, alpha_of), sigma0,
                            want=(None if F.char == 2 else t), seed=seed)
    if got is None:
        raise CertificationError("no involution extension on the two-corner target")
    tau, u, eps = got
    images = [alpha_of(src.C0.basis_el(i)).c for i in range(src.C0.dim)]
    alpha = AlgebraHom(src.C0, M, images, label="alpha")
    deg = _degree_over_center(M, unitary=False)
    trace.append("both corners mapped block-diagonally, the second one twisted")
    return CompositionWitness(src, request, M, tau, alpha, expected, deg,
                              involution_type(M, tau), symbols, trace, seed)


def _corner_first_kind_involution(src: SourceData, side) -> Involution:
    """A first-kind involution on a corner when the canonical one swaps the
    corners (n = 2 mod 4): twist the reversal by an anisotropic vector.
    The twist fixes the center pointwise, so it restricts to the corner."""
    if src.q is None:
        raise UnsupportedInputError(
            "pair sources in degree 2 mod 4 have no corner involution at this scale"
        )
    q = src.q
    F = q.F
    C = CliffordAlgebra(q)
    rev = C.reversal(verify="none")
    vec = _anisotropic_vector(q)
    v = C.embed_vector(vec)
    ivq = F.inv(q.q(vec))
    masks = [m for m in range(1 << q.n) if bin(m).count("1") % 2 == 0]
    imgs = []
    for m in masks:
        y = ivq * (v * rev.apply(El(C, {m: F.one()})) * v)
        imgs.append({_pos(masks, mm): cc for mm, cc in y.c.items()})
    theta_c0 = Involution(src.C0, imgs, label="vector-twist", verify="auto")
    return restrict_involution(side["B0"], side["embed"], side["project"], theta_c0,
                               label="theta")


def _anisotropic_vector(q: QuadraticSpace) -> list:
    F = q.F
    zero, one = F.zero(), F.one()
    cands = []
    for i in range(q.n):
        cands.append([one if j == i else zero for j in range(q.n)])
    for i in range(q.n):
        for j in range(i + 1, q.n):
            cands.append([one if k in (i, j) else zero for k in range(q.n)])
    rng = random.Random(7)
    for _ in range(64):
        cands.append([F.from_int(rng.randint(0, 2)) for _ in range(q.n)])
    for x in cands:
        if not F.is_zero(q.q(x)):
            return x
    raise UnsupportedInputError("no anisotropic vector found for the corner twist")


def _pos(masks: list, m: int) -> int:
    lo, hi = 0, len(masks)
    while lo < hi:
        mid = (lo + hi) // 2
        if masks[mid] < m:
            lo = mid + 1
        else:
            hi = mid
    if lo >= len(masks) or masks[lo] != m:
        raise CertificationError("odd component in an even-part involution")
    return lo


# ---------------------------------------------------------------------------
# unitary

def construct_unitary(src: SourceData, S: EtaleQuadratic, c0: BrauerClass,
                      seed: int = 0) -> CompositionWitness:
    prof = src.profile
    F = prof.F
    expected = mcd_unitary(prof, S, c0)
    if expected.status == NOT_COVERED:
        raise NotCoveredError(f"no construction covers this case: {expected.case}")
    n = prof.n
    request = {"kind": "unitary", "S": S, "c0": c0}
    trace = [f"target: unitary, case {expected.case}"]

    if n % 4 == 2 and not prof.z_split and not S.split and prof.z_etale.is_isomorphic(S):
        return _unitary_center_matches(src, S, c0, expected, request, trace, seed)

    if n % 4 == 2 and prof.z_split:
        if not S.split:
            raise NotCoveredError(f"no construction covers this case: {expected.case}")
        return _unitary_split_injective(src, c0, expected, request, trace, seed)

    # remaining cases factor through a block with a first-kind involution
    if n % 2:
        block = {"B0": src.C0, "alpha0": (lambda x: x), "sigma0": src.sigma,
                 "cls": prof.c_odd}
    elif prof.z_split:  # n = 0 mod 4
        sides = _split_corners(src)
        sides.sort(key=lambda s: _dist_over_s(F, S, c0, s["cls"]))
        side = sides[0]
        sig_c = restrict_involution(side["B0"], side["embed"], side["project"],
                                    src.sigma, label="sigma^")
        block = {"B0": side["B0"], "alpha0": side["project"], "sigma0": sig_c,
                 "cls": side["cls"]}
        trace.append(f"projected to the factor of class {side['cls']}")
    else:
        if src.q is None:
            raise UnsupportedInputError(
                "field-center pair sources have no full-Clifford model at this scale"
            )
        lam, Cf, phi, rev = _best_rescaling(
            src, lambda cl: _dist_over_s(F, S, c0, cl), [c0]
        )
        trace.append(f"rescaled the form by {F.fmt(lam)}")
        block = {"B0": Cf, "alpha0": (lambda x: phi.apply(x)), "sigma0": rev,
                 "cls": clifford_class_of_form(src.q.scale(lam))}

    symbols = []
    B0, alpha0, sigma0 = block["B0"], block["alpha0"], block["sigma0"]
    if _dist_over_s(F, S, c0, block["cls"]) == 1:
        G = model_algebra(F, c0 * block["cls"])
        if G is None:
            raise CertificationError("distance-1 twist has a trivial quaternion model")
        T = TensorAlgebra(B0, G, label=f"{B0.label}(x)Q")
        alpha0 = (lambda a0, TT, GG: lambda x: TT.pure(a0(x), GG.one()))(alpha0, T, G)
        sigma0 = involution_on_tensor(T, sigma0, G.gamma())
        symbols.append((G.a, G.b))
        trace.append(f"tensored with the quaternion algebra ({F.fmt(G.a)},{F.fmt(G.b)})")
        B0 = T

    if S.split:
        B = ProductAlgebra(B0, OppositeAlgebra(B0), label=f"{B0.label}x op")
        tau = swap_involution(B)
        sig = src.sigma

        def alpha_of(x):
            y = alpha0(sig.apply(x))
            return B.inject_left(alpha0(x)) + B.inject_right(El(B.B, dict(y.c)))

        trace.append("paired with the opposite algebra under the swap involution")
    else:
        E, iota = etale_algebra(S)
        B = TensorAlgebra(B0, E, label=f"{B0.label}(x)S")
        tau = involution_on_tensor(B, sigma0, iota)
        alpha_of = (lambda a0, BB, EE: lambda x: BB.pure(a0(x), EE.one()))(alpha0, B, E)
        trace.append("extended scalars to S; the involution conjugates S")

    images = [alpha_of(src.C0.basis_el(i)).c for i in range(src.C0.dim)]
    alpha = AlgebraHom(src.C0, B, images, label="alpha")
    deg = _degree_over_center(B, unitary=True)
    return CompositionWitness(src, request, B, tau, alpha, expected, deg,
                              "unitary", symbols, trace, seed)


def _dist_over_s(F: Field, S: EtaleQuadratic, c0: BrauerClass, cls: BrauerClass) -> int:
    if not isinstance(F, RationalField):
        return 0
    if S.split:
        return c0.distance(cls)
    sb = etale_base_of(S)
    return RestrictedClass(c0, sb).distance(RestrictedClass(cls, sb))


def _unitary_center_matches(src, S, c0, expected, request, trace, seed):
    """n = 2 mod 4 with Z a field isomorphic to S: the source algebra itself
    (possibly twisted by a quaternion layer) is the minimal target."""
    F = src.profile.F
    d = _dist_over_s(F, S, c0, src.profile.c_base)
    symbols = []
    if d == 0:
        B, tau = src.C0, src.sigma
        alpha_of = lambda x: x
        trace.append("the source algebra itself realizes the minimal degree")
    else:
        G = model_algebra(F, c0 * src.profile.c_base)
        if G is None:
            raise CertificationError("distance-1 twist has a trivial quaternion model")
        B = TensorAlgebra(src.C0, G, label=f"{src.C0.label}(x)Q")
        tau = involution_on_tensor(B, src.sigma, G.gamma())
        alpha_of = lambda x: B.pure(x, G.one())
        symbols.append((G.a, G.b))
        trace.append(f"tensored with the quaternion algebra ({F.fmt(G.a)},{F.fmt(G.b)})")
    images = [alpha_of(src.C0.basis_el(i)).c for i in range(src.C0.dim)]
    alpha = AlgebraHom(src.C0, B, images, label="alpha")
    deg = _degree_over_center(B, unitary=True)
    return CompositionWitness(src, request, B, tau, alpha, expected, deg,
                              "unitary", symbols, trace, seed)


def _unitary_split_injective(src, c0, expected, request, trace, seed):
    """n = 2 mod 4, split center and split S: one corner paired with its
    opposite; the canonical involution exchanges the corners, so the map
    stays injective."""
    F = src.profile.F
    sides = _split_corners(src)
    side = sides[0]
    G = model_algebra(F, c0 * side["cls"])
    symbols = []
    if G is None:
        B0, emb0 = side["B0"], (lambda x: x)
    else:
        B0 = TensorAlgebra(side["B0"], G, label="corner(x)Q")
        emb0 = lambda x: B0.pure(x, G.one())
        symbols.append((G.a, G.b))
        trace.append(f"tensored with the quaternion algebra ({F.fmt(G.a)},{F.fmt(G.b)})")
    B = ProductAlgebra(B0, OppositeAlgebra(B0), label=f"{B0.label}x op")
    tau = swap_involution(B)
    proj = side["project"]
    sig = src.sigma

    def alpha_of(x):
        y = emb0(proj(sig.apply(x)))
        return B.inject_left(emb0(proj(x))) + B.inject_right(El(B.B, dict(y.c)))

    images = [alpha_of(src.C0.basis_el(i)).c for i in range(src.C0.dim)]
    alpha = AlgebraHom(src.C0, B, images, label="alpha")
    deg = _degree_over_center(B, unitary=True)
    trace.append("one corner paired with its opposite under the swap involution")
    return CompositionWitness(src, request, B, tau, alpha, expected, deg,
                              "unitary", symbols, trace, seed)


# ---------------------------------------------------------------------------
# entry point

def construct_composition(source, request: dict, seed: int = 0) -> CompositionWitness:
    """Build and certify a composition witness.

    source: a QuadraticSpace, PairCliffordData, or SourceData.
    request: {"kind": "first", "c": BrauerClass, "t": str}
          or {"kind": "unitary", "S": EtaleQuadratic, "c0": BrauerClass}.
    """
    if isinstance(source, QuadraticSpace):
        src = source_from_form(source)
    elif isinstance(source, PairCliffordData):
        src = source_from_pair(source)
    elif isinstance(source, SourceData):
        src = source
    else:
        raise UnsupportedInputError(f"cannot build a source from {type(source).__name__}")
    if request["kind"] == "first":
        wit = construct_first_kind(src, request["c"], request["t"], seed=seed)
    elif request["kind"] == "unitary":
        wit = construct_unitary(src, request["S"], request["c0"], seed=seed)
    else:
        raise UnsupportedInputError(f"unknown request kind {request['kind']!r}")
    wit.verify()
    return wit


# ---------------------------------------------------------------------------
# regular representation (distance-bound witnesses)

def regular_representation(A: Algebra) -> AlgebraHom:
    """The left regular representation of A on itself, certified."""
    F = A.F
    M = MatrixAlgebra(FieldAlgebra(F), A.dim, label=f"End({A.label})")
    images = []
    for i in range(A.dim):
        L = A.lmul_matrix(A.basis_el(i))
        rows = [[El(M.base, {0: c}) for c in row] for row in L]
        images.append(M.from_matrix(rows).c)
    hom = AlgebraHom(A, M, images, label="regular")
    hom.verify("full" if A.dim <= 16 else "sample")
    if not hom.is_injective():
        raise CertificationError("regular representation must be injective")
    return hom

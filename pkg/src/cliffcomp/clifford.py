"""Clifford algebras: of a quadratic space, and of an algebra with a
quadratic pair.

The quadratic-space algebra C(V, q) works over any field by monomial
rewriting: e_i e_i -> q(e_i) and e_j e_i -> b_q(e_i, e_j) - e_i e_j for
j > i, which is valid in characteristic 2 as well.

The pair construction quotients the tensor algebra of the underlying
space of A by two families of relations: symmetric elements s are
identified with the scalar f(s), and sandwich elements u of a designated
subspace W of A (x) A are identified with Sand(u)(l), where l is a
splitting element of the pair.  Rather than saturating inside the huge
tensor algebra of A, every relation is first pushed down to the tensor
algebra of a complement N of the symmetric subspace (each symmetric
letter collapses to a scalar), where the ideal is saturated by sparse
echelon over word columns.  The construction is certified: the quotient
dimension must stabilize at 2^(deg A - 1), multiplication must be
associative, and the involution induced by reversed-sigma words must
verify as an involution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    Algebra,
    El,
    ExplicitAlgebra,
    Involution,
    center_structure,
    sp_add,
    sp_scale,
)
from .errors import CertificationError, SaturationError, UnsupportedInputError
from .linalg import SparseEchelon, inv_matrix, kernel, rref
from .quadform import QuadraticSpace


class CliffordAlgebra(Algebra):
    """C(V, q), basis e_S over subsets S of the generator set (bitmask order)."""

    def __init__(self, q: QuadraticSpace, label: Optional[str] = None):
        super().__init__()
        self.q = q
        self.F = q.F
        self.n = q.n
        self.dim = 1 << q.n
        self._unit = {0: self.F.one()}
        self.label = label or f"C({q.label})"
        self._B = q.polar_matrix()
        self._gen_indices = [1 << i for i in range(q.n)]
        self._word_cache: dict = {}

    def _mask_to_word(self, mask: int) -> tuple:
        return tuple(i for i in range(self.n) if mask >> i & 1)

    @staticmethod
    def _word_to_mask(word) -> int:
        m = 0
        for i in word:
            m |= 1 << i
        return m

    def reduce_word(self, word: tuple) -> dict:
        """Canonical coords (mask -> coeff) of a generator word."""
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        F = self.F
        out: dict = {}
        stack = [(word, F.one())]
        while stack:
            w, c = stack.pop()
            pos = None
            for t in range(len(w) - 1):
                if w[t] >= w[t + 1]:
                    pos = t
                    break
            if pos is None:
                m = self._word_to_mask(w)
                nv = F.add(out.get(m, F.zero()), c)
                if F.is_zero(nv):
                    out.pop(m, None)
                else:
                    out[m] = nv
                continue
            a, b = w[pos], w[pos + 1]
            if a == b:
                w2 = w[:pos] + w[pos + 2 :]
                s = self.q.M[a][a]
                if not F.is_zero(s):
                    stack.append((w2, F.mul(c, s)))
            else:
                bab = self._B[b][a]
                if not F.is_zero(bab):
                    stack.append((w[:pos] + w[pos + 2 :], F.mul(c, bab)))
                stack.append((w[:pos] + (b, a) + w[pos + 2 :], F.neg(c)))
        self._word_cache[word] = out
        return out

    def mul_bb(self, i: int, j: int) -> dict:
        word = self._mask_to_word(i) + self._mask_to_word(j)
        return self.reduce_word(word)

    def basis_name(self, i: int) -> str:
        if i == 0:
            return "1"
        return "e" + "".join(str(t) for t in self._mask_to_word(i))

    def embed_vector(self, v: list) -> El:
        """The image of a vector of V inside C."""
        F = self.F
        return El(self, {1 << i: c for i, c in enumerate(v) if not F.is_zero(c)})

    def product_of_vectors(self, vectors: list) -> El:
        acc = self.one()
        for v in vectors:
            acc = acc * self.embed_vector(v)
        return acc

    def reversal(self, verify: str = "auto") -> Involution:
        """The involution fixing V pointwise: reverses generator words."""
        imgs = []
        for mask in range(self.dim):
            w = self._mask_to_word(mask)
            imgs.append(self.reduce_word(tuple(reversed(w))))
        return Involution(self, imgs, label="reversal", verify=verify)

    def even_part(self):
        """The even subalgebra as an ExplicitAlgebra.

        Returns (C0, embed, project) with embed: C0 -> C on basis masks of
        even popcount (in increasing mask order) and project the coordinate
        restriction.
        """
        masks = [m for m in range(self.dim) if bin(m).count("1") % 2 == 0]
        pos = {m: t for t, m in enumerate(masks)}
        F = self.F
        table = {}
        for a, ma in enumerate(masks):
            for b, mb in enumerate(masks):
                prod = self._mul_bb_cached(ma, mb)
                table[(a, b)] = {pos[m]: v for m, v in prod.items()}
        C0 = ExplicitAlgebra(
            F,
            len(masks),
            table,
            {0: F.one()},
            label=f"C0({self.q.label})",
            verify="none",
            names=[self.basis_name(m) for m in masks],
        )
        # generated by products of pairs of generators
        gen_pos = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                m = (1 << i) | (1 << j)
                gen_pos.append(pos[m])
        C0._gen_indices = gen_pos

        def embed(x: El) -> El:
            return El(self, {masks[t]: v for t, v in x.c.items()})

        def project(x: El) -> El:
            out = {}
            for m, v in x.c.items():
                if m not in pos:
                    raise UnsupportedInputError("element has odd components")
                out[pos[m]] = v
            return El(C0, out)

        return C0, embed, project


def even_clifford(q: QuadraticSpace):
    """C0(V, q) with its reversal involution restricted from C(V, q)."""
    C = CliffordAlgebra(q)
    C0, embed, project = C.even_part()
    rev = C.reversal(verify="none")
    imgs = [project(rev.apply(embed(C0.basis_el(t)))).c for t in range(C0.dim)]
    tau = Involution(C0, imgs, label="reversal", verify="auto")
    return C, C0, embed, project, tau


# ---------------------------------------------------------------------------
# Clifford algebra of an algebra with quadratic pair


@dataclass
class PairCliffordData:
    """Certified output of the pair construction."""

    C: ExplicitAlgebra
    sigma_bar: Involution
    a_images: list          # coords of the canonical image of each A-basis vector
    canon_words: list       # quotient basis words over complement letters
    n_letters: list         # A-basis indices forming the complement N
    variant: str            # which sandwich subspace condition was used
    sandwich_dim: int
    saturation_degree: int
    center_etale: object = None
    center_idempotent: object = field(default=None)

    def embed_a(self, x: El) -> El:
        """Canonical map A -> C (not an algebra map; linear)."""
        F = self.C.F
        acc: dict = {}
        for i, xi in x.c.items():
            acc = sp_add(F, acc, sp_scale(F, xi, self.a_images[i]))
        return El(self.C, acc)


def _sandwich_eval(A: Algebra, i: int, x: El, j: int) -> El:
    """e_i * x * e_j in A."""
    return A.mul(A.mul(A.basis_el(i), x), A.basis_el(j))


def _w_space_paper(A: Algebra, sigma: Involution) -> list:
    """Basis of {u in A(x)A : Sand(u)(y) = 0 for all y in im(1 - sigma)}.

    Sandwich condition of the pair construction.  Returns sparse dicts
    keyed by (i, j) basis pairs.
    """
    F = A.F
    d = A.dim
    ys = []
    seen = []
    for t in range(d):
        x = A.basis_el(t)
        y = x - sigma.apply(x)
        if y.is_zero():
            continue
        if not seen or not _in_span(F, seen, y.dense()):
            seen.append(y.dense())
            ys.append(y)
    rows = []
    for y in ys:
        triple = {}
        for i in range(d):
            for j in range(d):
                triple[(i, j)] = _sandwich_eval(A, i, y, j)
        for r in range(d):
            rows.append([triple[(i, j)].c.get(r, F.zero()) for i in range(d) for j in range(d)])
    ker = kernel(F, rows) if rows else []
    out = []
    for v in ker:
        u = {}
        for t, c in enumerate(v):
            if not F.is_zero(c):
                u[(t // d, t % d)] = c
        out.append(u)
    return out


def _in_span(F, rows, v) -> bool:
    from .linalg import lin_span_contains

    return lin_span_contains(F, rows, v)


def _w_space_switch(A: Algebra, sigma: Involution) -> list:
    """Basis of the fixed space of u = sum a (x) b -> sum sigma(b) (x) sigma(a).

    Equivalently: u with Sand(u) commuting with sigma.
    """
    F = A.F
    d = A.dim

    def op(i: int, j: int) -> dict:
        # image of e_i (x) e_j: sigma(e_j) (x) sigma(e_i)
        si = sigma.images[i]
        sj = sigma.images[j]
        out = {}
        for kj, vj in sj.items():
            for ki, vi in si.items():
                out[(kj, ki)] = F.mul(vj, vi)
        return out

    if F.char != 2:
        # fixed space = image of (1 + op) since op is an involution
        rows = []
        for i in range(d):
            for j in range(d):
                w = op(i, j)
                w = sp_add(F, w, {(i, j): F.one()})
                rows.append([w.get((a, b), F.zero()) for a in range(d) for b in range(d)])
        R, piv, r = rref(F, rows)
        out = []
        for t in range(r):
            u = {}
            for s, c in enumerate(R[t]):
                if not F.is_zero(c):
                    u[(s // d, s % d)] = c
            out.append(u)
        return out
    # char 2: fixed space = kernel of (op - id)
    rows = [[F.zero()] * (d * d) for _ in range(d * d)]
    for i in range(d):
        for j in range(d):
            col = i * d + j
            w = op(i, j)
            for (a, b), c in w.items():
                rows[a * d + b][col] = F.add(rows[a * d + b][col], c)
            rows[col][col] = F.sub(rows[col][col], F.one())
    ker = kernel(F, rows)
    out = []
    for v in ker:
        u = {}
        for t, c in enumerate(v):
            if not F.is_zero(c):
                u[(t // d, t % d)] = c
        out.append(u)
    return out


class _PairQuotient:
    """Workhorse: saturate the pushed-down ideal and build the quotient."""

    def __init__(self, A: Algebra, sigma: Involution, sym_rows: list, f_on_sym: list, ell: El):
        self.A = A
        self.F = A.F
        self.sigma = sigma
        self.sym_rows = sym_rows
        self.f_on_sym = f_on_sym
        self.ell = ell
        self._setup_letters()

    def _setup_letters(self):
        """Choose complement letters and decompose every A-basis vector."""
        F = self.F
        d = self.A.dim
        rows = [list(r) for r in self.sym_rows]
        n_letters = []
        from .linalg import lin_span_contains

        for i in range(d):
            e = [F.one() if t == i else F.zero() for t in range(d)]
            if not lin_span_contains(F, rows + [self._unit_row(t) for t in n_letters], e):
                n_letters.append(i)
        self.n_letters = n_letters
        self.nu = len(n_letters)
        # solve e_i = sum_s c_s sym_s + sum_p d_p e_{n_p} for all i at once
        cols = [list(col) for col in zip(*(rows + [self._unit_row(t) for t in n_letters]))]
        Minv = inv_matrix(F, cols) if len(cols) == len(cols[0]) else None
        if Minv is None:
            raise CertificationError("symmetric subspace plus complement fails to span")
        s_count = len(rows)
        self.letter_decomp = []
        for i in range(d):
            coeffs = [Minv[r][i] for r in range(d)]
            c_sym = F.zero()
            for s in range(s_count):
                if not F.is_zero(coeffs[s]):
                    c_sym = F.add(c_sym, F.mul(coeffs[s], self.f_on_sym[s]))
            letters = [
                (p, coeffs[s_count + p])
                for p in range(self.nu)
                if not F.is_zero(coeffs[s_count + p])
            ]
            self.letter_decomp.append((c_sym, letters))

    def _unit_row(self, t: int) -> list:
        F = self.F
        return [F.one() if s == t else F.zero() for s in range(self.A.dim)]

    def phi_of_element(self, x: El) -> dict:
        """Push an element of A down to T(N): scalar + letter terms."""
        F = self.F
        out: dict = {}
        for i, xi in x.c.items():
            c_sym, letters = self.letter_decomp[i]
            if not F.is_zero(c_sym):
                k = ()
                nv = F.add(out.get(k, F.zero()), F.mul(xi, c_sym))
                if F.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
            for p, cp in letters:
                k = (p,)
                nv = F.add(out.get(k, F.zero()), F.mul(xi, cp))
                if F.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def _word_product(self, wa: dict, wb: dict) -> dict:
        F = self.F
        out: dict = {}
        for w1, c1 in wa.items():
            for w2, c2 in wb.items():
                k = w1 + w2
                nv = F.add(out.get(k, F.zero()), F.mul(c1, c2))
                if F.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def generator_rows(self, w_basis: list) -> list:
        """Pushed-down relations u - Sand(u)(l) for u in the sandwich basis."""
        F = self.F
        A = self.A
        out = []
        for u in w_basis:
            row: dict = {}
            sand = A.zero()
            for (i, j), c in u.items():
                prod = self._word_product(
                    self.phi_of_element(A.basis_el(i)),
                    self.phi_of_element(A.basis_el(j)),
                )
                for k, v in prod.items():
                    nv = F.add(row.get(k, F.zero()), F.mul(c, v))
                    if F.is_zero(nv):
                        row.pop(k, None)
                    else:
                        row[k] = nv
                sand = sand + c * _sandwich_eval(A, i, self.ell, j)
            for k, v in self.phi_of_element(sand).items():
                nv = F.sub(row.get(k, F.zero()), v)
                if F.is_zero(nv):
                    row.pop(k, None)
                else:
                    row[k] = nv
            if row:
                out.append(row)
        return out

    def saturate(self, gens: list, degree: int):
        """Echelonize x (x) g (x) y paddings up to total degree."""
        key = lambda w: (-len(w), w)
        ech = SparseEchelon(self.F, key=key)
        letters = list(range(self.nu))
        pads: list = [()]
        maxpad = max(0, degree - 2)
        frontier = [()]
        for _ in range(maxpad):
            frontier = [w + (a,) for w in frontier for a in letters]
            pads.extend(frontier)
        for g in gens:
            gdeg = max((len(w) for w in g), default=0)
            for x in pads:
                for y in pads:
                    if len(x) + gdeg + len(y) > degree:
                        continue
                    row = {x + w + y: c for w, c in g.items()}
                    ech.insert(row)
        return ech

    def quotient(self, ech: SparseEchelon, degree: int):
        """Canonical words (non-pivots) of length <= degree."""
        words = [()]
        frontier = [()]
        for _ in range(degree):
            frontier = [w + (a,) for w in frontier for a in range(self.nu)]
            words.extend(frontier)
        canon = [w for w in words if w not in ech.pivots]
        return canon


def clifford_of_pair(pair, variant: str = "auto", max_degree: int = 4,
                     verify: str = "auto") -> PairCliffordData:
    """The Clifford algebra of an algebra with quadratic pair, certified.

    variant selects the sandwich subspace: 'kernel' kills im(1 - sigma)
    under the sandwich action, 'switch' takes the fixed space of
    a (x) b -> sigma(b) (x) sigma(a), 'auto' tries kernel then switch then
    their intersection, accepting the first that certifies.
    """
    A = pair.A
    deg = A.deg
    if deg is None or deg % 2:
        raise UnsupportedInputError("pair construction needs even degree")
    expected = 1 << (deg - 1)
    worker = _PairQuotient(A, pair.sigma, pair.sym_rows, pair.f_on_sym, pair.ell)
    order = [variant] if variant != "auto" else ["kernel", "switch", "intersect"]
    failures = []
    for var in order:
        if var == "kernel":
            w_basis = _w_space_paper(A, pair.sigma)
        elif var == "switch":
            w_basis = _w_space_switch(A, pair.sigma)
        elif var == "intersect":
            wk = _w_space_paper(A, pair.sigma)
            ws = _w_space_switch(A, pair.sigma)
            w_basis = _intersect_sparse(A.F, wk, ws, A.dim)
        else:
            raise UnsupportedInputError(f"unknown sandwich variant {var!r}")
        gens = worker.generator_rows(w_basis)
        data = _try_build(pair, worker, gens, var, len(w_basis), expected, max_degree, verify)
        if data is not None:
            return data
        failures.append(var)
    raise SaturationError(
        f"no sandwich variant certified (tried {failures}); "
        f"expected quotient dimension {expected}"
    )


def _intersect_sparse(F, us: list, vs: list, d: int) -> list:
    rows_u = [[u.get((a, b), F.zero()) for a in range(d) for b in range(d)] for u in us]
    rows_v = [[v.get((a, b), F.zero()) for a in range(d) for b in range(d)] for v in vs]
    # intersection via kernel of stacked coordinates in the sum space
    if not rows_u or not rows_v:
        return []
    stacked = [ru + [F.zero()] for ru in rows_u]
    # solve c_u . U = c_v . V: kernel of [U^t | -V^t] style; do it dense
    cols = len(rows_u[0])
    M = []
    for c in range(cols):
        M.append([rows_u[r][c] for r in range(len(rows_u))] + [F.neg(rows_v[r][c]) for r in range(len(rows_v))])
    ker = kernel(F, M)
    out = []
    for v in ker:
        u = {}
        for r, c in enumerate(v[: len(rows_u)]):
            if F.is_zero(c):
                continue
            for t, val in enumerate(rows_u[r]):
                if not F.is_zero(val):
                    key = (t // d, t % d)
                    nv = F.add(u.get(key, F.zero()), F.mul(c, val))
                    if F.is_zero(nv):
                        u.pop(key, None)
                    else:
                        u[key] = nv
        if u:
            out.append(u)
    return out


def _try_build(pair, worker: _PairQuotient, gens: list, var: str, wdim: int,
               expected: int, max_degree: int, verify: str) -> Optional[PairCliffordData]:
    F = worker.F
    for degree in range(3, max_degree + 1):
        ech = worker.saturate(gens, degree)
        canon = worker.quotient(ech, degree)
        if len(canon) != expected:
            continue
        if any(len(w) == degree for w in canon):
            # not stabilized: top-degree words survive
            continue
        try:
            return _finalize(pair, worker, ech, canon, var, wdim, degree, verify)
        except CertificationError:
            continue
    return None


def _finalize(pair, worker: _PairQuotient, ech: SparseEchelon, canon: list,
              var: str, wdim: int, degree: int, verify: str) -> PairCliffordData:
    F = worker.F
    A = worker.A
    index = {w: t for t, w in enumerate(canon)}
    memo: dict = {}

    def reduce_long(word: tuple) -> dict:
        if word in memo:
            return memo[word]
        if len(word) <= degree:
            red = ech.reduce({word: F.one()})
            for w in red:
                if w not in index:
                    raise CertificationError(f"reduction escaped the canonical set at {w}")
            memo[word] = red
            return red
        head, rest = word[0], word[1:]
        out: dict = {}
        for w2, c2 in reduce_long(rest).items():
            sub = reduce_long((head,) + w2)
            for w3, c3 in sub.items():
                nv = F.add(out.get(w3, F.zero()), F.mul(c2, c3))
                if F.is_zero(nv):
                    out.pop(w3, None)
                else:
                    out[w3] = nv
        memo[word] = out
        return out

    dim = len(canon)
    table = {}
    for a, wa in enumerate(canon):
        for b, wb in enumerate(canon):
            red = reduce_long(wa + wb)
            table[(a, b)] = {index[w]: v for w, v in red.items()}
    names = ["1"] + [
        "n" + ".".join(str(worker.n_letters[p]) for p in w) for w in canon[1:]
    ] if canon and canon[0] == () else None
    C = ExplicitAlgebra(
        F,
        dim,
        table,
        {index[()]: F.one()},
        label=f"C({A.label},pair)",
        verify="full" if dim <= 16 else "auto",
        names=names,
        deg=_halfdeg(expected_dim=dim),
    )
    C._gen_indices = [t for t, w in enumerate(canon) if len(w) <= 1]

    # canonical linear map A -> C
    a_images = []
    for i in range(A.dim):
        phi = worker.phi_of_element(A.basis_el(i))
        red: dict = {}
        for w, c in phi.items():
            for w2, c2 in reduce_long(w).items():
                nv = F.add(red.get(w2, F.zero()), F.mul(c, c2))
                if F.is_zero(nv):
                    red.pop(w2, None)
                else:
                    red[w2] = nv
        a_images.append({index[w]: v for w, v in red.items()})

    # the involution: reverse words, apply sigma to each letter, push down
    sig_letter = []
    for p in range(worker.nu):
        img = pair.sigma.apply(A.basis_el(worker.n_letters[p]))
        sig_letter.append(worker.phi_of_element(img))
    imgs = []
    for w in canon:
        acc = {(): F.one()}
        for p in reversed(w):
            acc = worker._word_product(acc, sig_letter[p])
        red: dict = {}
        for ww, c in acc.items():
            for w2, c2 in reduce_long(ww).items():
                nv = F.add(red.get(w2, F.zero()), F.mul(c, c2))
                if F.is_zero(nv):
                    red.pop(w2, None)
                else:
                    red[w2] = nv
        imgs.append({index[ww]: v for ww, v in red.items()})
    sigma_bar = Involution(C, imgs, label="sigma_bar", verify="full" if C.dim <= 16 else "auto")

    et, e = center_structure(C)
    return PairCliffordData(
        C=C,
        sigma_bar=sigma_bar,
        a_images=a_images,
        canon_words=canon,
        n_letters=worker.n_letters,
        variant=var,
        sandwich_dim=wdim,
        saturation_degree=degree,
        center_etale=et,
        center_idempotent=e,
    )


def _halfdeg(expected_dim: int) -> Optional[int]:
    # dim 2^(2k-1) is not a perfect square; the quotient is Azumaya of
    # degree 2^(k-1) over its quadratic center, so leave deg unset
    return None


def split_compare(data: PairCliffordData, aux: dict):
    """Certify C(Ad(q)) against the even Clifford algebra of q.

    The identification sends the class of the rank-one map phi(v (x) w) to
    the product v w inside C0(q); on matrix units E_rc this is
    e_r (B^-1 e_c).  Returns the verified isomorphism together with the
    even Clifford data, and checks it intertwines sigma_bar with the
    reversal involution.
    """
    from .algebra import AlgebraHom

    q = aux["q"]
    A = aux["A"]
    Binv = aux["Binv"]
    F = q.F
    Cfull, C0, embed, project, tau = even_clifford(q)

    def psi_of_letter(t: int) -> El:
        r, c, _ = A._unidx(t)
        er = [F.one() if s == r else F.zero() for s in range(q.n)]
        bc = [Binv[s][c] for s in range(q.n)]
        prod = Cfull.mul(Cfull.embed_vector(er), Cfull.embed_vector(bc))
        return project(prod)

    letter_imgs = [psi_of_letter(t) for t in data.n_letters]
    imgs = []
    for w in data.canon_words:
        acc = C0.one()
        for p in w:
            acc = acc * letter_imgs[p]
        imgs.append(acc.c)
    phi = AlgebraHom(data.C, C0, imgs, label="pair-vs-even")
    phi.verify("full" if data.C.dim <= 16 else "auto")
    if not phi.is_bijective():
        raise CertificationError("pair Clifford does not match the even Clifford algebra")
    if not phi.respects(data.sigma_bar, tau):
        raise CertificationError("sigma_bar does not match the reversal involution")
    return phi, C0, tau

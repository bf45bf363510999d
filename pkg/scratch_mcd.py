from fractions import Fraction as Fr

from cliffcomp.scalars import QQ, PrimeField, EtaleQuadratic
from cliffcomp.algebra import QuaternionAlgebra
from cliffcomp.quadform import QuadraticSpace
from cliffcomp.brauer import BrauerClass, trivial_class
from cliffcomp.qpair import pair_on_quaternion_tensor
from cliffcomp.clifford import clifford_of_pair
from cliffcomp.mcd import (
    profile_from_form, profile_from_pair_clifford, mcd_first_kind, mcd_unitary,
    lower_bound_first_kind, lower_bound_unitary, admissible_degree,
    dbound_min_degree, canonical_involution_type,
)

c_hh = BrauerClass(QQ, [(Fr(-1), Fr(-1))])
triv = trivial_class(QQ)

# type table spot checks
assert canonical_involution_type(5, 0) == "symplectic"
assert canonical_involution_type(4, 0) == "symplectic"   # k=2
assert canonical_involution_type(8, 0) == "orthogonal"   # k=4
assert canonical_involution_type(6, 0) == "unitary"      # k=3
assert canonical_involution_type(7, 0) == "orthogonal"   # 7 = -1 mod 8
assert canonical_involution_type(3, 2) == "symplectic"
assert canonical_involution_type(1, 2) == "orthogonal"
assert canonical_involution_type(4, 2) == "symplectic"

# Example-1 form, a=b=-1: q = <1,1,1,-1,1>
q1 = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(1), Fr(1), Fr(-1), Fr(1)])
p1 = profile_from_form(q1)
print("profile q1:", p1.n, p1.t_C, p1.c_odd)
assert p1.t_C == "symplectic" and p1.c_odd == c_hh
r = mcd_first_kind(p1, c_hh, "symplectic")
print("mcd symplectic:", r.to_json())
assert r.value == 4 and r.status == "exact" and r.divisibility
r2 = mcd_first_kind(p1, c_hh, "orthogonal")
print("mcd orthogonal:", r2.to_json())
assert r2.value == 8

# CLI example <1,1,-1,1,-1>
q2 = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(1), Fr(-1), Fr(1), Fr(-1)])
p2 = profile_from_form(q2)
r3 = mcd_first_kind(p2, c_hh, "symplectic")
print("mcd <1,1,-1,1,-1>:", r3.to_json())
assert r3.value == 8  # [C] trivial, d = 1

# tensor pair profile
Q1 = QuaternionAlgebra(QQ, Fr(-1), Fr(-1))
Q2 = QuaternionAlgebra(QQ, Fr(2), Fr(5))
pair = pair_on_quaternion_tensor(Q1, Q2)
data = clifford_of_pair(pair)
pp = profile_from_pair_clifford(data)
print("pair profile:", pp.n, pp.t_C, pp.z_split, pp.c_plus, pp.c_minus)
assert pp.n == 4 and pp.t_C == "symplectic" and pp.z_split
r4 = mcd_first_kind(pp, triv, "symplectic")
print("mcd pair trivial symplectic:", r4.to_json())
assert r4.value == 4 and r4.status == "exact"

# unitary odd: <1,1,1> with S = Q(i)
q3 = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(1), Fr(1)])
p3 = profile_from_form(q3)
Si = EtaleQuadratic(QQ, Fr(-1), False)
r5 = mcd_unitary(p3, Si, triv)
print("mcd <1,1,1> unitary Q(i):", r5.to_json())
assert r5.value == 2 and r5.status == "exact"
S2 = EtaleQuadratic(QQ, Fr(2), False)
r6 = mcd_unitary(p3, S2, triv)
print("mcd <1,1,1> unitary Q(sqrt2):", r6.to_json())
assert r6.value == 4  # (-1,-1) stays nonsplit over Q(sqrt 2)

# n = 6: Z = Q(i), unitary with S isomorphic to Z
q6 = QuadraticSpace.diagonal(QQ, [Fr(1)] * 6)
p6 = profile_from_form(q6)
print("profile q6:", p6.n, p6.t_C, p6.z_etale)
assert p6.t_C == "unitary" and not p6.z_split
r7 = mcd_unitary(p6, Si, triv)
print("mcd q6 unitary S=Z:", r7.to_json())
assert r7.value == 4 and r7.status == "exact"
# first kind on q6: trivial class, symplectic
r8 = mcd_first_kind(p6, triv, "symplectic")
print("mcd q6 first trivial symp:", r8.to_json())
assert r8.value == 8 and r8.status == "exact"
# S field not isomorphic to Z: multiple-only with compositum distance
r9 = mcd_unitary(p6, S2, triv)
print("mcd q6 unitary S=Q(sqrt2):", r9.to_json())
assert r9.status == "multiple-only"

# n=4 form with field center isomorphic to S: split-field route (trivial algebra)
q4 = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(1), Fr(1), Fr(-1)])  # disc = (-1)^6 * -1 = -1
p4 = profile_from_form(q4)
print("q4 center:", p4.z_etale, "t_C:", p4.t_C)
assert not p4.z_split
r10 = mcd_unitary(p4, Si, triv)
print("mcd q4 unitary S=Z=Q(i):", r10.to_json())
assert r10.status == "exact" and "route" in r10.case
# same config on the pair source -> not covered
r11 = mcd_unitary(pp, EtaleQuadratic(QQ, Fr(3), False), triv)
print("pair, 4k, S field, Z split: case:", r11.to_json())
# pair has split Z so this is the covered split branch
assert r11.status == "exact"

# 4k+2 with split Z and field S -> not covered
q22 = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(-1)])  # n=2, disc = 1: Z split
p22 = profile_from_form(q22)
assert p22.z_split
r12 = mcd_unitary(p22, Si, triv)
print("n=2 split Z, S field:", r12.to_json())
assert r12.status == "not-covered-by-paper"
# but S split is the Z~S branch
Ssp = EtaleQuadratic(QQ, Fr(1), True)
r13 = mcd_unitary(p22, Ssp, triv)
print("n=2 split Z, S split:", r13.to_json())
assert r13.status == "exact" and r13.value == 1  # k=0, d=0

# GF(3) <1,1,1>
F3 = PrimeField(3)
qg = QuadraticSpace.diagonal(F3, [1, 1, 1])
pg = profile_from_form(qg)
print("GF3 profile:", pg.n, pg.t_C)
assert pg.t_C == "symplectic"
rg = mcd_first_kind(pg, trivial_class(F3), "symplectic")
print("mcd GF3:", rg.to_json())
assert rg.value == 2

# lower bounds
b1 = lower_bound_first_kind(p1, c_hh, "symplectic")
print("bound ex1 symp:", b1.to_json())
assert b1.value == 4 and b1.equality
b2 = lower_bound_first_kind(p1, c_hh, "orthogonal")
print("bound ex1 orth:", b2.to_json())
assert b2.value == 8 and b2.equality  # quaternion twist exists
b3 = lower_bound_unitary(p6, Si, triv)
print("bound q6 unitary:", b3.to_json())
assert b3.value == 4 and b3.equality
b4 = lower_bound_first_kind(p4, triv, "symplectic")
print("bound q4 first symp (field Z):", b4.to_json())
assert not b4.equality  # equality needs split Z

# admissibility
a1 = admissible_degree(p1, {"kind": "first", "c": c_hh, "t": "symplectic"}, 4)
a2 = admissible_degree(p1, {"kind": "first", "c": c_hh, "t": "symplectic"}, 6)
a3 = admissible_degree(p1, {"kind": "first", "c": c_hh, "t": "symplectic"}, 8)
print("admissible 4/6/8:", a1, a2, a3)
assert a1["ok"] and not a2["ok"] and a3["ok"]
a4 = admissible_degree(p6, {"kind": "first", "c": triv, "t": "symplectic"}, 8)
a5 = admissible_degree(p6, {"kind": "first", "c": triv, "t": "symplectic"}, 4)
a6 = admissible_degree(p6, {"kind": "first", "c": triv, "t": "symplectic"}, 12)
print("q6 adm 8/4/12:", a4["ok"], a5["ok"], a6["ok"])
assert a4["ok"] and not a5["ok"]
# 12 = 3 * 4 = n * 2^{2k+d} with n=3 odd: Z field forces even n -> inadmissible
assert not a6["ok"]
# pair (split Z): 12 = 2^{2k+d} * 3 with n1+n2 = 3 >= 2 admissible
a7 = admissible_degree(pp, {"kind": "first", "c": triv, "t": "symplectic"}, 12)
print("pair adm 12:", a7)
# pp is 4k (k=1): split-center two-term form, lo=0: 12 = 2*(n1*2^1+n2*2^1): n1+n2=3
assert a7["ok"]

# dbound
print("dbound:", dbound_min_degree(2, c_hh, triv))
assert dbound_min_degree(2, c_hh, triv) == 4

# scale invariance of results
for lam in [Fr(2), Fr(-3), Fr(5, 7)]:
    ps = profile_from_form(q1.scale(lam))
    assert mcd_first_kind(ps, c_hh, "symplectic").to_json() == r.to_json()
    p6s = profile_from_form(q6.scale(lam))
    assert mcd_unitary(p6s, Si, triv).to_json() == r7.to_json()
print("scale invariance ok")
print("ALL MCD CHECKS PASS")

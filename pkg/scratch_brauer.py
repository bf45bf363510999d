import time
from fractions import Fraction as Fr

from cliffcomp.scalars import QQ, PrimeField, Place, PLACE_REAL
from cliffcomp.algebra import QuaternionAlgebra, TensorAlgebra, corner_algebra
from cliffcomp.quadform import QuadraticSpace
from cliffcomp.brauer import (
    BrauerClass, EtaleBase, trivial_class, quaternion_symbol_of,
    clifford_class_of_form, even_clifford_classes, quaternion_model,
    etale_base_of, compositum,
)
from cliffcomp.qpair import pair_on_quaternion_tensor
from cliffcomp.clifford import clifford_of_pair

t0 = time.time()

# 1. support of (-1,-1) is {inf, 2}
c = BrauerClass(QQ, [(Fr(-1), Fr(-1))])
print("support (-1,-1):", sorted(repr(v) for v in c.support))
assert c.support == frozenset({PLACE_REAL, Place(2)})
assert not c.is_trivial()

# (1,1), (1,-1), (2,2)? (2,2): hilbert(2,2)_v = (2,-1)_v... check support
for a, b in [(1, 1), (1, -1), (-1, 2)]:
    cc = BrauerClass(QQ, [(Fr(a), Fr(b))])
    print(f"support ({a},{b}):", sorted(repr(v) for v in cc.support), "trivial:", cc.is_trivial())

# product/distance
c2 = BrauerClass(QQ, [(Fr(2), Fr(5))])
print("support (2,5):", sorted(repr(v) for v in c2.support))
print("d((-1,-1),(2,5)) =", c.distance(c2), " d(c,c) =", c.distance(c))
prod = c * c2
print("support prod:", sorted(repr(v) for v in prod.support))
assert prod == c2 * c

# 2. clifford classes of forms
q4 = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(1), Fr(1), Fr(1)])
cq4 = clifford_class_of_form(q4)
print("[C(<1,1,1,1>)] =", cq4, "== (-1,-1):", cq4 == c)
q3 = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(1), Fr(1)])
cq3 = clifford_class_of_form(q3)
print("[C0(<1,1,1>)] =", cq3, "== (-1,-1):", cq3 == c)
q2 = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(-1)])
print("[C(<1,-1>)] trivial:", clifford_class_of_form(q2).is_trivial())
qab = QuadraticSpace.diagonal(QQ, [Fr(2), Fr(5)])
print("[C(<2,5>)] == (2,5):", clifford_class_of_form(qab) == c2)

kind, cp, cm = even_clifford_classes(q4)
print("even classes <1,1,1,1>:", kind, cp == c, cm == c)
q25 = QuadraticSpace.diagonal(QQ, [Fr(2), Fr(3), Fr(-1), Fr(5)])
kind2, Z2, r2 = even_clifford_classes(q25)
print("even classes <2,3,-1,5>:", kind2, Z2, "res trivial:", r2.is_trivial())

# 3. symbol recovery, char != 2
H = QuaternionAlgebra(QQ, Fr(-1), Fr(-1))
sym = quaternion_symbol_of(H)
print("recovered symbol of H:", sym, "class ok:", BrauerClass(QQ, [sym]) == c)
Hs = QuaternionAlgebra(QQ, Fr(1), Fr(-3))
sym2 = quaternion_symbol_of(Hs)
print("recovered symbol of (1,-3):", sym2, "trivial:", BrauerClass(QQ, [sym2]).is_trivial())
F3 = PrimeField(3)
Q3 = QuaternionAlgebra(F3, 1, 1)
print("recovered GF(3) symbol:", quaternion_symbol_of(Q3))

# char 2 recovery
F2 = PrimeField(2)
Q2c = QuaternionAlgebra(F2, 1, 1)
print("recovered GF(2) symbol:", quaternion_symbol_of(Q2c))

# 4. restriction
Zi = EtaleBase((-1,))
Z2b = EtaleBase((2,))
r_i = c.restrict(Zi)
r_s2 = c.restrict(Z2b)
print("res_{Q(i)}(-1,-1) trivial:", r_i.is_trivial())      # Q(i) splits H
print("res_{Q(sqrt2)}(-1,-1) trivial:", r_s2.is_trivial())  # stays definite
assert r_i.is_trivial() and not r_s2.is_trivial()
bq = EtaleBase((2, 5))
print("biquadratic:", bq, "deg", bq.degree, "inf deg1:", bq.place_degree_one(PLACE_REAL))
print("compositum Q(i),Q(sqrt2):", compositum(Zi, Z2b))
print("compositum Q(i),Q(i):", compositum(Zi, Zi))

# 5. quaternion model search
print("model trivial:", quaternion_model(trivial_class(QQ)))
m = quaternion_model(c * c2)
print("model of (-1,-1)*(2,5):", m, "ok:", BrauerClass(QQ, [m]) == c * c2)

# 6. corner classes of the quaternion tensor pair over Q
Q1 = QuaternionAlgebra(QQ, Fr(-1), Fr(-1))
Q2 = QuaternionAlgebra(QQ, Fr(2), Fr(5))
pair = pair_on_quaternion_tensor(Q1, Q2)
data = clifford_of_pair(pair)
print("tensor pair C:", data.C.dim, data.center_etale)
assert data.center_idempotent is not None
Cplus, emb_p, _ = corner_algebra(data.C, data.center_idempotent)
e2 = data.C.one() - data.center_idempotent
Cminus, emb_m, _ = corner_algebra(data.C, e2)
sp = quaternion_symbol_of(Cplus)
sm = quaternion_symbol_of(Cminus)
clsp, clsm = BrauerClass(QQ, [sp]), BrauerClass(QQ, [sm])
cQ1, cQ2 = BrauerClass(QQ, [(Fr(-1), Fr(-1))]), BrauerClass(QQ, [(Fr(2), Fr(5))])
print("corner symbols:", sp, sm)
print("corner classes = {[Q1],[Q2]}:", {clsp, clsm} == {cQ1, cQ2})

print(f"total {time.time()-t0:.1f}s")

"""Smoke test for compose.py: one line per case, nonzero exit on any failure."""

import sys
import time
import traceback
from fractions import Fraction

sys.path.insert(0, "src")

from cliffcomp.scalars import QQ, PrimeField, EtaleQuadratic
from cliffcomp.quadform import QuadraticSpace
from cliffcomp.algebra import QuaternionAlgebra
from cliffcomp.qpair import pair_on_quaternion_tensor
from cliffcomp.clifford import clifford_of_pair
from cliffcomp.brauer import BrauerClass, trivial_class
from cliffcomp.mcd import dbound_min_degree
from cliffcomp.compose import construct_composition, regular_representation
from cliffcomp.errors import NotCoveredError

Q = Fraction
failures = []


def cls(*symbols):
    return BrauerClass(QQ, [(Q(a), Q(b)) for a, b in symbols])


def diag(*entries):
    return QuadraticSpace.diagonal(QQ, [Q(e) for e in entries])


def run(label, source, request, expect_deg, seed=0):
    t0 = time.time()
    try:
        wit = construct_composition(source, request, seed=seed)
        dt = time.time() - t0
        if wit.degree != expect_deg:
            failures.append(label)
            print(f"FAIL {label}: degree {wit.degree}, expected {expect_deg} [{dt:.1f}s]")
        else:
            print(f"PASS {label}: degree {wit.degree}, type {wit.tau_type}, "
                  f"target dim {wit.target.dim} [{dt:.1f}s]")
    except Exception:
        dt = time.time() - t0
        failures.append(label)
        print(f"FAIL {label}: exception after {dt:.1f}s")
        traceback.print_exc()


def run_raises(label, source, request):
    try:
        construct_composition(source, request)
    except NotCoveredError as e:
        print(f"PASS {label}: NotCoveredError ({e})")
        return
    except Exception:
        failures.append(label)
        print(f"FAIL {label}: wrong exception")
        traceback.print_exc()
        return
    failures.append(label)
    print(f"FAIL {label}: no exception raised")


m11 = cls((-1, -1))
triv = trivial_class(QQ)

# A. n = 3
q3 = diag(1, 1, 1)
run("A1 n=3 c=(-1,-1) symp", q3, {"kind": "first", "c": m11, "t": "symplectic"}, 2)
run("A2 n=3 c=(-1,-1) orth", q3, {"kind": "first", "c": m11, "t": "orthogonal"}, 4)
run("A3 n=3 c=triv symp", q3, {"kind": "first", "c": triv, "t": "symplectic"}, 4)

# B. n = 5, the quaternionic even Clifford model
q5 = diag(1, 1, 1, -1, 1)
run("B1 n=5 c=(-1,-1) symp", q5, {"kind": "first", "c": m11, "t": "symplectic"}, 4)
run("B2 n=5 c=(-1,-1) orth", q5, {"kind": "first", "c": m11, "t": "orthogonal"}, 8)

# C. n = 5, distance 1
q5b = diag(1, 1, -1, 1, -1)
run("C1 n=5 far symp", q5b, {"kind": "first", "c": m11, "t": "symplectic"}, 8)

# D. n = 4 split center
q4 = diag(1, 1, 1, 1)
run("D1 n=4 c=(-1,-1) symp", q4, {"kind": "first", "c": m11, "t": "symplectic"}, 2)
run("D2 n=4 c=triv symp", q4, {"kind": "first", "c": triv, "t": "symplectic"}, 4)

# E. n = 6, field center Q(i)
q6 = diag(1, 1, 1, 1, 1, 1)
run("E1 n=6 field-Z c=triv orth", q6, {"kind": "first", "c": triv, "t": "orthogonal"}, 8)
S_i = EtaleQuadratic(QQ, Q(-1), False)
run("E2 n=6 unitary S=Q(i)", q6, {"kind": "unitary", "S": S_i, "c0": triv}, 4)

# F. n = 6, split center (hyperbolic)
q6h = diag(1, -1, 1, -1, 1, -1)
run("F1 n=6 split-Z c=triv orth", q6h, {"kind": "first", "c": triv, "t": "orthogonal"}, 8)
S_split = EtaleQuadratic(QQ, Q(1), True)
run("F2 n=6 split-Z unitary S=QxQ", q6h, {"kind": "unitary", "S": S_split, "c0": triv}, 4)

# G. n = 3 unitary
run("G1 n=3 S=Q(i)", q3, {"kind": "unitary", "S": S_i, "c0": triv}, 2)
S_r2 = EtaleQuadratic(QQ, Q(2), False)
run("G2 n=3 S=Q(sqrt2)", q3, {"kind": "unitary", "S": S_r2, "c0": triv}, 4)
run("G3 n=3 S split", q3, {"kind": "unitary", "S": S_split, "c0": triv}, 4)

# H. finite fields
F3 = PrimeField(3)
q3f = QuadraticSpace.diagonal(F3, [1, 1, 1])
run("H1 GF(3) n=3 symp", q3f,
    {"kind": "first", "c": trivial_class(F3), "t": "symplectic"}, 2)
F2 = PrimeField(2)
q2f = QuadraticSpace(F2, [[1, 1], [0, 1]])
S_arf = EtaleQuadratic(F2, 1, False)
run("H2 GF(2) n=2 unitary", q2f,
    {"kind": "unitary", "S": S_arf, "c0": trivial_class(F2)}, 1)

# I. quadratic pair on a quaternion tensor product
Q1 = QuaternionAlgebra(QQ, Q(-1), Q(-1))
Q2 = QuaternionAlgebra(QQ, Q(2), Q(5))
pair = pair_on_quaternion_tensor(Q1, Q2)
pdata = clifford_of_pair(pair)
run("I1 pair source c=triv symp", pdata, {"kind": "first", "c": triv, "t": "symplectic"}, 4)

# J. distance bound witness: the regular representation
t0 = time.time()
try:
    want = dbound_min_degree(2, m11, triv)
    H = QuaternionAlgebra(QQ, Q(-1), Q(-1))
    rep = regular_representation(H)
    got = rep.B.deg
    dt = time.time() - t0
    if want == 4 and got == 4:
        print(f"PASS J1 dbound witness: bound {want}, witness degree {got} [{dt:.1f}s]")
    else:
        failures.append("J1")
        print(f"FAIL J1: bound {want}, witness degree {got}")
except Exception:
    failures.append("J1")
    traceback.print_exc()

# K. honest refusal
run_raises("K1 n=6 split-Z + field S", q6h, {"kind": "unitary", "S": S_r2, "c0": triv})

print()
if failures:
    print(f"{len(failures)} FAILURES: {failures}")
    sys.exit(1)
print("all smoke cases passed")

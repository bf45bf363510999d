"""Command line surface: JSON problem descriptions in, JSON results out.

Exit codes: 0 success, 2 invalid input, 3 not covered by the formula
case list, 4 certification failure.  Errors are also emitted as
structured JSON on standard error.  Rationals travel as strings.
"""

import argparse
import json
import sys

from .errors import (
    CertificationError,
    CliffcompError,
    NotCoveredError,
    UnsupportedInputError,
)
from .scalars import (
    QQ,
    EtaleQuadratic,
    Field,
    PrimeField,
    field_from_json,
    hilbert_symbol,
    hilbert_symbol_bruteforce,
    Place,
    PLACE_REAL,
)
from .quadform import QuadraticSpace
from .algebra import QuaternionAlgebra
from .qpair import pair_from_form, pair_on_quaternion_tensor
from .clifford import clifford_of_pair, even_clifford, split_compare
from .brauer import BrauerClass, trivial_class
from .mcd import (
    NOT_COVERED,
    admissible_degree,
    dbound_min_degree,
    lower_bound_first_kind,
    lower_bound_unitary,
    mcd_first_kind,
    mcd_unitary,
    profile_from_form,
    profile_from_pair_clifford,
)
from .compose import construct_composition, regular_representation
from .example import quaternionic_even_model

EXIT_OK, EXIT_INVALID, EXIT_NOT_COVERED, EXIT_CERT = 0, 2, 3, 4


# ---------------------------------------------------------------------------
# input decoding

def _parse_field(spec) -> Field:
    if spec is None:
        return QQ
    s = spec.strip()
    if s.startswith("{"):
        return field_from_json(json.loads(s))
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        return field_from_json({"kind": "GF", "p": int(s[3:-1])})
    raise UnsupportedInputError(f"unknown field descriptor {spec!r}")


def _parse_matrix(F: Field, rows: list) -> list:
    return [[F.parse(str(v)) for v in row] for row in rows]


def _parse_object(F: Field, spec: str, cap: int):
    """Returns ("form", QuadraticSpace) or ("pair", PairCliffordData)."""
    d = json.loads(spec)
    if "diag" in d:
        return "form", QuadraticSpace.diagonal(F, [F.parse(str(v)) for v in d["diag"]])
    if "gram" in d:
        # upper-triangular coefficient matrix: entry (i, j) with i <= j is
        # the coefficient of x_i x_j
        return "form", QuadraticSpace(F, _parse_matrix(F, d["gram"]))
    if "quaternion_pair" in d:
        (a1, b1), (a2, b2) = d["quaternion_pair"]
        Q1 = QuaternionAlgebra(F, F.parse(str(a1)), F.parse(str(b1)))
        Q2 = QuaternionAlgebra(F, F.parse(str(a2)), F.parse(str(b2)))
        pair = pair_on_quaternion_tensor(Q1, Q2)
        return "pair", clifford_of_pair(pair, max_degree=cap)
    raise UnsupportedInputError(f"unknown object description {spec!r}")


def _parse_class(F: Field, spec) -> BrauerClass:
    if spec is None:
        return trivial_class(F)
    symbols = json.loads(spec)
    return BrauerClass(F, [(F.parse(str(a)), F.parse(str(b))) for a, b in symbols])


def _parse_s(F: Field, spec: str) -> EtaleQuadratic:
    d = json.loads(spec)
    split = bool(d.get("split", False))
    datum = F.parse(str(d.get("datum", "1")))
    return EtaleQuadratic(F, datum, split)


def _parse_request(F: Field, args) -> dict:
    t = args.type
    if t in ("orthogonal", "symplectic"):
        return {"kind": "first", "c": _parse_class(F, args.cls), "t": t}
    if t == "unitary":
        if args.s is None:
            raise UnsupportedInputError("unitary requests need --s")
        return {"kind": "unitary", "S": _parse_s(F, args.s),
                "c0": _parse_class(F, args.cls)}
    raise UnsupportedInputError(f"unknown composition type {t!r}")


def _profile(kind: str, obj):
    return profile_from_form(obj) if kind == "form" else profile_from_pair_clifford(obj)


def _problem_echo(args) -> dict:
    return {
        "field": args.field,
        "object": json.loads(args.object) if args.object else None,
        "type": getattr(args, "type", None),
        "class": json.loads(args.cls) if args.cls else None,
        "s": json.loads(args.s) if args.s else None,
        "seed": getattr(args, "seed", 0),
        "truncation_cap": getattr(args, "truncation_cap", 4),
    }


# ---------------------------------------------------------------------------
# subcommands

def _cmd_invariants(args) -> dict:
    F = _parse_field(args.field)
    kind, obj = _parse_object(F, args.object, args.truncation_cap)
    return _profile(kind, obj).to_json()


def _mcd_result(args):
    F = _parse_field(args.field)
    kind, obj = _parse_object(F, args.object, args.truncation_cap)
    prof = _profile(kind, obj)
    request = _parse_request(F, args)
    if request["kind"] == "first":
        res = mcd_first_kind(prof, request["c"], request["t"])
    else:
        res = mcd_unitary(prof, request["S"], request["c0"])
    return prof, request, res


def _cmd_mcd(args) -> dict:
    prof, _, res = _mcd_result(args)
    out = res.to_json()
    out["profile"] = prof.to_json()
    if res.status == NOT_COVERED:
        print(json.dumps(out, indent=2))
        raise NotCoveredError(f"not covered: {res.case}")
    return out


def _cmd_bound(args) -> dict:
    prof, request, res = _mcd_result(args)
    if request["kind"] == "first":
        rep = lower_bound_first_kind(prof, request["c"], request["t"])
    else:
        rep = lower_bound_unitary(prof, request["S"], request["c0"])
    out = {"lower_bound": rep.to_json(), "formula": res.to_json()}
    if args.bound is not None:
        adm = admissible_degree(prof, request, args.bound)
        if isinstance(adm.get("params"), tuple):
            adm["params"] = list(adm["params"])
        out["candidate_degree"] = args.bound
        out["admissible"] = adm
    return out


def _cmd_compose(args) -> dict:
    F = _parse_field(args.field)
    kind, obj = _parse_object(F, args.object, args.truncation_cap)
    request = _parse_request(F, args)
    wit = construct_composition(obj, request, seed=args.seed)
    return {"problem": _problem_echo(args), "witness": wit.to_json(), "verified": True}


def _cmd_verify(args) -> dict:
    if args.object:
        bundle = json.loads(args.object)
    else:
        bundle = json.load(sys.stdin)
    problem = bundle["problem"]

    class Shim:
        pass

    shim = Shim()
    shim.field = problem.get("field")
    shim.object = json.dumps(problem["object"])
    shim.type = problem.get("type")
    shim.cls = json.dumps(problem["class"]) if problem.get("class") is not None else None
    shim.s = json.dumps(problem["s"]) if problem.get("s") is not None else None
    shim.seed = int(problem.get("seed", 0))
    shim.truncation_cap = int(problem.get("truncation_cap", 4))
    rebuilt = _cmd_compose(shim)
    if rebuilt["witness"] != bundle["witness"]:
        raise CertificationError("replayed witness differs from the bundle")
    return {"verified": True, "degree": rebuilt["witness"]["degree"],
            "involution_type": rebuilt["witness"]["involution_type"]}


def _cmd_example1(args) -> dict:
    F = _parse_field(args.field)
    rep = quaternionic_even_model(F, F.parse(args.a), F.parse(args.b))
    out = rep.to_json()
    out["compositions"] = {
        "anti_hermitian": {"gram": "[[0,1],[-1,0]] over the k-twisted involution",
                           "verified": bool(rep.checks.get("composes_anti_hermitian"))},
        "hermitian": {"gram": "[[0,k],[-k,0]] over the canonical involution",
                      "verified": bool(rep.checks.get("composes_hermitian"))},
    }
    return out


def _selftest_cases():
    from fractions import Fraction as Fr

    def classes_metric():
        syms = [[], [(-1, -1)], [(2, 5)], [(-1, -1), (2, 5)], [(3, 7)]]
        cs = [BrauerClass(QQ, [(Fr(a), Fr(b)) for a, b in s]) for s in syms]
        for x in cs:
            assert x.distance(x) == 0
            for y in cs:
                assert x.distance(y) == y.distance(x)
                for z in cs:
                    assert x.distance(z) <= x.distance(y) + y.distance(z)
        return "metric axioms on 5 classes"

    def hilbert_agreement():
        places = [PLACE_REAL, Place(2), Place(3), Place(5)]
        for a in range(-6, 7):
            for b in range(-6, 7):
                if a and b:
                    for v in places:
                        assert hilbert_symbol(Fr(a), Fr(b), v) == \
                            hilbert_symbol_bruteforce(Fr(a), Fr(b), v)
        return "Hilbert symbols vs congruence oracle, |a|,|b| <= 6"

    def clifford_dims():
        for entries, dim in [([1, 1, 1], 4), ([1, 1, 1, 1], 8), ([1, -1], 2)]:
            q = QuadraticSpace.diagonal(QQ, [Fr(v) for v in entries])
            _, C0, _, _, _ = even_clifford(q)
            assert C0.dim == dim
        return "even Clifford dimensions"

    def pair_coherence():
        q = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(-1)])
        pair, aux = pair_from_form(q)
        data = clifford_of_pair(pair)
        split_compare(data, aux)
        return "pair Clifford matches the even Clifford algebra on <1,-1>"

    def compose_quick():
        q3 = QuadraticSpace.diagonal(QQ, [Fr(1)] * 3)
        c = BrauerClass(QQ, [(Fr(-1), Fr(-1))])
        wit = construct_composition(q3, {"kind": "first", "c": c, "t": "symplectic"})
        assert wit.degree == 2
        S = EtaleQuadratic(QQ, Fr(-1), False)
        wit = construct_composition(q3, {"kind": "unitary", "S": S,
                                         "c0": trivial_class(QQ)})
        assert wit.degree == 2
        F2 = PrimeField(2)
        q2 = QuadraticSpace(F2, [[1, 1], [0, 1]])
        wit = construct_composition(q2, {"kind": "unitary",
                                         "S": EtaleQuadratic(F2, 1, False),
                                         "c0": trivial_class(F2)})
        assert wit.degree == 1
        return "three composition witnesses at the formula degree"

    def model_check():
        rep = quaternionic_even_model(QQ, Fr(-1), Fr(-1))
        assert all(rep.checks.values()) and rep.minimal_degree == 4
        return "quaternionic model certified"

    def dbound_check():
        c = BrauerClass(QQ, [(Fr(-1), Fr(-1))])
        assert dbound_min_degree(2, c, trivial_class(QQ)) == 4
        H = QuaternionAlgebra(QQ, Fr(-1), Fr(-1))
        assert regular_representation(H).B.deg == 4
        return "distance bound realized by the regular representation"

    def exclusion_check():
        q6 = QuadraticSpace.diagonal(QQ, [Fr(1), Fr(-1)] * 3)
        S = EtaleQuadratic(QQ, Fr(2), False)
        try:
            construct_composition(q6, {"kind": "unitary", "S": S,
                                       "c0": trivial_class(QQ)})
        except NotCoveredError:
            return "excluded configuration refused honestly"
        raise CertificationError("excluded configuration was not refused")

    return [classes_metric, hilbert_agreement, clifford_dims, pair_coherence,
            compose_quick, model_check, dbound_check, exclusion_check]


def _cmd_selftest(args) -> dict:
    results = []
    failed = 0
    for fn in _selftest_cases():
        try:
            detail = fn()
            results.append({"name": fn.__name__, "ok": True, "detail": detail})
        except Exception as e:  # noqa: BLE001 - report and count every failure
            failed += 1
            results.append({"name": fn.__name__, "ok": False,
                            "detail": f"{type(e).__name__}: {e}"})
    out = {"cases": results, "passed": len(results) - failed, "failed": failed}
    if failed:
        print(json.dumps(out, indent=2))
        raise CertificationError(f"{failed} selftest case(s) failed")
    return out


# ---------------------------------------------------------------------------
# dispatch

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliffcomp",
                                description="exact composition degrees for "
                                            "quadratic forms and pairs")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_type=True):
        sp.add_argument("--field", default=None,
                        help='base field: "Q" (default) or "GF(p)" or JSON')
        sp.add_argument("--object", required=True,
                        help='JSON: {"diag": [...]}, {"gram": [[...]]}, '
                             'or {"quaternion_pair": [[a,b],[a,b]]}')
        if with_type:
            sp.add_argument("--type", required=True,
                            choices=["orthogonal", "symplectic", "unitary"])
            sp.add_argument("--class", dest="cls", default=None,
                            help='target class as JSON symbol list [["a","b"],...]')
            sp.add_argument("--s", default=None,
                            help='quadratic extension datum as JSON '
                                 '{"datum": "m"} or {"split": true}')
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--truncation-cap", dest="truncation_cap", type=int, default=4,
                        help="tensor-length cap for pair Clifford construction")

    common(sub.add_parser("invariants", help="invariant profile of the object"),
           with_type=False)
    common(sub.add_parser("mcd", help="minimal composition degree"))
    spb = sub.add_parser("bound", help="lower bound report")
    common(spb)
    spb.add_argument("--bound", type=int, default=None,
                     help="also check this candidate degree for admissibility")
    common(sub.add_parser("compose", help="build and certify a witness"))
    spv = sub.add_parser("verify", help="replay and re-certify a witness bundle")
    spv.add_argument("--object", default=None,
                     help="witness bundle JSON (default: read stdin)")
    spe = sub.add_parser("example1", help="certified quaternionic model report")
    spe.add_argument("--a", required=True)
    spe.add_argument("--b", required=True)
    spe.add_argument("--field", default=None)
    sub.add_parser("selftest", help="run the built-in property battery")
    return p


_HANDLERS = {
    "invariants": _cmd_invariants,
    "mcd": _cmd_mcd,
    "bound": _cmd_bound,
    "compose": _cmd_compose,
    "verify": _cmd_verify,
    "example1": _cmd_example1,
    "selftest": _cmd_selftest,
}

_PARSE_ERRORS = (UnsupportedInputError, ValueError, KeyError, json.JSONDecodeError)


def run(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    try:
        out = _HANDLERS[args.command](args)
    except NotCoveredError as e:
        _emit_error("not-covered", e)
        return EXIT_NOT_COVERED
    except CertificationError as e:
        _emit_error("certification-failure", e)
        return EXIT_CERT
    except _PARSE_ERRORS as e:
        _emit_error("invalid-input", e)
        return EXIT_INVALID
    except CliffcompError as e:
        _emit_error("invalid-input", e)
        return EXIT_INVALID
    print(json.dumps(out, indent=2))
    return EXIT_OK


def _emit_error(kind: str, e: Exception) -> None:
    print(json.dumps({"error": kind, "type": type(e).__name__, "message": str(e)}),
          file=sys.stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Survey minimal composition degrees across random rational forms.

For each degree n and a few target choices this samples regular diagonal
forms, evaluates the degree formula, and tabulates the status counts and
the distribution of log2 values.  Useful for eyeballing how often the
exact formulas apply and how the degree grows with n.

Usage: python3 scripts/degree_survey.py [--samples 40] [--seed 7] [--json]
"""

import argparse
import json
import random
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cliffcomp.brauer import BrauerClass, trivial_class
from cliffcomp.mcd import mcd_first_kind, mcd_unitary, profile_from_form
from cliffcomp.quadform import random_form
from cliffcomp.scalars import QQ, EtaleQuadratic


TARGETS = [
    ("first/trivial/symplectic", "first", (None, "symplectic")),
    ("first/(-1,-1)/symplectic", "first", ("HH", "symplectic")),
    ("first/trivial/orthogonal", "first", (None, "orthogonal")),
    ("unitary/Q(i)", "unitary", ("I",)),
    ("unitary/QxQ", "unitary", ("SPLIT",)),
]


def resolve_request(kind, params):
    hh = BrauerClass(QQ, [(Fraction(-1), Fraction(-1))])
    if kind == "first":
        c, t = params
        return {"c": hh if c == "HH" else trivial_class(QQ), "t": t}
    S = {"I": EtaleQuadratic(QQ, Fraction(-1), False),
         "SPLIT": EtaleQuadratic(QQ, Fraction(1), True)}[params[0]]
    return {"S": S, "c0": trivial_class(QQ)}


def survey(samples: int, seed: int):
    rng = random.Random(seed)
    rows = []
    for n in range(2, 7):
        profiles = [profile_from_form(random_form(QQ, n, rng))
                    for _ in range(samples)]
        for label, kind, params in TARGETS:
            req = resolve_request(kind, params)
            statuses = Counter()
            log2s = Counter()
            for prof in profiles:
                if kind == "first":
                    res = mcd_first_kind(prof, req["c"], req["t"])
                else:
                    res = mcd_unitary(prof, req["S"], req["c0"])
                statuses[res.status] += 1
                if res.log2 is not None:
                    log2s[res.log2] += 1
            rows.append({
                "n": n,
                "target": label,
                "statuses": dict(statuses),
                "log2_histogram": dict(sorted(log2s.items())),
            })
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=40)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--json", action="store_true", help="emit JSON lines")
    args = ap.parse_args()
    rows = survey(args.samples, args.seed)
    if args.json:
        for row in rows:
            print(json.dumps(row))
        return
    width = max(len(r["target"]) for r in rows)
    for row in rows:
        st = ", ".join(f"{k}:{v}" for k, v in sorted(row["statuses"].items()))
        hist = " ".join(f"2^{k}x{v}" for k, v in row["log2_histogram"].items())
        print(f"n={row['n']}  {row['target']:<{width}}  {st:<28}  {hist}")


if __name__ == "__main__":
    main()

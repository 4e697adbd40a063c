#!/usr/bin/env python3
"""Write the shipped category fixtures (exact cyclotomic data) as JSON."""
import json
import os
import sys
from fractions import Fraction

from sympy import Poly, cyclotomic_poly, symbols, totient

X = symbols("x")


class Cyc:
    """sum_j c_j zeta_N^j with rational c_j."""

    def __init__(self, n, terms):
        self.n = n
        self.terms = {j % n: Fraction(c) for j, c in terms.items() if c != 0}

    @staticmethod
    def rat(q):
        return Cyc(1, {0: Fraction(q)})

    @staticmethod
    def zeta(n, k=1):
        return Cyc(n, {k % n: 1})

    def lift(self, m):
        s = m // self.n
        out = {}
        for j, c in self.terms.items():
            out[(j * s) % m] = out.get((j * s) % m, 0) + c
        return Cyc(m, out)

    def __add__(self, o):
        from math import lcm
        m = lcm(self.n, o.n)
        a, b = self.lift(m), o.lift(m)
        t = dict(a.terms)
        for j, c in b.terms.items():
            t[j] = t.get(j, 0) + c
        return Cyc(m, t)

    def __neg__(self):
        return Cyc(self.n, {j: -c for j, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        from math import lcm
        m = lcm(self.n, o.n)
        a, b = self.lift(m), o.lift(m)
        t = {}
        for i, c in a.terms.items():
            for j, d in b.terms.items():
                t[(i + j) % m] = t.get((i + j) % m, 0) + c * d
        return Cyc(m, t)

    def to_json(self):
        n = self.n
        phi = int(totient(n))
        if n == 1:
            return {"order": 1, "coeffs": [str(self.terms.get(0, Fraction(0)))]}
        poly = sum((c * X**j for j, c in self.terms.items()), 0)
        rem = Poly(poly, X, domain="QQ").rem(Poly(cyclotomic_poly(n, X), X, domain="QQ"))
        coeffs = [Fraction(0)] * phi
        for (deg,), c in rem.terms():
            coeffs[deg] = Fraction(int(c.p), int(c.q))
        if all(c == 0 for c in coeffs[1:]):
            return {"order": 1, "coeffs": [str(coeffs[0])]}
        return {"order": n, "coeffs": [str(c) for c in coeffs]}


ONE = Cyc.rat(1)


def build(name, labels, dual, fusion, fvals, rvals, twist):
    """fusion: dict (a,b) -> list of c; fvals: dict (a,b,c,d,e,f) -> Cyc for
    non-trivial entries (all other admissible entries are 1); rvals likewise."""
    n = len(labels)

    def N(a, b, c):
        return 1 if c in fusion[(a, b)] else 0

    F = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    for e in range(n):
                        if not (N(a, b, e) and N(e, c, d)):
                            continue
                        for f in range(n):
                            if not (N(b, c, f) and N(a, f, d)):
                                continue
                            v = fvals.get((a, b, c, d, e, f), ONE)
                            F.append({"key": [labels[x] for x in (a, b, c, d, e, f)], "value": v.to_json()})
    R = []
    for a in range(n):
        for b in range(n):
            for c in fusion[(a, b)]:
                v = rvals.get((a, b, c), ONE)
                R.append({"key": [labels[a], labels[b], labels[c]], "value": v.to_json()})
    fus = [[labels[a], labels[b], labels[c]] for a in range(n) for b in range(n) for c in sorted(fusion[(a, b)])]
    pivotal = []
    for a in range(n):
        # kappa_a = theta_a R^{a a*}_1
        pivotal.append((twist[a] * rvals.get((a, dual[a], 0), ONE)).to_json())
    return {
        "name": name,
        "unit": labels[0],
        "labels": labels,
        "dual": [labels[d] for d in dual],
        "fusion": fus,
        "F": F,
        "R": R,
        "twist": [t.to_json() for t in twist],
        "pivotal": pivotal,
    }


def pointed(name, labels, n, fcocycle, rform, twist):
    fusion = {(a, b): [(a + b) % n] for a in range(n) for b in range(n)}
    fvals = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                fvals[(a, b, c, (a + b + c) % n, (a + b) % n, (b + c) % n)] = fcocycle(a, b, c)
    rvals = {(a, b, (a + b) % n): rform(a, b) for a in range(n) for b in range(n)}
    dual = [(-a) % n for a in range(n)]
    return build(name, labels, dual, fusion, fvals, rvals, [twist(a) for a in range(n)])


def fixtures():
    out = {}
    out["triv"] = pointed("triv", ["1"], 1, lambda a, b, c: ONE, lambda a, b: ONE, lambda a: ONE)
    i = Cyc.zeta(4)
    out["z2-semion"] = pointed(
        "z2-semion", ["1", "s1"], 2,
        lambda a, b, c: Cyc.rat(-1) if a == b == c == 1 else ONE,
        lambda a, b: i if a == b == 1 else ONE,
        lambda a: i if a == 1 else ONE)
    out["z2-fermion"] = pointed(
        "z2-fermion", ["1", "f"], 2,
        lambda a, b, c: ONE,
        lambda a, b: Cyc.rat(-1) if a == b == 1 else ONE,
        lambda a: Cyc.rat(-1) if a == 1 else ONE)
    out["z4"] = pointed(
        "z4", ["0", "1", "2", "3"], 4,
        lambda a, b, c: Cyc.rat(-1) if (a % 2 == 1 and b + c >= 4) else ONE,
        lambda a, b: Cyc.zeta(8, a * b),
        lambda a: Cyc.zeta(8, a * a))

    # Fibonacci, in a gauge with all symbols in Q(zeta_5)
    z5 = lambda k: Cyc.zeta(5, k)
    phinv = z5(1) + z5(4)          # golden ratio minus one
    fib_fusion = {(0, 0): [0], (0, 1): [1], (1, 0): [1], (1, 1): [0, 1]}
    fib_F = {(1, 1, 1, 1, 0, 0): phinv, (1, 1, 1, 1, 0, 1): phinv,
             (1, 1, 1, 1, 1, 0): ONE, (1, 1, 1, 1, 1, 1): -phinv}
    fib_R = {(1, 1, 0): z5(3), (1, 1, 1): -z5(4)}
    out["fib"] = build("fib", ["1", "tau"], [0, 1], fib_fusion, fib_F, fib_R, [ONE, z5(2)])

    # Ising: labels 1, psi, sigma
    z16 = lambda k: Cyc.zeta(16, k)
    half_sqrt2 = Cyc(8, {1: Fraction(1, 2), 7: Fraction(1, 2)})
    is_fusion = {(0, 0): [0], (0, 1): [1], (0, 2): [2], (1, 0): [1], (1, 1): [0], (1, 2): [2],
                 (2, 0): [2], (2, 1): [2], (2, 2): [0, 1]}
    is_F = {(2, 2, 2, 2, 0, 0): half_sqrt2, (2, 2, 2, 2, 0, 1): half_sqrt2,
            (2, 2, 2, 2, 1, 0): half_sqrt2, (2, 2, 2, 2, 1, 1): -half_sqrt2,
            (1, 2, 1, 2, 2, 2): Cyc.rat(-1), (2, 1, 2, 1, 2, 2): Cyc.rat(-1)}
    is_R = {(2, 2, 0): z16(15), (2, 2, 1): z16(3), (2, 1, 2): z16(12), (1, 2, 2): z16(12),
            (1, 1, 0): Cyc.rat(-1)}
    out["ising"] = build("ising", ["1", "psi", "s"], [0, 1, 2], is_fusion, is_F, is_R,
                         [ONE, Cyc.rat(-1), z16(1)])
    return out


def render(doc):
    lines = []
    for k, v in doc.items():
        if isinstance(v, list) and v and isinstance(v[0], (list, dict)):
            body = ",\n".join("  " + json.dumps(e) for e in v)
            lines.append(f' "{k}": [\n{body}\n ]')
        else:
            lines.append(f' "{k}": {json.dumps(v)}')
    return "{\n" + ",\n".join(lines) + "\n}\n"


def main():
    dest = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "fixtures")
    os.makedirs(dest, exist_ok=True)
    for name, doc in fixtures().items():
        with open(os.path.join(dest, name + ".json"), "w") as fh:
            fh.write(render(doc))


if __name__ == "__main__":
    main()

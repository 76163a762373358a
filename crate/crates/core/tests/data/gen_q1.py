#!/usr/bin/env python3
"""Independent generator for Q(N, beta) in the qhspec text format.

Elements are normalised by rewriting words in K, f+_k, f-_k using only the
defining relations; scalars live in Q(z8) as coefficient lists modulo
z^4 = -1. The output is compared against the Rust construction in
tests/sympferm_oracle.rs.

Usage: gen_q1.py [N] [BETA_POWER]   (beta = z8^BETA_POWER, default 1 7)
"""

import sys
from fractions import Fraction
from itertools import product

# --- Q(z8): a0 + a1 z + a2 z^2 + a3 z^3, z^4 = -1 --------------------------


class Z8:
    __slots__ = ("c",)

    def __init__(self, c=(0, 0, 0, 0)):
        self.c = tuple(Fraction(x) for x in c)

    @staticmethod
    def of(x):
        return x if isinstance(x, Z8) else Z8((x, 0, 0, 0))

    @staticmethod
    def zeta(k):
        k %= 8
        sign = -1 if k >= 4 else 1
        c = [0, 0, 0, 0]
        c[k % 4] = sign
        return Z8(c)

    def __add__(self, o):
        o = Z8.of(o)
        return Z8(a + b for a, b in zip(self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return Z8(-a for a in self.c)

    def __sub__(self, o):
        return self + (-Z8.of(o))

    def __mul__(self, o):
        o = Z8.of(o)
        out = [Fraction(0)] * 4
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(o.c):
                if b == 0:
                    continue
                k = i + j
                if k >= 4:
                    out[k - 4] -= a * b
                else:
                    out[k] += a * b
        return Z8(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = Z8.of(1)
        for _ in range(e):
            r = r * self
        return r

    def is_zero(self):
        return all(a == 0 for a in self.c)

    def __eq__(self, o):
        return self.c == Z8.of(o).c

    def __hash__(self):
        return hash(self.c)

    def text(self):
        terms = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            num = f"({a})" if a.denominator != 1 or a < 0 else f"{a}"
            terms.append(num if k == 0 else f"{num}*z8^{k}")
        return " + ".join(terms) if terms else "0"


I = Z8.zeta(2)
HALF = Z8.of(Fraction(1, 2))

# --- words and normal forms --------------------------------------------------
# A generator is ("K",) or ("+", k) or ("-", k) with k zero-based.
# Normal form: f+ in increasing k, then f- in increasing k, then K^i.


class Algebra:
    def __init__(self, n):
        self.n = n
        self.basis = []
        for a in range(1 << n):
            for b in range(1 << n):
                for i in range(4):
                    self.basis.append((a, b, i))
        self.index = {t: j for j, t in enumerate(self.basis)}

    def word(self, a, b, i):
        w = [("+", k) for k in range(self.n) if a >> k & 1]
        w += [("-", k) for k in range(self.n) if b >> k & 1]
        w += [("K",)] * i
        return w

    def normal(self, terms):
        """Rewrite a dict {word tuple: coeff} into {(a, b, i): coeff}."""
        out = {}
        todo = list(terms.items())
        while todo:
            w, c = todo.pop()
            if c.is_zero():
                continue
            w = list(w)
            done = False
            for p in range(len(w) - 1):
                x, y = w[p], w[p + 1]
                rank = lambda g: (0, g[1]) if g[0] == "+" else (1, g[1]) if g[0] == "-" else (2, 0)
                if x == y and x[0] != "K":
                    done = True  # (f)^2 = 0
                    break
                if rank(x) <= rank(y):
                    continue
                swapped = w[:p] + [y, x] + w[p + 2 :]
                if x[0] == "K" or y[0] == "K":
                    # K anticommutes with every f
                    todo.append((tuple(swapped), -c))
                elif x[0] == "-" and y[0] == "+" and x[1] == y[1]:
                    # f- f+ = -f+ f- + e1, e1 = (1 - K^2)/2
                    todo.append((tuple(swapped), -c))
                    todo.append((tuple(w[:p] + w[p + 2 :]), c * HALF))
                    todo.append((tuple(w[:p] + [("K",), ("K",)] + w[p + 2 :]), -c * HALF))
                else:
                    todo.append((tuple(swapped), -c))
                done = True
                break
            if done:
                continue
            a = sum(1 << g[1] for g in w if g[0] == "+")
            b = sum(1 << g[1] for g in w if g[0] == "-")
            i = sum(1 for g in w if g[0] == "K") % 4
            key = (a, b, i)
            out[key] = out.get(key, Z8()) + c
        return {k: v for k, v in out.items() if not v.is_zero()}

    def mul(self, x, y):
        terms = {}
        for u, c in x.items():
            for v, e in y.items():
                w = tuple(self.word(*u) + self.word(*v))
                terms[w] = terms.get(w, Z8()) + c * e
        return self.normal(terms)

    def add(self, *xs, coeffs=None):
        out = {}
        for j, x in enumerate(xs):
            s = Z8.of(1) if coeffs is None else Z8.of(coeffs[j])
            for k, v in x.items():
                out[k] = out.get(k, Z8()) + s * v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def scale(self, s, x):
        return {k: v * s for k, v in x.items() if not (v * s).is_zero()}

    def one(self):
        return {(0, 0, 0): Z8.of(1)}

    def gen(self, g):
        if g[0] == "K":
            return {(0, 0, 1): Z8.of(1)}
        if g[0] == "+":
            return {(1 << g[1], 0, 0): Z8.of(1)}
        return {(0, 1 << g[1], 0): Z8.of(1)}

    def power(self, x, e):
        r = self.one()
        for _ in range(e):
            r = self.mul(r, x)
        return r


# tensors: dict {(k1, k2, ...): coeff} with basis tuples as keys


def t_mul(alg, x, y):
    out = {}
    for u, c in x.items():
        for v, e in y.items():
            parts = [alg.mul({a: Z8.of(1)}, {b: Z8.of(1)}) for a, b in zip(u, v)]
            for combo in product(*[list(p.items()) for p in parts]):
                key = tuple(k for k, _ in combo)
                coeff = c * e
                for _, s in combo:
                    coeff = coeff * s
                out[key] = out.get(key, Z8()) + coeff
    return {k: v for k, v in out.items() if not v.is_zero()}


def t_pure(*legs):
    out = {}
    for combo in product(*[list(l.items()) for l in legs]):
        key = tuple(k for k, _ in combo)
        coeff = Z8.of(1)
        for _, s in combo:
            coeff = coeff * s
        out[key] = out.get(key, Z8()) + coeff
    return {k: v for k, v in out.items() if not v.is_zero()}


def t_add(*xs):
    out = {}
    for x in xs:
        for k, v in x.items():
            out[k] = out.get(k, Z8()) + v
    return {k: v for k, v in out.items() if not v.is_zero()}


def build(n, beta):
    A = Algebra(n)
    one = A.one()
    K = A.gen(("K",))
    Kn = A.power(K, n)
    K2 = A.power(K, 2)
    e0 = A.scale(HALF, A.add(one, K2))
    e1 = A.scale(HALF, A.add(one, K2, coeffs=[1, -1]))
    omega = {s: A.mul(A.add(e0, A.scale(s * I, e1)), K) for s in (1, -1)}
    beta2 = beta * beta
    beta_pm = {s: A.add(e0, A.scale(beta2, A.mul(A.power(A.scale(s * I, K), n), e1))) for s in (1, -1)}
    sgn_n = 1 if n % 2 == 0 else -1

    # coproduct, antipode and inverse antipode on generators
    d_gen, s_gen, si_gen = {}, {}, {}
    d_gen[("K",)] = t_add(t_pure(K, K), t_pure(A.scale(Z8.of(-(1 + sgn_n)), A.mul(e1, K)), A.mul(e1, K)))
    sk = A.mul(A.add(e0, A.scale(Z8.of(sgn_n), e1)), K)
    s_gen[("K",)] = sk
    si_gen[("K",)] = sk
    for k in range(n):
        for s, tag in ((1, "+"), (-1, "-")):
            f = A.gen((tag, k))
            d_gen[(tag, k)] = t_add(t_pure(f, one), t_pure(omega[s], f))
            s_gen[(tag, k)] = A.mul(f, A.mul(A.add(e0, A.scale(s * sgn_n * I, e1)), K))
            si_gen[(tag, k)] = A.mul(omega[s], f)

    coproduct, antipode, antipode_inv = [], [], []
    for basis in A.basis:
        w = A.word(*basis)
        d = t_pure(one, one)
        s = one
        si = one
        for g in w:
            d = t_mul(A, d, d_gen[g])
            s = A.mul(s_gen[g], s)
            si = A.mul(si_gen[g], si)
        coproduct.append(d)
        antipode.append(s)
        antipode_inv.append(si)

    def phi(s):
        inner = A.add(A.mul(e0, A.add(Kn, one, coeffs=[1, -1])), A.mul(e1, A.add(beta_pm[s], one, coeffs=[1, -1])))
        return t_add(t_pure(one, one, one), t_pure(e1, e1, inner))

    pivot = A.mul(A.add(e0, A.scale((-I) ** (n + 1), A.mul(e1, Kn))), K)

    def twist(s):
        # f^{+1} uses beta_-, f^{-1} uses beta_+
        return t_add(t_pure(e0, one), t_pure(e1, A.mul(e0, Kn)), t_pure(A.mul(e1, beta_pm[-s]), e1))

    e0pm = {s: A.scale(HALF, A.mul(A.add(one, A.scale(Z8.of(s), K)), e0)) for s in (1, -1)}
    prod_ff = one
    prod_v = one
    for k in range(n):
        ff = A.mul(A.gen(("+", k)), A.gen(("-", k)))
        prod_ff = A.mul(prod_ff, ff)
        prod_v = A.mul(prod_v, A.add(one, A.scale(Z8.of(-2), ff)))
    e1pm = {s: A.scale(HALF, A.mul(e1, A.add(one, A.scale(-s * I, A.mul(K, prod_v))))) for s in (1, -1)}
    xpm = {s: A.mul(prod_ff, e0pm[s]) for s in (1, -1)}

    full = (1 << n) - 1
    sym = {(full, full, 1): beta2 + I, (full, full, 3): beta2 - I}

    elements = [
        ("e0", e0), ("e1", e1),
        ("omega+", omega[1]), ("omega-", omega[-1]),
        ("beta+", beta_pm[1]), ("beta-", beta_pm[-1]),
        ("e0+", e0pm[1]), ("e0-", e0pm[-1]),
        ("e1+", e1pm[1]), ("e1-", e1pm[-1]),
        ("x+", xpm[1]), ("x-", xpm[-1]),
        ("y+", e1pm[1]), ("y-", e1pm[-1]),
    ]
    generators = [("K", K)]
    for k in range(n):
        generators.append((f"f+{k + 1}", A.gen(("+", k))))
        generators.append((f"f-{k + 1}", A.gen(("-", k))))

    return dict(
        A=A, coproduct=coproduct, antipode=antipode, antipode_inv=antipode_inv,
        phi=phi(1), phi_inv=phi(-1), alpha=one, beta=beta_pm[1], pivot=pivot,
        twist=twist(1), twist_inv=twist(-1), generators=generators,
        elements=elements, sym=sym,
    )


def label(n, key):
    a, b, i = key
    digits = lambda m: "".join(str(k + 1) for k in range(n) if m >> k & 1)
    return f"F({digits(a)}|{digits(b)}|{i})"


def emit(n, data):
    A = data["A"]
    ix = A.index
    out = ["qhspec 1", "field 8", f"dim {len(A.basis)}"]
    out += [f"label {j} {label(n, t)}" for j, t in enumerate(A.basis)]

    def vec(name, x):
        out.append(name)
        for k in sorted(x, key=lambda k: ix[k]):
            out.append(f"{ix[k]} {x[k].text()}")
        out.append("end")

    def tensor(name, t):
        out.append(name)
        for k in sorted(t, key=lambda k: [ix[p] for p in k]):
            out.append(" ".join(str(ix[p]) for p in k) + f" {t[k].text()}")
        out.append("end")

    vec("unit", A.one())
    out.append("mul")
    for u in A.basis:
        for v in A.basis:
            p = A.mul({u: Z8.of(1)}, {v: Z8.of(1)})
            for k in sorted(p, key=lambda k: ix[k]):
                out.append(f"{ix[u]} {ix[v]} {ix[k]} {p[k].text()}")
    out.append("end")
    for name in ("coproduct", "antipode", "antipode_inv"):
        out.append(name)
        for j, img in enumerate(data[name]):
            for k in sorted(img, key=lambda k: [ix[p] for p in k] if isinstance(k[0], tuple) else [ix[k]]):
                legs = k if isinstance(k[0], tuple) else (k,)
                out.append(f"{j} " + " ".join(str(ix[p]) for p in legs) + f" {img[k].text()}")
        out.append("end")
    vec("counit", {t: Z8.of(1) for t in A.basis if t[0] == 0 and t[1] == 0})
    tensor("phi", data["phi"])
    tensor("phi_inv", data["phi_inv"])
    vec("alpha", data["alpha"])
    vec("beta", data["beta"])
    vec("pivot", data["pivot"])
    tensor("twist", data["twist"])
    tensor("twist_inv", data["twist_inv"])
    for name, g in data["generators"]:
        vec(f"generator {name}", g)
    for name, e in data["elements"]:
        vec(f"element {name}", e)
    vec("form symmetrised", data["sym"])
    return "\n".join(out) + "\n"


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    power = int(sys.argv[2]) if len(sys.argv) > 2 else 7
    beta = Z8.zeta(power)
    assert beta ** 4 == Z8.of(-1 if n % 2 else 1), "beta^4 must be (-1)^N"
    sys.stdout.write(emit(n, build(n, beta)))


if __name__ == "__main__":
    main()

"""Ext^0 and Ext^1 of the natural module F_2^n over the monoid algebra F_2[M_n(F_2)].

Usage: ext_monoid.py n

Standalone brute force over the cobar complex Hom(V, W) -> Map(M, Hom(V, W)) -> Map(M^2, Hom(V, W)).
"""
import sys


def mats(n):
    return [tuple((b >> (i * n)) & ((1 << n) - 1) for i in range(n)) for b in range(1 << (n * n))]


def mul(a, b):
    out = []
    for row in a:
        v, k = 0, 0
        while row:
            if row & 1:
                v ^= b[k]
            row >>= 1
            k += 1
        out.append(v)
    return tuple(out)


def ent(m, r, c):
    return (m[r] >> c) & 1


class Basis:
    def __init__(self):
        self.piv = {}

    def add(self, v):
        while v:
            h = v.bit_length() - 1
            if h in self.piv:
                v ^= self.piv[h]
            else:
                self.piv[h] = v
                return


def main():
    n = int(sys.argv[1])
    ms = mats(n)
    ix = {m: i for i, m in enumerate(ms)}
    s, w = len(ms), n * n

    def c0(r, c):
        return r * n + c

    def c1(f, r, c):
        return f * w + r * n + c

    b0 = Basis()
    for f in ms:
        for r in range(n):
            for c in range(n):
                v = 0
                for k in range(n):
                    if ent(f, r, k):
                        v ^= 1 << c0(k, c)
                    if ent(f, k, c):
                        v ^= 1 << c0(r, k)
                b0.add(v)
    b1 = Basis()
    for fi, f in enumerate(ms):
        for gi, g in enumerate(ms):
            gf = ix[mul(g, f)]
            for r in range(n):
                for c in range(n):
                    v = 1 << c1(gf, r, c)
                    for k in range(n):
                        if ent(g, r, k):
                            v ^= 1 << c1(fi, k, c)
                        if ent(f, k, c):
                            v ^= 1 << c1(gi, r, k)
                    b1.add(v)
    r0, r1 = len(b0.piv), len(b1.piv)
    print(f"n={n} Ext0={w - r0} Ext1={s * w - r1 - r0}")


main()

"""Ext^0 and Ext^1 of (Id, Id) over functors on a full subcategory of P(F_2).

Usage: ext_category.py RANK [RANK ...]   (objects A^RANK, e.g. 0 1 2 3)

Standalone brute force: plain cobar cochains, Python integers as GF(2)
bit vectors, no shared code with the C++ library.
"""
import sys


def mats(r, c):
    return [tuple((b >> (i * c)) & ((1 << c) - 1) for i in range(r)) for b in range(1 << (r * c))]


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
    objs = [int(a) for a in sys.argv[1:]]
    hom = {(x, y): mats(y, x) for x in objs for y in objs}
    idx = {(k, m): i for k, v in hom.items() for i, m in enumerate(v)}
    c0, c1 = {}, {}
    for x in objs:
        for r in range(x):
            for c in range(x):
                c0[(x, r, c)] = len(c0)
    for (x, y), homs in hom.items():
        for i in range(len(homs)):
            for r in range(y):
                for c in range(x):
                    c1[(x, y, i, r, c)] = len(c1)
    # (d c)(f) = f c_x - c_y f
    b0 = Basis()
    for (x, y), homs in hom.items():
        for f in homs:
            for r in range(y):
                for c in range(x):
                    v = 0
                    for k in range(x):
                        if ent(f, r, k):
                            v ^= 1 << c0[(x, k, c)]
                    for k in range(y):
                        if ent(f, k, c):
                            v ^= 1 << c0[(y, r, k)]
                    b0.add(v)
    # (d c)(f, g) = g c(f) - c(g f) + c(g) f
    b1 = Basis()
    for x in objs:
        for y in objs:
            for z in objs:
                for fi, f in enumerate(hom[(x, y)]):
                    for gi, g in enumerate(hom[(y, z)]):
                        gfi = idx[((x, z), mul(g, f))]
                        for r in range(z):
                            for c in range(x):
                                v = 1 << c1[(x, z, gfi, r, c)]
                                for k in range(y):
                                    if ent(g, r, k):
                                        v ^= 1 << c1[(x, y, fi, k, c)]
                                    if ent(f, k, c):
                                        v ^= 1 << c1[(y, z, gi, r, k)]
                                b1.add(v)
    r0, r1 = len(b0.piv), len(b1.piv)
    print(f"objects={objs} Ext0={len(c0) - r0} Ext1={len(c1) - r1 - r0}")


main()

#!/usr/bin/env python3
"""Regenerates the JSON group and pair fixtures in this directory.

Schottky generators are a = [[cosh l, sinh l], [sinh l, cosh l]] and
b = [[cosh m, i sinh m], [-i sinh m, cosh m]] with m = l + i r. Ping-pong
disks are the isometric circles of each generator and its inverse.
"""

import cmath
import json
import math
import pathlib

HERE = pathlib.Path(__file__).resolve().parent


def schottky(l, r=0.0):
    a = (complex(math.cosh(l)), complex(math.sinh(l)), complex(math.sinh(l)), complex(math.cosh(l)))
    m = complex(l, r)
    b = (cmath.cosh(m), 1j * cmath.sinh(m), -1j * cmath.sinh(m), cmath.cosh(m))
    return [("a", a), ("b", b)]


def mul(p, q):
    a, b, c, d = p
    e, f, g, h = q
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def inv(p):
    a, b, c, d = p
    return (d, -b, -c, a)


def conjugate(gens, m):
    return [(n, mul(mul(m, g), inv(m))) for n, g in gens]


def isometric(g):
    a, b, c, d = g
    center, radius = -d / c, 1.0 / abs(c)
    inv_center = a / c
    return [center.real, center.imag, radius], [inv_center.real, inv_center.imag, radius]


def block(gens, pingpong=True):
    out = {"generators": [{"name": n, "matrix": [[z.real, z.imag] for z in g]} for n, g in gens]}
    if pingpong:
        pp = []
        for n, g in gens:
            disk, disk_inv = isometric(g)
            pp.append({"name": n, "disk": disk, "disk_inv": disk_inv})
        out["pingpong"] = pp
    return out


def write(name, obj):
    (HERE / name).write_text(json.dumps(obj, indent=2) + "\n")


def main():
    fuchsian = schottky(1.5)
    loxodromic = schottky(1.2, 0.6)
    write("schottky_fuchsian.json", block(fuchsian))
    write("schottky_loxodromic.json", block(loxodromic))

    s = math.sqrt(2.0)
    write("cyclic.json", block([("a", (complex(s), 0j, 0j, complex(1 / s)))], pingpong=False))
    write("gamma2.json", block([("a", (1 + 0j, 2 + 0j, 0j, 1 + 0j)), ("b", (1 + 0j, 0j, 2 + 0j, 1 + 0j))],
                               pingpong=False))

    m = (1 + 0j, complex(0.15, 0.1), 0j, 1 + 0j)
    m = mul(m, (cmath.sqrt(complex(1.1, 0.05)), 0j, 0j, 1 / cmath.sqrt(complex(1.1, 0.05))))

    def pair(r1, r2):
        b1, b2 = block(r1), block(r2)
        return {"rho1": {"generators": b1["generators"]}, "rho2": b2, "pingpong": b1["pingpong"]}

    write("pair_duplicated.json", pair(fuchsian, fuchsian))
    write("pair_conjugate.json", pair(fuchsian, conjugate(fuchsian, m)))
    write("pair_nonconjugate.json", pair(fuchsian, schottky(1.5, 0.4)))


if __name__ == "__main__":
    main()

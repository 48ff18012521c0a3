#!/usr/bin/env python3
"""Central finite differences of GL(B, x) at 50-digit precision.

Steps: 1e-5 for the first derivative, 1e-4 for the second and third. Output
is a C++ initializer table frozen into tests/unit/test_map.cpp.
"""
import mpmath as mp

mp.mp.dps = 50


def gl(b, x):
    b = mp.mpf(b)
    return (b - x * b**x - (1 - x) * b**(1 - x)) / (b - mp.sqrt(b))


def fd(b, x, order):
    x = mp.mpf(x)
    if order == 1:
        h = mp.mpf("1e-5")
        return (gl(b, x + h) - gl(b, x - h)) / (2 * h)
    h = mp.mpf("1e-4")
    if order == 2:
        return (gl(b, x + h) - 2 * gl(b, x) + gl(b, x - h)) / h**2
    return (gl(b, x + 2 * h) - 2 * gl(b, x + h) + 2 * gl(b, x - h) - gl(b, x - 2 * h)) / (2 * h**3)


for b in ["0.05", "0.5", "2", "7", "100", "10000"]:
    for x in ["0.1", "0.3", "0.7", "0.9"]:
        for order in (1, 2, 3):
            print("    {%s, %s, %d, %s}," % (b, x, order, mp.nstr(fd(b, x, order), 17)))

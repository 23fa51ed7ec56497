#!/usr/bin/env python3
"""Order-0 Hankel transform of exp(-pi t^2) by dense quadrature.

H f(y) = 2 pi * int_0^inf t f(t) J_0(2 pi y t) dt, integrated with mpmath on
[0, 8] split at every zero of J_0(2 pi y t) (the Gaussian is below 1e-80
past t = 8). Writes `alpha y value` lines. Run from the repo root:
    python3 tools/fixtures/gen_hankel_gaussian.py
"""
import mpmath as mp

mp.mp.dps = 40

RADII = ["0.3", "0.8", "1.5"]


def transform(y):
    w = 2 * mp.pi * y
    cuts = [mp.mpf(0)]
    k = 1
    while True:
        z = mp.besseljzero(0, k) / w
        if z >= 8:
            break
        cuts.append(z)
        k += 1
    cuts.append(mp.mpf(8))
    f = lambda t: t * mp.exp(-mp.pi * t * t) * mp.besselj(0, w * t)
    return 2 * mp.pi * mp.quad(f, cuts)


def main():
    with open("tests/data/hankel_gaussian.txt", "w") as out:
        out.write("# alpha y H_0[exp(-pi t^2)](y), dense mpmath quadrature\n")
        for y in RADII:
            v = transform(mp.mpf(y))
            out.write(f"0 {y} {mp.nstr(v, 20, min_fixed=-1, max_fixed=-1)}\n")


if __name__ == "__main__":
    main()

"""High-precision reference values for the determinant tables.

Run once with mpmath; the printed numbers are frozen in
crates/core/tests/golden.rs. Integrands near t = 0 are evaluated at
200 digits so the subtracted Laurent terms cancel exactly.
"""
from mpmath import mp, mpf, pi, euler, log, exp, quad, inf

mp.dps = 40
SPLIT = [0, mpf("1e-3"), mpf("1e-2"), mpf("0.05"), mpf("0.1"), mpf("0.2"),
         mpf("0.35"), mpf("0.5"), mpf("0.75"), 1]


def hp(f):
    def wrapped(t):
        with mp.workdps(200):
            r = f(mpf(t))
        return +r
    return wrapped


def u(x):
    return 1 / (exp(x) - 1)


def sector(al):
    a = pi / al
    b2 = al / pi
    b1 = -(pi + al) / (2 * pi)
    b0 = (pi**2 + 3 * pi * al + al**2) / (12 * pi * al)
    tail = quad(lambda t: u(a * t) * u(t) / t, [1, 2, 5, inf])
    head = quad(hp(lambda t: (u(a * t) * u(t) - b2 / t**2 - b1 / t - b0) / t),
                SPLIT, method="gauss-legendre", maxdegree=10)
    return (mpf(1) / 4 * (euler + 2) + 5 * al / (24 * pi)
            + (euler - log(2)) / 12 * (pi / al + al / pi) + tail + head)


def cone(al):
    a = 2 * pi / al
    c0 = (pi**2 + 3 * pi * al / 2 + al**2 / 4) / (6 * pi * al)
    tail = quad(lambda t: u(a * t) * u(t) / t, [1, 2, 5, inf])
    head = quad(hp(lambda t: (u(a * t) * u(t) - al / (2 * pi * t**2)
                              + (pi + al / 2) / (2 * pi * t) - c0) / t),
                SPLIT, method="gauss-legendre", maxdegree=10)
    return (-log(2 * pi) / 2 + (euler + 2) / 2 + 5 * al / (24 * pi)
            + (euler - log(2)) / 6 * (2 * pi / al + al / (2 * pi))
            + 2 * tail + 2 * head)


if __name__ == "__main__":
    for name, al in [("pi/6", pi / 6), ("pi/4", pi / 4), ("pi/3", pi / 3),
                     ("pi/2", pi / 2), ("1", mpf(1)), ("2", mpf(2))]:
        print("sector", name, mp.nstr(sector(al), 25))
    for name, al in [("pi/2", pi / 2), ("pi", pi), ("3pi/2", 3 * pi / 2)]:
        print("cone", name, mp.nstr(cone(al), 25))
    # relation self-check: cone(a) = 2 sector(a/2) - log(2 pi)/2
    for al in [pi / 2, pi, 3 * pi / 2]:
        print("relation residual", mp.nstr(cone(al) - 2 * sector(al / 2) + log(2 * pi) / 2, 5))

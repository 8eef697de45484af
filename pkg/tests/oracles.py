"""Independent reference computations in exact rational arithmetic.

These enumerate ordered pairs and triples of atoms literally and share no
code with the package.
"""

from fractions import Fraction
from itertools import product


def F(v):
    return Fraction(v).limit_denominator(10**6) if isinstance(v, float) else Fraction(v)


def atoms_q(atoms):
    return [(F(x), F(y), F(p)) for x, y, p in atoms]


def abs_diff_law(atoms):
    law = {}
    for (x1, y1, p1), (x2, y2, p2) in product(atoms, repeat=2):
        k = (abs(x1 - x2), abs(y1 - y2))
        law[k] = law.get(k, 0) + p1 * p2
    return law


def row_mean(atoms, v, coord):
    return sum(a[2] * abs(v - a[coord]) for a in atoms)


def grand_mean(atoms, coord):
    return sum(a[2] * b[2] * abs(a[coord] - b[coord]) for a, b in product(atoms, repeat=2))


def delta(atoms, u, v, coord):
    return abs(u - v) - row_mean(atoms, u, coord) - row_mean(atoms, v, coord) + grand_mean(atoms, coord)


def centered_law(atoms):
    law = {}
    for (x1, y1, p1), (x2, y2, p2) in product(atoms, repeat=2):
        k = (delta(atoms, x1, x2, 0), delta(atoms, y1, y2, 1))
        law[k] = law.get(k, 0) + p1 * p2
    return law


def cov_of_law(law):
    eu = sum(p * u for (u, v), p in law.items())
    ev = sum(p * v for (u, v), p in law.items())
    return sum(p * u * v for (u, v), p in law.items()) - eu * ev


def dcov(atoms):
    return cov_of_law(centered_law(atoms))


def cross_cov(atoms):
    e_cross = sum(
        p1 * p2 * p3 * abs(x1 - x2) * abs(y1 - y3)
        for (x1, y1, p1), (x2, y2, p2), (x3, y3, p3) in product(atoms, repeat=3)
    )
    ex = sum(p1 * p2 * abs(x1 - x2) for (x1, _, p1), (x2, _, p2) in product(atoms, repeat=2))
    ey = sum(p1 * p2 * abs(y1 - y2) for (_, y1, p1), (_, y2, p2) in product(atoms, repeat=2))
    return e_cross - ex * ey


def sample_dcov(xs, ys):
    """V-statistic dCov from the literal double-centring double loop."""
    n = len(xs)
    xs = [F(v) for v in xs]
    ys = [F(v) for v in ys]

    def centred(v):
        d = [[abs(a - b) for b in v] for a in v]
        r = [sum(row) / n for row in d]
        g = sum(r) / n
        return [[d[i][j] - r[i] - r[j] + g for j in range(n)] for i in range(n)]

    a, b = centred(xs), centred(ys)
    return sum(a[i][j] * b[i][j] for i in range(n) for j in range(n)) / (n * n)

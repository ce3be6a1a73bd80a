"""Independent brute-force oracles for the exact layer.

Deliberately primitive: complex rationals are (Fraction, Fraction) pairs
and elimination is textbook Gauss-Jordan, sharing no code with the
package so the two paths can check each other.
"""

from fractions import Fraction


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def csub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cdiv(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / n, (a[1] * b[0] - a[0] * b[1]) / n)


def czero():
    return (Fraction(0), Fraction(0))


def cone():
    return (Fraction(1), Fraction(1) * 0)


def is_czero(a):
    return not a[0] and not a[1]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[czero() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = czero()
            for t in range(k):
                acc = cadd(acc, cmul(a[i][t], b[t][j]))
            out[i][j] = acc
    return out

def mat_identity(n):
    return [[cone() if i == j else czero() for j in range(n)] for i in range(n)]


def nullspace(rows):
    """Gauss-Jordan nullspace of a matrix of complex-rational pairs."""
    if not rows:
        return []
    nrows, ncols = len(rows), len(rows[0])
    m = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = None
        for r in range(rank, nrows):
            if not is_czero(m[r][col]):
                sel = r
                break
        if sel is None:
            continue
        m[rank], m[sel] = m[sel], m[rank]
        pv = m[rank][col]
        m[rank] = [cdiv(e, pv) for e in m[rank]]
        for r in range(nrows):
            if r != rank and not is_czero(m[r][col]):
                f = m[r][col]
                m[r] = [csub(e, cmul(f, g)) for e, g in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [czero() for _ in range(ncols)]
        vec[free] = cone()
        for r, pc in enumerate(pivots):
            vec[pc] = csub(czero(), m[r][free])
        basis.append(vec)
    return basis


def brute_minimal_polynomial(matrix):
    """Ascending monic coefficients of the least annihilating polynomial,
    via nullspaces of stacked vectorized powers."""
    n = len(matrix)
    powers = [mat_identity(n)]
    for _ in range(n):
        powers.append(mat_mul(powers[-1], matrix))
    for deg in range(1, n + 1):
        cols = powers[: deg + 1]
        rows = []
        for i in range(n):
            for j in range(n):
                rows.append([p[i][j] for p in cols])
        for vec in nullspace(rows):
            if not is_czero(vec[deg]):
                lead = vec[deg]
                return [cdiv(c, lead) for c in vec]
    raise AssertionError("no annihilating polynomial found")

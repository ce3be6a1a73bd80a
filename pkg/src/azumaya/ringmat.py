"""Matrices over an arbitrary commutative-coefficient ring.

Plain list-of-list helpers parameterized by the ring's zero and one;
used with Poly entries for symbolic families and spectral curves.  Only
+, -, * of the entries are required.
"""

from __future__ import annotations


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(n, zero):
    return [[zero for _ in range(n)] for _ in range(n)]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mul(a, b, zero):
    n = len(a)
    m = len(b[0])
    inner = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for k in range(inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def scale(a, c):
    return [[x * c for x in row] for row in a]


def power(a, n, zero, one):
    result = identity(len(a), zero, one)
    base = a
    while n:
        if n & 1:
            result = mul(result, base, zero)
        base = mul(base, base, zero)
        n >>= 1
    return result


def is_zero(a):
    return all(not bool(x) for row in a for x in row)


def commutator(a, b, zero):
    return sub(mul(a, b, zero), mul(b, a, zero))


def eval_multipoly(p, mats, zero, one, embed):
    """p(m_1..m_l) for commuting ring matrices; embed lifts a scalar
    coefficient into the ring."""
    n = len(mats[0])
    acc = zeros(n, zero)
    for exps, c in p.terms.items():
        term = scale(identity(n, zero, one), embed(c))
        for m, e in zip(mats, exps):
            if e:
                term = mul(term, power(m, e, zero, one), zero)
        acc = add(acc, term)
    return acc


def eval_wordpoly(p, mats, zero, one, embed):
    n = len(mats[0])
    acc = zeros(n, zero)
    for word, c in p.terms.items():
        term = scale(identity(n, zero, one), embed(c))
        for g in word:
            term = mul(term, mats[g], zero)
        acc = add(acc, term)
    return acc

from fractions import Fraction

import pytest

from azumaya.errors import NoRelation
from azumaya.polys import (
    LPoly,
    Poly,
    RatX,
    RatXL,
    gaussian_rational_roots,
    rational_krylov_relation,
)
from azumaya.scalars import qi


def P(*coeffs):
    return Poly([qi(c) if not hasattr(c, "re") else c for c in coeffs])


def test_poly_arithmetic_and_division():
    p = P(-6, 1, 1)  # x^2 + x - 6 = (x+3)(x-2)
    q, r = p.divmod(P(3, 1))
    assert q == P(-2, 1) and r.is_zero()
    assert p % P(1, 1) == P(-6)
    assert (P(1, 1) * P(-1, 1)) == P(-1, 0, 1)


def test_gcd_and_squarefree():
    p = P(-1, 1) ** 2 * P(2, 1)  # (x-1)^2 (x+2)
    d = p.gcd(p.derivative())
    assert d == P(-1, 1)
    decomp = p.monic().squarefree_decomposition()
    assert decomp == [(P(2, 1), 1), (P(-1, 1), 2)]


def test_gaussian_rational_roots_simple():
    p = P(-6, 1, 1)
    roots, residual = gaussian_rational_roots(p)
    assert residual == Poly.one()
    assert sorted(((c.re, m) for c, m in roots)) == [
        (Fraction(-3), 1),
        (Fraction(2), 1),
    ]


def test_gaussian_rational_roots_multiplicity_and_residual():
    p = P(-3, 1) ** 3 * P(-5, 0, 1)  # (x-3)^3 (x^2-5)
    roots, residual = gaussian_rational_roots(p)
    assert roots == [(qi(3), 3)]
    assert residual == P(-5, 0, 1)


def test_gaussian_rational_roots_imaginary():
    p = P(1, 0, 1)  # x^2 + 1 = (x-i)(x+i)
    roots, residual = gaussian_rational_roots(p)
    assert residual == Poly.one()
    assert {str(c) for c, _ in roots} == {"i", "-i"}


def test_gaussian_rational_roots_fractional():
    p = P(Fraction(-1, 3), 1) * P(Fraction(5, 7), 1)
    roots, residual = gaussian_rational_roots(p.monic())
    assert residual == Poly.one()
    assert {(c.re, m) for c, m in roots} == {
        (Fraction(1, 3), 1),
        (Fraction(-5, 7), 1),
    }


def test_ratx_reduction():
    f = RatX(P(0, 1, 1), P(0, 2))  # (x^2+x)/(2x) = (x+1)/2
    assert f.num == P(Fraction(1, 2), Fraction(1, 2)) and f.den == Poly.one()
    g = RatX(P(1), P(0, 1))
    assert (g * RatX(P(0, 1))) == RatX(P(1))
    assert str(RatX(P(1), P(0, 1))) == "(1)/(x)"


def test_ratx_derivative():
    f = RatX(P(1), P(0, 1))  # 1/x
    assert f.derivative() == RatX(P(-1), P(0, 0, 1))


def test_lpoly_divmod_and_gcd():
    lam = LPoly.lam()
    p = lam * lam - LPoly.constant(RatX(P(0, 1)))  # lambda^2 - x
    q, r = p.divmod(lam)
    assert q == lam and r == LPoly.constant(RatX(P(0, -1)))
    prod = p * (lam - LPoly.one())
    assert prod.gcd(p) == p.monic()


def test_ratxl_lambda_zero():
    lam = RatXL.lam()
    x = RatXL.x()
    f = (lam + x) / (lam - x)
    assert str(f.at_lambda_zero()) == "-1"
    g = (lam * lam - x) / RatXL.one()
    assert g.at_lambda_zero() == RatX(P(0, -1))
    with pytest.raises(ZeroDivisionError):
        (RatXL.one() / lam).at_lambda_zero()


def test_ratxl_derivative_product_rule():
    x = RatXL.x()
    lam = RatXL.lam()
    f = x * x * lam
    assert f.derivative_x() == (x + x) * lam


# Krylov relations: spec-level examples


def test_krylov_multiplication_by_x():
    x = RatXL.x()

    def apply_op(v):
        return [x * e for e in v]

    rel = rational_krylov_relation(apply_op, [RatXL.one()], 3)
    assert rel.order == 1
    assert rel.coeffs == [-x]
    assert rel.to_text() == "D - x"


def test_krylov_involution():
    def apply_op(v):
        return [v[1], v[0]]

    rel = rational_krylov_relation(apply_op, [RatXL.one(), RatXL.zero()], 4)
    assert rel.order == 2
    assert rel.coeffs == [-RatXL.one(), RatXL.zero()]
    assert rel.to_text() == "D^2 - 1"


def test_krylov_airy():
    # hand-computed Krylov data: D e1 = (0,1), D^2 e1 = (x,0) = x * e1
    x = RatXL.x()
    lam = RatXL.lam()
    phi = [[RatXL.zero(), x], [RatXL.one(), RatXL.zero()]]

    def apply_op(v):
        return [
            lam * v[0].derivative_x() + phi[0][0] * v[0] + phi[0][1] * v[1],
            lam * v[1].derivative_x() + phi[1][0] * v[0] + phi[1][1] * v[1],
        ]

    seed = [RatXL.one(), RatXL.zero()]
    assert apply_op(seed) == [RatXL.zero(), RatXL.one()]
    assert apply_op(apply_op(seed)) == [x, RatXL.zero()]
    rel = rational_krylov_relation(apply_op, seed, 4)
    assert rel.order == 2 and rel.coeffs == [-x, RatXL.zero()]
    assert all(v.is_zero() for v in rel.apply_to(apply_op, seed))


def test_krylov_no_relation():
    x = RatXL.x()

    def apply_op(v):
        return [x * e for e in v] + [RatXL.one()] if False else [x * v[0], v[0]]

    # shift-like operator on 2 components never closes at order 1
    with pytest.raises(NoRelation):
        rational_krylov_relation(
            lambda v: [x * v[0] + v[1], x * x * v[1] + RatXL.one() * v[0]],
            [RatXL.one(), RatXL.zero()],
            1,
        )


def test_relation_residual_is_exact_zero():
    x = RatXL.x()
    lam = RatXL.lam()

    def apply_op(v):
        return [lam * v[0].derivative_x() + x * x * v[0]]

    rel = rational_krylov_relation(apply_op, [RatXL.one()], 2)
    assert rel.order == 1
    assert all(v.is_zero() for v in rel.apply_to(apply_op, [RatXL.one()]))

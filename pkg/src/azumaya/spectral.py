"""Higgs pairs on the affine line: spectral curves and quantum operators.

A spectral pair is an r x r matrix of polynomials phi(x).  Its classical
curve is det(lambda - phi(x)), computed division-free over the polynomial
ring; the image of the corresponding matrix-point morphism lies on the
curve by Cayley-Hamilton, and verify_containment asserts that identity
exactly.  Quantization happens at the operator level: the minimal monic
annihilator of a cyclic vector under lambda * d/dx + phi(x), never by
deforming the curve's ideal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ringmat
from .errors import EngineError, NoRelation, ParseError
from .linalg import DEFAULT_SEED, berkowitz_coefficients
from .mpoly import MultiPoly, parse_univariate
from .polys import (
    LPoly,
    OperatorRelation,
    Poly,
    RatX,
    RatXL,
    rational_krylov_relation,
)
from .scalars import qi


class SpectralPair:
    """Rank plus the polynomial Higgs matrix phi(x) (trivialized chart)."""

    __slots__ = ("rank", "higgs")

    def __init__(self, rank, higgs):
        self.rank = int(rank)
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        grid = []
        for row in higgs:
            grid.append([_as_poly_x(e) for e in row])
        if len(grid) != self.rank or any(len(r) != self.rank for r in grid):
            raise ValueError("higgs matrix must be rank x rank")
        self.higgs = grid

    def to_json(self):
        return {
            "rank": self.rank,
            "higgs": [[p.to_text("x") for p in row] for row in self.higgs],
        }

    @staticmethod
    def from_json(data):
        try:
            rank = int(data["rank"])
            rows = data["higgs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad spectral pair schema: {exc}") from None
        return SpectralPair(rank, [[parse_univariate(e, "x") for e in row] for row in rows])


def _as_poly_x(e):
    if isinstance(e, Poly):
        return e
    if isinstance(e, str):
        return parse_univariate(e, "x")
    return Poly.constant(e if hasattr(e, "re") else qi(e))


@dataclass
class PlaneCurvePolynomial:
    """Monic-in-lambda bivariate polynomial; coeffs[k] multiplies lambda^k."""

    coeffs: list  # Poly in x, length rank + 1, leading coefficient 1

    @property
    def lambda_degree(self):
        return len(self.coeffs) - 1

    def as_multipoly(self) -> MultiPoly:
        out = MultiPoly.zero(("lambda", "x"))
        for k, c in enumerate(self.coeffs):
            for j, a in enumerate(c.coeffs):
                if not a.is_zero():
                    out = out.add_term((k, j), a)
        return out

    def to_text(self):
        return self.as_multipoly().to_text()

    def as_lambda_poly(self) -> LPoly:
        return LPoly([RatX(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, PlaneCurvePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __str__(self):
        return self.to_text()


def spectral_curve(pair: SpectralPair) -> PlaneCurvePolynomial:
    """det(lambda I - phi(x)), exactly, monic of degree rank in lambda."""
    coeffs = berkowitz_coefficients(pair.higgs, Poly.zero(), Poly.one())
    curve = PlaneCurvePolynomial(coeffs=coeffs)
    if curve.lambda_degree != pair.rank or not (curve.coeffs[-1] == Poly.one()):
        raise EngineError("characteristic polynomial is not monic of full degree")
    return curve


@dataclass
class ContainmentCertificate:
    rank: int
    curve: PlaneCurvePolynomial
    verified: bool

    def to_json(self):
        return {
            "rank": self.rank,
            "curve": self.curve.to_text(),
            "verified": self.verified,
        }


def verify_containment(pair: SpectralPair) -> ContainmentCertificate:
    """Substitute lambda := phi(x) into the spectral curve and assert the
    zero matrix of polynomials (Cayley-Hamilton over the polynomial ring).

    This is the algebraic content of the image lying on the curve; failure
    indicates an engine bug and is raised fatally.
    """
    curve = spectral_curve(pair)
    zero, one = Poly.zero(), Poly.one()
    n = pair.rank
    acc = ringmat.zeros(n, zero)
    for c in reversed(curve.coeffs):
        acc = ringmat.add(
            ringmat.mul(acc, pair.higgs, zero),
            ringmat.scale(ringmat.identity(n, zero, one), c),
        )
    if not ringmat.is_zero(acc):
        raise EngineError("Cayley-Hamilton containment failed; this is a bug")
    return ContainmentCertificate(rank=n, curve=curve, verified=True)


# ---------------------------------------------------------------------------
# quantum spectral operators
# ---------------------------------------------------------------------------


def connection_operator(pair: SpectralPair):
    """apply(v) = lambda * dv/dx + phi(x) v on RatXL vectors."""
    lam = RatXL.lam()
    phi = [[RatXL.from_poly(p) for p in row] for row in pair.higgs]
    n = pair.rank

    def apply_op(vec):
        out = []
        for i in range(n):
            acc = lam * vec[i].derivative_x()
            for j in range(n):
                acc = acc + phi[i][j] * vec[j]
            out.append(acc)
        return out

    return apply_op


def _seed_candidates(rank, seed, random_trials=8):
    for k in range(rank):
        yield [RatXL.one() if j == k else RatXL.zero() for j in range(rank)]
    rng = np.random.default_rng(seed)
    for _ in range(random_trials):
        ints = rng.integers(-3, 4, size=rank)
        if not np.any(ints):
            continue
        yield [RatXL.from_poly(Poly.constant(qi(int(v)))) for v in ints]


@dataclass
class QuantumOperator:
    relation: OperatorRelation
    seed: list  # RatXL entries actually used

    def to_text(self):
        return self.relation.to_text("D")

    def seed_texts(self):
        return [str(v) for v in self.seed]

    def __str__(self):
        return self.to_text()


def quantum_spectral_operator(
    pair: SpectralPair, seed_vector=None, max_order=None, seed=DEFAULT_SEED
) -> QuantumOperator:
    """Minimal monic annihilator of a seed under lambda d/dx + phi(x).

    With an explicit seed vector, failure within max_order raises
    NoRelation (retry with another seed).  Without one, the cyclicity seed
    policy is used: standard basis vectors first, then seeded random
    small-integer vectors.
    """
    max_order = pair.rank if max_order is None else max_order
    apply_op = connection_operator(pair)
    if seed_vector is not None:
        vec = [_as_ratxl(v) for v in seed_vector]
        if all(v.is_zero() for v in vec):
            raise ValueError("seed vector must be nonzero")
        relation = rational_krylov_relation(apply_op, vec, max_order)
        return QuantumOperator(relation=relation, seed=vec)
    last = None
    for vec in _seed_candidates(pair.rank, seed):
        try:
            relation = rational_krylov_relation(apply_op, vec, max_order)
            return QuantumOperator(relation=relation, seed=vec)
        except NoRelation as exc:
            last = exc
    raise last if last is not None else NoRelation(max_order)


def _as_ratxl(v):
    if isinstance(v, RatXL):
        return v
    if isinstance(v, Poly):
        return RatXL.from_poly(v)
    if isinstance(v, str):
        return RatXL.from_poly(parse_univariate(v, "x"))
    return RatXL.from_poly(Poly.constant(v if hasattr(v, "re") else qi(v)))


@dataclass
class ClassicalLimitReport:
    relation: str  # "equal" | "divides" | "singular_limit" | "mismatch"
    quantum_text: str
    limit_text: str
    curve_text: str

    @property
    def consistent(self):
        return self.relation in ("equal", "divides")

    def to_json(self):
        return {
            "relation": self.relation,
            "quantum_operator": self.quantum_text,
            "limit_at_lambda_zero": self.limit_text,
            "spectral_curve": self.curve_text,
        }


def classical_limit_check(
    pair: SpectralPair, operator: QuantumOperator
) -> ClassicalLimitReport:
    """Set lambda = 0 in the quantum operator, reread D as the curve
    variable lambda, and compare with the spectral curve.

    Equality holds when the seed is cyclic; otherwise the limit divides
    the curve (minimal versus characteristic polynomial discrepancy).
    """
    curve = spectral_curve(pair)
    curve_l = curve.as_lambda_poly()
    quantum_text = operator.to_text()
    try:
        limit_coeffs = operator.relation.at_lambda_zero()
    except ZeroDivisionError:
        return ClassicalLimitReport(
            relation="singular_limit",
            quantum_text=quantum_text,
            limit_text="(denominator vanishes at lambda = 0)",
            curve_text=curve.to_text(),
        )
    limit = LPoly(limit_coeffs + [RatX.one()])
    limit_text = _lambda_poly_text(limit)
    if limit == curve_l:
        relation = "equal"
    else:
        _, rem = curve_l.divmod(limit)
        relation = "divides" if rem.is_zero() else "mismatch"
    return ClassicalLimitReport(
        relation=relation,
        quantum_text=quantum_text,
        limit_text=limit_text,
        curve_text=curve.to_text(),
    )


def _lambda_poly_text(lp: LPoly) -> str:
    if all(c.is_polynomial() for c in lp.coeffs):
        out = MultiPoly.zero(("lambda", "x"))
        for k, c in enumerate(lp.coeffs):
            for j, a in enumerate(c.num.coeffs):
                if not a.is_zero():
                    out = out.add_term((k, j), a)
        return out.to_text()
    return str(lp)

"""Morphisms from matrix points with a fundamental module to a target.

The central object: a rank r, a presented target algebra, and one r x r
matrix per target generator, subject to the target's relations (and to
pairwise commutativity when the target is commutative).  Read
contravariantly this is a map of spaces; its image ideal, fuzzy-point
decomposition, and pushforward module lengths are computed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NumericDegradation,
    RelationViolated,
    SingularConjugator,
)
from .ideals import (
    IdealPresentation,
    evaluate_at_tuple,
    evaluate_word_poly,
    quotient_data,
)
from .linalg import (
    DEFAULT_CLUSTER_TOL,
    DEFAULT_SEED,
    EchelonSpan,
    ExactMatrix,
    check_commuting,
    invert,
    joint_spectrum,
)
from .mpoly import MultiPoly
from .scalars import parse_scalar, qi
from .targets import TargetPresentation, builtin_target


class AzumayaMorphism:
    """Validated morphism: rank, target presentation, generator matrices."""

    __slots__ = ("rank", "target", "matrices")

    def __init__(self, rank, target, matrices, _validated=False):
        self.rank = int(rank)
        self.target = target
        self.matrices = tuple(matrices)
        if not _validated:
            _validate(self)

    def matrix_for(self, generator) -> ExactMatrix:
        idx = list(self.target.generators).index(generator)
        return self.matrices[idx]

    def __eq__(self, other):
        if not isinstance(other, AzumayaMorphism):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.target == other.target
            and self.matrices == other.matrices
        )

    def to_json(self):
        return {
            "rank": self.rank,
            "target": self.target.to_json(),
            "matrices": {
                gen: m.to_texts()
                for gen, m in zip(self.target.generators, self.matrices)
            },
        }

    @staticmethod
    def from_json(data):
        from .errors import ParseError

        try:
            rank = int(data["rank"])
            target = TargetPresentation.from_json(data["target"])
            raw = data["matrices"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad morphism schema: {exc}") from None
        matrices = []
        for gen in target.generators:
            if gen not in raw:
                raise ParseError(f"missing matrix for generator {gen!r}")
            rows = raw[gen]
            matrices.append(
                ExactMatrix([[parse_scalar(e) for e in row] for row in rows])
            )
        return make_morphism(rank, target, matrices)


def _validate(phi: AzumayaMorphism):
    if phi.rank < 1:
        raise ValueError("rank must be >= 1 (the empty brane has no module)")
    if len(phi.matrices) != len(phi.target.generators):
        raise ValueError("one matrix per target generator required")
    for m in phi.matrices:
        if not m.is_square or m.rows != phi.rank:
            raise ValueError("matrices must be square of size rank")
    if phi.target.commutative:
        check_commuting(phi.matrices)
        for rel in phi.target.relations:
            value = evaluate_at_tuple(rel, list(phi.matrices))
            if not value.is_zero():
                raise RelationViolated(rel.to_text(), value)
    else:
        for rel in phi.target.relations:
            value = evaluate_word_poly(rel, list(phi.matrices))
            if not value.is_zero():
                raise RelationViolated(rel.to_text(), value)


def make_morphism(rank, target, matrices) -> AzumayaMorphism:
    """Validate and build; raises NotCommuting / RelationViolated with the
    exact offending value."""
    if isinstance(target, str):
        target = builtin_target(target)
    return AzumayaMorphism(rank, target, matrices)


# ---------------------------------------------------------------------------
# image ideal and decomposition
# ---------------------------------------------------------------------------


def _require_commutative(phi):
    if not phi.target.commutative:
        raise ValueError("operation requires a commutative target")


def image_ideal(phi: AzumayaMorphism, degree_cap=None) -> IdealPresentation:
    """Kernel of the induced map on the target's function ring: all
    polynomial relations satisfied by the generator matrices."""
    _require_commutative(phi)
    return quotient_data(
        list(phi.matrices), names=list(phi.target.generators), degree_cap=degree_cap
    ).presentation


@dataclass
class BranePoint:
    coordinates: tuple  # complex
    image_length: int
    module_length: int
    exact_coordinates: tuple | None = None

    def to_json(self):
        return {
            "point": [[z.real, z.imag] for z in self.coordinates],
            "exact": (
                [str(c) for c in self.exact_coordinates]
                if self.exact_coordinates is not None
                else None
            ),
            "image_length": self.image_length,
            "module_length": self.module_length,
        }


@dataclass
class BraneDecomposition:
    points: list
    image_ideal: IdealPresentation
    total_module_length: int

    def signature(self):
        """(cluster count, sorted length partition) - the deformation
        invariant used for event detection."""
        partition = tuple(
            sorted((p.module_length, p.image_length) for p in self.points)
        )
        return (len(self.points), partition)

    def to_json(self):
        return {
            "points": [p.to_json() for p in self.points],
            "image_ideal": {
                "generators": self.image_ideal.generator_texts(),
                "standard_monomials": self.image_ideal.standard_monomial_texts(),
            },
            "total_module_length": self.total_module_length,
        }


def decompose(
    phi: AzumayaMorphism,
    tol=DEFAULT_CLUSTER_TOL,
    seed=DEFAULT_SEED,
    degree_cap=None,
) -> BraneDecomposition:
    """Fuzzy-point decomposition of the image with pushforward lengths.

    module length at a point = dimension of the joint generalized
    eigenspace of the generator matrices there; image length = dimension
    of the local factor of the quotient algebra, read off as the joint
    spectrum of the multiplication operators on the standard-monomial
    basis.  Supports and multiplicities are exact whenever the joint
    eigenvalues lie in Q(i).
    """
    _require_commutative(phi)
    qd = quotient_data(
        list(phi.matrices), names=list(phi.target.generators), degree_cap=degree_cap
    )
    module_spec = joint_spectrum(list(phi.matrices), tol=tol, seed=seed)
    image_spec = joint_spectrum(qd.mult_ops, tol=tol, seed=seed)
    if len(module_spec.clusters) != len(image_spec.clusters):
        raise NumericDegradation(
            "support clusters of the module and the image scheme disagree: "
            f"{len(module_spec.clusters)} vs {len(image_spec.clusters)}"
        )
    scale = 1.0
    for c in module_spec.clusters:
        for z in c.point:
            scale = max(scale, abs(z))
    match_tol = max(tol * scale * 100.0, 1e-7 * scale)
    used = set()
    points = []
    for mc in module_spec.clusters:
        best = None
        best_d = None
        for k, ic in enumerate(image_spec.clusters):
            if k in used:
                continue
            d = max(abs(a - b) for a, b in zip(mc.point, ic.point))
            if best_d is None or d < best_d:
                best, best_d = k, d
        if best is None or best_d > match_tol:
            raise NumericDegradation(
                f"could not match image cluster to module cluster (distance {best_d})"
            )
        used.add(best)
        ic = image_spec.clusters[best]
        points.append(
            BranePoint(
                coordinates=mc.point,
                image_length=ic.multiplicity,
                module_length=mc.multiplicity,
                exact_coordinates=mc.exact_point,
            )
        )
    return BraneDecomposition(
        points=points,
        image_ideal=qd.presentation,
        total_module_length=phi.rank,
    )


def is_punctual(phi: AzumayaMorphism, tol=DEFAULT_CLUSTER_TOL, seed=DEFAULT_SEED):
    """(flag, support point or None): punctual iff one support cluster."""
    dec = decompose(phi, tol=tol, seed=seed)
    if len(dec.points) == 1:
        return True, dec.points[0]
    return False, None


# ---------------------------------------------------------------------------
# cyclicity
# ---------------------------------------------------------------------------


@dataclass
class CyclicityReport:
    status: str  # "cyclic" | "not_cyclic" | "inconclusive"
    generator: list | None
    quotient_dimension: int

    @property
    def is_cyclic(self):
        return self.status == "cyclic"

    def to_json(self):
        return {
            "status": self.status,
            "generator": (
                [str(c) for c in self.generator] if self.generator else None
            ),
            "quotient_dimension": self.quotient_dimension,
        }


def is_cyclic(
    phi: AzumayaMorphism, seed=DEFAULT_SEED, random_trials=20
) -> CyclicityReport:
    """Search for a vector whose orbit under the generated algebra spans.

    Quotient dimension < rank proves non-cyclicity.  Otherwise the search
    tries the standard basis, the all-ones vector, then seeded random
    small-integer vectors; failure is reported as inconclusive, never as
    a negative.
    """
    _require_commutative(phi)
    r = phi.rank
    qd = quotient_data(list(phi.matrices), names=list(phi.target.generators))
    dim = qd.presentation.quotient_dimension
    if dim < r:
        return CyclicityReport("not_cyclic", None, dim)
    candidates = []
    for k in range(r):
        candidates.append([qi(1) if j == k else qi(0) for j in range(r)])
    candidates.append([qi(1)] * r)
    rng = np.random.default_rng(seed)
    for _ in range(random_trials):
        reals = rng.integers(-3, 4, size=r)
        imags = rng.integers(-3, 4, size=r)
        candidates.append([qi(int(a), int(b)) for a, b in zip(reals, imags)])
    for v in candidates:
        span = EchelonSpan(r)
        for value in qd.standard_values:
            independent, _ = span.insert(value.apply(v))
            if span.rank == r:
                return CyclicityReport("cyclic", v, dim)
    return CyclicityReport("inconclusive", None, dim)


# ---------------------------------------------------------------------------
# conjugation, direct sums, moduli data
# ---------------------------------------------------------------------------


def conjugate(phi: AzumayaMorphism, g: ExactMatrix) -> AzumayaMorphism:
    """Change of basis of the fundamental module: matrices become
    g m g^{-1}.  Image ideal and decomposition lengths are invariant."""
    if not g.is_square or g.rows != phi.rank:
        raise ValueError("conjugator has wrong shape")
    try:
        ginv = invert(g)
    except ValueError:
        raise SingularConjugator("conjugating matrix is singular") from None
    return make_morphism(
        phi.rank, phi.target, [g * m * ginv for m in phi.matrices]
    )


def direct_sum(phi1: AzumayaMorphism, phi2: AzumayaMorphism) -> AzumayaMorphism:
    """Block-diagonal sum of two morphisms to the same target."""
    if phi1.target != phi2.target:
        raise ValueError("direct sum requires a common target")
    r1, r2 = phi1.rank, phi2.rank
    matrices = []
    for a, b in zip(phi1.matrices, phi2.matrices):
        rows = []
        for i in range(r1):
            rows.append(list(a.entries[i]) + [qi(0)] * r2)
        for i in range(r2):
            rows.append([qi(0)] * r1 + list(b.entries[i]))
        matrices.append(ExactMatrix(rows))
    return make_morphism(r1 + r2, phi1.target, matrices)


@dataclass
class ModuliDatum:
    """Side-by-side coarse and fine data of one morphism: the symmetric
    product multiset versus the ideal plus cyclicity."""

    classical: list  # (coordinates, module_length) pairs
    quantum_ideal: IdealPresentation
    cyclicity: CyclicityReport

    def classical_multiset(self):
        return sorted(
            (tuple((z.real, z.imag) for z in coords), length)
            for coords, length in self.classical
        )

    def to_json(self):
        return {
            "classical": [
                {
                    "point": [[z.real, z.imag] for z in coords],
                    "module_length": length,
                }
                for coords, length in self.classical
            ],
            "quantum": {
                "image_ideal": {
                    "generators": self.quantum_ideal.generator_texts(),
                    "standard_monomials": self.quantum_ideal.standard_monomial_texts(),
                },
                "cyclicity": self.cyclicity.to_json(),
            },
        }


def moduli_datum(
    phi: AzumayaMorphism, tol=DEFAULT_CLUSTER_TOL, seed=DEFAULT_SEED
) -> ModuliDatum:
    dec = decompose(phi, tol=tol, seed=seed)
    classical = [(p.coordinates, p.module_length) for p in dec.points]
    return ModuliDatum(
        classical=classical,
        quantum_ideal=dec.image_ideal,
        cyclicity=is_cyclic(phi, seed=seed),
    )

"""One-parameter families of morphisms, Higgsing events, and square-zero
deformations.

A family is polynomial in one parameter t with relations holding
identically in t (checked symbolically, so specialization never fails).
Event detection along a family is sample-and-bisect on the decomposition
signature: merges, splits, and recombinations of support points.  The
square-zero machinery perturbs each generator matrix by a matrix whose
square vanishes exactly, and the conifold probe pushes such deformations
through the quadratic-product map to watch support points leave the
conifold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ringmat
from .errors import NotSquareZero, ParseError, RelationViolated
from .ideals import evaluate_at_tuple, evaluate_word_poly
from .linalg import DEFAULT_CLUSTER_TOL, DEFAULT_SEED, ExactMatrix
from .morphisms import AzumayaMorphism, BraneDecomposition, decompose, make_morphism
from .mpoly import parse_univariate
from .polys import Poly
from .scalars import GaussianRational, qi, to_approx
from .targets import TargetPresentation, ambient_a4, builtin_target

DEFAULT_SAMPLES = 64
DEFAULT_BISECT_TOL = Fraction(1, 10**6)


def _as_parameter(t):
    if isinstance(t, GaussianRational):
        if t.im:
            raise ValueError("family parameter must be real")
        return t
    if isinstance(t, (int, Fraction)):
        return qi(t)
    raise TypeError("parameter must be rational")


class MorphismPath:
    """Polynomial family of morphisms: one r x r grid of Poly-in-t per
    generator, plus a declared parameter window."""

    __slots__ = ("rank", "target", "matrix_polys", "window")

    def __init__(self, rank, target, matrix_polys, window=(-1, 1)):
        self.rank = int(rank)
        if isinstance(target, str):
            target = builtin_target(target)
        self.target = target
        self.matrix_polys = [
            [[_as_poly_entry(e) for e in row] for row in grid]
            for grid in matrix_polys
        ]
        lo, hi = window
        self.window = (Fraction(lo), Fraction(hi))
        if self.window[0] >= self.window[1]:
            raise ValueError("window must be a nondegenerate interval")
        self._validate_symbolically()

    def _validate_symbolically(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if len(self.matrix_polys) != len(self.target.generators):
            raise ValueError("one matrix of polynomials per generator required")
        for grid in self.matrix_polys:
            if len(grid) != self.rank or any(len(row) != self.rank for row in grid):
                raise ValueError("matrix polynomials must be rank x rank")
        zero, one = Poly.zero(), Poly.one()
        if self.target.commutative:
            for i in range(len(self.matrix_polys)):
                for j in range(i + 1, len(self.matrix_polys)):
                    comm = ringmat.commutator(
                        self.matrix_polys[i], self.matrix_polys[j], zero
                    )
                    if not ringmat.is_zero(comm):
                        raise RelationViolated(
                            f"[{self.target.generators[i]}, {self.target.generators[j]}]",
                            "nonzero commutator as a polynomial identity in t",
                        )
            for rel in self.target.relations:
                value = ringmat.eval_multipoly(
                    rel, self.matrix_polys, zero, one, Poly.constant
                )
                if not ringmat.is_zero(value):
                    raise RelationViolated(
                        rel.to_text(), "nonzero as a polynomial identity in t"
                    )
        else:
            for rel in self.target.relations:
                value = ringmat.eval_wordpoly(
                    rel, self.matrix_polys, zero, one, Poly.constant
                )
                if not ringmat.is_zero(value):
                    raise RelationViolated(
                        rel.to_text(), "nonzero as a polynomial identity in t"
                    )

    def specialize(self, t) -> AzumayaMorphism:
        """Exact substitution of the parameter; the result is revalidated
        (which cannot fail for a symbolically validated family)."""
        t = _as_parameter(t)
        if not (self.window[0] <= t.re <= self.window[1]):
            raise ValueError(f"parameter {t} outside declared window {self.window}")
        matrices = [
            ExactMatrix([[e.eval_scalar(t) for e in row] for row in grid])
            for grid in self.matrix_polys
        ]
        return make_morphism(self.rank, self.target, matrices)

    def to_json(self):
        return {
            "rank": self.rank,
            "target": self.target.to_json(),
            "window": [str(self.window[0]), str(self.window[1])],
            "matrices": {
                gen: [[p.to_text("t") for p in row] for row in grid]
                for gen, grid in zip(self.target.generators, self.matrix_polys)
            },
        }

    @staticmethod
    def from_json(data):
        try:
            rank = int(data["rank"])
            target = TargetPresentation.from_json(data["target"])
            raw = data["matrices"]
            window = data.get("window", ["-1", "1"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad path schema: {exc}") from None
        grids = []
        for gen in target.generators:
            if gen not in raw:
                raise ParseError(f"missing matrix for generator {gen!r}")
            grids.append(
                [[parse_univariate(e, "t") for e in row] for row in raw[gen]]
            )
        return MorphismPath(
            rank, target, grids, window=(Fraction(window[0]), Fraction(window[1]))
        )


def _as_poly_entry(e):
    if isinstance(e, Poly):
        return e
    if isinstance(e, str):
        return parse_univariate(e, "t")
    return Poly.constant(e if isinstance(e, GaussianRational) else qi(e))


def specialize(path: MorphismPath, t) -> AzumayaMorphism:
    return path.specialize(t)


# ---------------------------------------------------------------------------
# event scanning
# ---------------------------------------------------------------------------


@dataclass
class PathSample:
    t: Fraction
    decomposition: BraneDecomposition

    @property
    def signature(self):
        return self.decomposition.signature()


@dataclass
class DeformationEvent:
    t: float
    kind: str  # "merge" | "split" | "recombination"
    before: tuple
    after: tuple

    def to_json(self):
        return {
            "t": self.t,
            "kind": self.kind,
            "before": _signature_json(self.before),
            "after": _signature_json(self.after),
        }


def _signature_json(sig):
    count, partition = sig
    return {
        "clusters": count,
        "partition": [[m, i] for (m, i) in partition],
    }


def _event_kind(before, after):
    if after[0] < before[0]:
        return "merge"
    if after[0] > before[0]:
        return "split"
    return "recombination"


@dataclass
class ScanResult:
    samples: list
    events: list

    def to_json(self):
        return {
            "samples": [
                {
                    "t": float(s.t),
                    "decomposition": s.decomposition.to_json(),
                }
                for s in self.samples
            ],
            "events": [e.to_json() for e in self.events],
        }


def scan_events(
    path: MorphismPath,
    window=None,
    samples=DEFAULT_SAMPLES,
    tol=DEFAULT_CLUSTER_TOL,
    seed=DEFAULT_SEED,
    bisect_tol=DEFAULT_BISECT_TOL,
) -> ScanResult:
    """Sample the decomposition along the window and bisect signature
    changes to parameter accuracy ``bisect_tol``.

    A signature change between adjacent samples is classified as a merge
    (cluster count drops), split (count grows), or recombination (same
    count, different length partition).  An isolated collision - a merge
    immediately followed by the inverse split at the same location with
    equal outer signatures - is coalesced into a single merge event.
    Events strictly between samples that leave the adjacent-sample
    signatures equal are invisible to sampling; pick sample counts that
    place a sample at or near suspected collisions.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    lo, hi = path.window if window is None else (Fraction(window[0]), Fraction(window[1]))

    def decompose_at(t):
        return decompose(path.specialize(t), tol=tol, seed=seed)

    grid = [
        lo + (hi - lo) * k / (samples - 1) for k in range(samples)
    ]
    sampled = [PathSample(t=t, decomposition=decompose_at(t)) for t in grid]

    events = []
    for left, right in zip(sampled, sampled[1:]):
        if left.signature == right.signature:
            continue
        a, siga = left.t, left.signature
        b, sigb = right.t, right.signature
        while b - a > bisect_tol:
            mid = (a + b) / 2
            sigm = decompose_at(mid).signature()
            if sigm == siga:
                a = mid
            else:
                b, sigb = mid, sigm
        events.append(
            DeformationEvent(
                t=float((a + b) / 2),
                kind=_event_kind(siga, sigb),
                before=siga,
                after=sigb,
            )
        )

    events = _coalesce_collisions(events, float(bisect_tol))
    return ScanResult(samples=sampled, events=events)


def _coalesce_collisions(events, tol):
    out = []
    k = 0
    while k < len(events):
        e = events[k]
        if (
            k + 1 < len(events)
            and e.kind == "merge"
            and events[k + 1].kind == "split"
            and abs(events[k + 1].t - e.t) <= 4 * tol
            and events[k + 1].after == e.before
        ):
            out.append(
                DeformationEvent(
                    t=(e.t + events[k + 1].t) / 2,
                    kind="merge",
                    before=e.before,
                    after=events[k + 1].after,
                )
            )
            k += 2
        else:
            out.append(e)
            k += 1
    return out


# ---------------------------------------------------------------------------
# square-zero deformations
# ---------------------------------------------------------------------------


class SquareZeroDeformation:
    """Perturb each generator image by a square-zero matrix."""

    __slots__ = ("base", "perturbations")

    def __init__(self, base: AzumayaMorphism, perturbations):
        self.base = base
        self.perturbations = tuple(perturbations)
        if len(self.perturbations) != len(base.matrices):
            raise ValueError("one perturbation per generator required")
        for eps in self.perturbations:
            if not eps.is_square or eps.rows != base.rank:
                raise ValueError("perturbation shape mismatch")

    def deformed_matrices(self):
        return [m + e for m, e in zip(self.base.matrices, self.perturbations)]


@dataclass
class RelationResidual:
    relation_text: str
    is_zero: bool
    value_texts: list | None

    def to_json(self):
        return {
            "relation": self.relation_text,
            "ok": self.is_zero,
            "residual": self.value_texts,
        }


@dataclass
class SquareZeroReport:
    valid: bool
    residuals: list
    deformed: AzumayaMorphism | None

    def to_json(self):
        return {
            "valid": self.valid,
            "relation_residuals": [r.to_json() for r in self.residuals],
            "deformed": self.deformed.to_json() if self.deformed else None,
        }


def apply_square_zero(d: SquareZeroDeformation) -> SquareZeroReport:
    """Check eps_i^2 = 0 exactly, then every target relation on the
    perturbed matrices.

    A failing square check raises NotSquareZero; failing relations are
    reported (not raised) with their exact residual values.  When the
    target is commutative the pairwise commutators count as relations.
    """
    for k, eps in enumerate(d.perturbations):
        sq = eps * eps
        if not sq.is_zero():
            raise NotSquareZero(k, sq)
    target = d.base.target
    matrices = d.deformed_matrices()
    residuals = []
    valid = True
    commutators_ok = True
    if target.commutative:
        for i in range(len(matrices)):
            for j in range(i + 1, len(matrices)):
                comm = matrices[i].commutator(matrices[j])
                ok = comm.is_zero()
                commutators_ok = commutators_ok and ok
                valid = valid and ok
                residuals.append(
                    RelationResidual(
                        relation_text=(
                            f"[{target.generators[i]}, {target.generators[j]}]"
                        ),
                        is_zero=ok,
                        value_texts=None if ok else comm.to_texts(),
                    )
                )
    for rel in target.relations:
        if target.commutative:
            if not commutators_ok:
                # evaluation order would be ambiguous
                residuals.append(
                    RelationResidual(rel.to_text(), False, [["unevaluated"]])
                )
                valid = False
                continue
            value = evaluate_at_tuple(rel, matrices)
        else:
            value = evaluate_word_poly(rel, matrices)
        ok = value.is_zero()
        valid = valid and ok
        residuals.append(
            RelationResidual(
                relation_text=rel.to_text(),
                is_zero=ok,
                value_texts=None if ok else value.to_texts(),
            )
        )
    deformed = None
    if valid:
        deformed = make_morphism(d.base.rank, target, matrices)
    return SquareZeroReport(valid=valid, residuals=residuals, deformed=deformed)


# ---------------------------------------------------------------------------
# conifold probe
# ---------------------------------------------------------------------------

_CONIFOLD_EQUATION = "z1*z2 - z3*z4"


@dataclass
class ProbePoint:
    coordinates: tuple
    exact_coordinates: tuple | None
    module_length: int
    image_length: int
    residual_text: str | None  # exact residual of z1 z2 - z3 z4 when exact
    residual_abs: float
    on_conifold: bool

    def to_json(self):
        return {
            "point": [[z.real, z.imag] for z in self.coordinates],
            "exact": (
                [str(c) for c in self.exact_coordinates]
                if self.exact_coordinates
                else None
            ),
            "module_length": self.module_length,
            "image_length": self.image_length,
            "conifold_residual": self.residual_text,
            "conifold_residual_abs": self.residual_abs,
            "on_conifold": self.on_conifold,
        }


@dataclass
class ConifoldProbeReport:
    decomposition: BraneDecomposition
    points: list
    all_on_conifold: bool

    def to_json(self):
        return {
            "points": [p.to_json() for p in self.points],
            "image_ideal": self.decomposition.to_json()["image_ideal"],
            "all_on_conifold": self.all_on_conifold,
        }


def conifold_probe(
    d: SquareZeroDeformation,
    tol=DEFAULT_CLUSTER_TOL,
    seed=DEFAULT_SEED,
) -> ConifoldProbeReport:
    """Push a valid square-zero deformation of a representation of the
    quadric-product algebra down to affine 4-space.

    Forms z1 = xi1 xi3, z2 = xi2 xi4, z3 = xi1 xi4, z4 = xi2 xi3 from the
    deformed matrices (these commute exactly whenever the source relations
    hold; asserted on every run), decomposes the resulting morphism, and
    classifies every support point as on or off the conifold by evaluating
    z1 z2 - z3 z4 there - exactly when the point is exact.
    """
    report = apply_square_zero(d)
    if not report.valid:
        raise RelationViolated(
            "square-zero deformation", "deformed matrices do not satisfy the relations"
        )
    return probe_quadric_products(report.deformed, tol=tol, seed=seed)


def quadric_products(matrices):
    """(z1, z2, z3, z4) = (xi1 xi3, xi2 xi4, xi1 xi4, xi2 xi3)."""
    x1, x2, x3, x4 = matrices
    return [x1 * x3, x2 * x4, x1 * x4, x2 * x3]


def probe_quadric_products(
    phi: AzumayaMorphism, tol=DEFAULT_CLUSTER_TOL, seed=DEFAULT_SEED
) -> ConifoldProbeReport:
    if len(phi.matrices) != 4:
        raise ValueError("probe needs a four-generator source")
    products = quadric_products(list(phi.matrices))
    induced = make_morphism(phi.rank, ambient_a4(), products)
    dec = decompose(induced, tol=tol, seed=seed)
    scale = 1.0
    for p in dec.points:
        for z in p.coordinates:
            scale = max(scale, abs(z))
    points = []
    all_on = True
    for p in dec.points:
        if p.exact_coordinates is not None:
            c1, c2, c3, c4 = p.exact_coordinates
            residual = c1 * c2 - c3 * c4
            on = residual.is_zero()
            residual_text = str(residual)
            residual_abs = abs(to_approx(residual))
        else:
            z1, z2, z3, z4 = p.coordinates
            value = z1 * z2 - z3 * z4
            on = abs(value) <= tol * scale * scale * 100
            residual_text = None
            residual_abs = abs(value)
        all_on = all_on and on
        points.append(
            ProbePoint(
                coordinates=p.coordinates,
                exact_coordinates=p.exact_coordinates,
                module_length=p.module_length,
                image_length=p.image_length,
                residual_text=residual_text,
                residual_abs=residual_abs,
                on_conifold=on,
            )
        )
    return ConifoldProbeReport(
        decomposition=dec, points=points, all_on_conifold=all_on
    )


# ---------------------------------------------------------------------------
# off-conifold search
# ---------------------------------------------------------------------------


@dataclass
class OffConifoldWitness:
    rank: int
    perturbations: list  # matrices as text grids
    off_points: list  # exact coordinate texts with residual

    def to_json(self):
        return {
            "rank": self.rank,
            "perturbations": self.perturbations,
            "off_points": self.off_points,
        }


@dataclass
class OffConifoldSearchReport:
    seed: int
    max_rank: int
    attempts_per_rank: int
    checked: dict  # rank -> number of valid representations examined
    witnesses: list

    @property
    def found(self):
        return bool(self.witnesses)

    def to_json(self):
        return {
            "seed": self.seed,
            "max_rank": self.max_rank,
            "attempts_per_rank": self.attempts_per_rank,
            "valid_representations_checked": {
                str(k): v for k, v in sorted(self.checked.items())
            },
            "found": self.found,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _matrix_unit(r, i, j):
    rows = [[qi(0)] * r for _ in range(r)]
    rows[i][j] = qi(1)
    return ExactMatrix(rows)


def _structured_unit_tuples(r):
    """All 4-tuples of off-diagonal matrix units; each is square-zero."""
    units = [
        (i, j) for i in range(r) for j in range(r) if i != j
    ]
    for a in units:
        for b in units:
            for c in units:
                for d in units:
                    yield [
                        _matrix_unit(r, *a),
                        _matrix_unit(r, *b),
                        _matrix_unit(r, *c),
                        _matrix_unit(r, *d),
                    ]


def _random_rank_one_square_zero(rng, r):
    """u v^T with v^T u = 0 exactly, small Gaussian-integer entries."""
    for _ in range(24):
        u = [qi(int(a), int(b)) for a, b in zip(
            rng.integers(-1, 2, size=r), rng.integers(-1, 2, size=r)
        )]
        v = [qi(int(a), int(b)) for a, b in zip(
            rng.integers(-1, 2, size=r), rng.integers(-1, 2, size=r)
        )]
        if all(x.is_zero() for x in u) or all(x.is_zero() for x in v):
            continue
        dot = sum((a * b for a, b in zip(v, u)), qi(0))
        if not dot.is_zero():
            # adjust one usable coordinate of v to force v.u = 0
            pivot = next((k for k in range(r) if not u[k].is_zero()), None)
            if pivot is None:
                continue
            v[pivot] = v[pivot] - dot / u[pivot]
        rows = [[u[i] * v[j] for j in range(r)] for i in range(r)]
        m = ExactMatrix(rows)
        if not m.is_zero() and (m * m).is_zero():
            return m
    return None


def _check_quadric_relations(matrices):
    z = quadric_products(matrices)
    for i in range(4):
        for j in range(i + 1, 4):
            if not z[i].commutes_with(z[j]):
                return False
    return True


def _off_points_exact(matrices, tol, seed):
    phi = make_morphism(matrices[0].rows, builtin_target("r_xi"), matrices)
    report = probe_quadric_products(phi, tol=tol, seed=seed)
    off = []
    for p in report.points:
        if p.on_conifold:
            continue
        if p.exact_coordinates is None:
            continue  # only exactly verified witnesses are reported
        off.append(
            {
                "point": [str(c) for c in p.exact_coordinates],
                "residual": p.residual_text,
            }
        )
    return off


def search_off_conifold(
    max_rank=6,
    attempts_per_rank=400,
    seed=DEFAULT_SEED,
    tol=DEFAULT_CLUSTER_TOL,
    max_witnesses=3,
) -> OffConifoldSearchReport:
    """Seeded search for square-zero tuples whose quadric products have a
    support point off the conifold.

    Phase 1 enumerates matrix-unit tuples at small rank (deterministic);
    phase 2 samples random rank-one square-zero tuples up to ``max_rank``.
    Base point is the zero representation, which projects to the conifold
    singularity; every reported witness is verified in exact arithmetic.
    """
    rng = np.random.default_rng(seed)
    checked = {}
    witnesses = []

    def consider(matrices, r):
        if not _check_quadric_relations(matrices):
            return
        checked[r] = checked.get(r, 0) + 1
        if len(witnesses) >= max_witnesses:
            return
        off = _off_points_exact(matrices, tol, seed)
        if off:
            witnesses.append(
                OffConifoldWitness(
                    rank=r,
                    perturbations=[m.to_texts() for m in matrices],
                    off_points=off,
                )
            )

    for r in range(2, min(3, max_rank) + 1):
        for matrices in _structured_unit_tuples(r):
            if len(witnesses) >= max_witnesses:
                break
            consider(matrices, r)

    for r in range(2, max_rank + 1):
        for _ in range(attempts_per_rank):
            if len(witnesses) >= max_witnesses:
                break
            ms = []
            for _ in range(4):
                m = _random_rank_one_square_zero(rng, r)
                if m is None:
                    break
                ms.append(m)
            if len(ms) == 4:
                consider(ms, r)

    return OffConifoldSearchReport(
        seed=seed,
        max_rank=max_rank,
        attempts_per_rank=attempts_per_rank,
        checked=checked,
        witnesses=witnesses,
    )

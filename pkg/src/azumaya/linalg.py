"""Dense exact matrices over Q(i) and joint-spectrum extraction.

Exact layer: products, fraction-free kernels, minimal and characteristic
polynomials, incremental span tracking.  Numeric layer: clustering of
joint eigenvalue tuples for commuting families, entered only after the
exact layer has split off everything it can.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np
import scipy.linalg

from .errors import EngineError, NotCommuting, NumericDegradation
from .polys import Poly, gaussian_rational_roots
from .scalars import GaussianRational, ONE, ZERO, qi, to_approx

DEFAULT_CLUSTER_TOL = 1e-8
DEFAULT_SEED = 20111212


class ExactMatrix:
    """Immutable dense matrix with GaussianRational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(e if isinstance(e, GaussianRational) else qi(e) for e in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
        else:
            width = 0
        self.entries = rows
        self.rows = len(rows)
        self.cols = width

    @staticmethod
    def zeros(rows, cols=None):
        cols = rows if cols is None else cols
        return ExactMatrix([[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n):
        return ExactMatrix(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_columns(columns):
        if not columns:
            raise ValueError("no columns")
        n = len(columns[0])
        return ExactMatrix(
            [[columns[j][i] for j in range(len(columns))] for i in range(n)]
        )

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @property
    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self):
        return ExactMatrix([[-e for e in row] for row in self.entries])

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = other.cols
            out = []
            for i in range(self.rows):
                row = []
                for j in range(cols):
                    acc = ZERO
                    for k in range(self.cols):
                        a = self.entries[i][k]
                        if a.is_zero():
                            continue
                        acc = acc + a * other.entries[k][j]
                    row.append(acc)
                out.append(row)
            return ExactMatrix(out)
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = other if isinstance(other, GaussianRational) else qi(other)
            return ExactMatrix([[e * c for e in row] for row in self.entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if not self.is_square:
            raise ValueError("power of non-square matrix")
        result = ExactMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def apply(self, vec):
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return [
            sum((self.entries[i][k] * vec[k] for k in range(self.cols)), ZERO)
            for i in range(self.rows)
        ]

    def trace(self):
        if not self.is_square:
            raise ValueError("trace of non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)

    def transpose(self):
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def flatten(self):
        return [e for row in self.entries for e in row]

    def to_complex(self) -> np.ndarray:
        return np.array(
            [[to_approx(e) for e in row] for row in self.entries], dtype=complex
        )

    def commutator(self, other):
        return self * other - other * self

    def commutes_with(self, other) -> bool:
        return self.commutator(other).is_zero()

    def to_texts(self):
        return [[str(e) for e in row] for row in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in row) for row in self.entries)
        return f"ExactMatrix[{body}]"


def check_commuting(matrices):
    """Raise NotCommuting with the exact commutator on the first failure."""
    for i in range(len(matrices)):
        for j in range(i + 1, len(matrices)):
            comm = matrices[i].commutator(matrices[j])
            if not comm.is_zero():
                raise NotCommuting(i, j, comm)


# ---------------------------------------------------------------------------
# fraction-free elimination
# ---------------------------------------------------------------------------


def _clear_row_denominators(row):
    denom = 1
    for e in row:
        denom = lcm(denom, e.re.denominator, e.im.denominator)
    if denom == 1:
        return list(row)
    return [e * denom for e in row]


def _bareiss_echelon(rows, ncols):
    """Fraction-free row echelon; returns (rows, pivot_columns).

    Rows are denominator-cleared first, so all intermediate divisions are
    exact over the Gaussian integers (Sylvester identity).
    """
    work = [_clear_row_denominators(r) for r in rows]
    pivots = []
    prev = ONE
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(work)):
            if not work[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        pv = work[rank][col]
        for r in range(rank + 1, len(work)):
            if all(e.is_zero() for e in work[r]):
                continue
            rv = work[r][col]
            new = []
            for c in range(ncols):
                val = work[r][c] * pv - work[rank][c] * rv
                new.append(val / prev)
            work[r] = new
        prev = pv
        pivots.append(col)
        rank += 1
    return work[:rank], pivots


def kernel_basis(m: ExactMatrix):
    """Exact basis of the right null space; empty iff injective."""
    if m.rows == 0 or m.cols == 0:
        return [
            [ONE if j == k else ZERO for j in range(m.cols)] for k in range(m.cols)
        ]
    ech, pivots = _bareiss_echelon([list(r) for r in m.entries], m.cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [ZERO] * m.cols
        vec[fc] = ONE
        for r in range(len(ech) - 1, -1, -1):
            pc = pivots[r]
            acc = ZERO
            for c in range(pc + 1, m.cols):
                if not vec[c].is_zero() and not ech[r][c].is_zero():
                    acc = acc + ech[r][c] * vec[c]
            vec[pc] = -acc / ech[r][pc]
        basis.append(vec)
    return basis


def rank(m: ExactMatrix) -> int:
    _, pivots = _bareiss_echelon([list(r) for r in m.entries], m.cols)
    return len(pivots)


def invert(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse; raises ValueError when singular."""
    if not m.is_square:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m.entries)]
    ech, pivots = _bareiss_echelon(aug, 2 * n)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    # back-substitute to reduced form
    for r in range(n - 1, -1, -1):
        pv = ech[r][r]
        ech[r] = [e / pv for e in ech[r]]
        for r2 in range(r):
            f = ech[r2][r]
            if f.is_zero():
                continue
            ech[r2] = [a - f * b for a, b in zip(ech[r2], ech[r])]
    return ExactMatrix([row[n:] for row in ech])


class EchelonSpan:
    """Incremental exact span with dependency extraction.

    Inserted independent vectors are remembered; a dependent insert
    reports its exact coordinates over the independent ones.  Rows are
    kept fully reduced (RREF) so reduction is a single pass.
    """

    def __init__(self, dim):
        self.dim = dim
        self.rows = []
        self.pivots = []
        self.history = []  # row = combination of inserted independents
        self.count = 0

    def _reduce(self, vec):
        w = list(vec)
        coords = [ZERO] * self.count
        for r, p in enumerate(self.pivots):
            f = w[p]
            if f.is_zero():
                continue
            row = self.rows[r]
            hist = self.history[r]
            for c in range(self.dim):
                if not row[c].is_zero():
                    w[c] = w[c] - f * row[c]
            for k in range(self.count):
                if not hist[k].is_zero():
                    coords[k] = coords[k] + f * hist[k]
        return w, coords

    def express(self, vec):
        """Coordinates of vec over the independent inserted vectors, or
        None when vec lies outside the span."""
        w, coords = self._reduce(vec)
        if any(not e.is_zero() for e in w):
            return None
        return coords

    def residual(self, vec):
        """Canonical representative of vec modulo the span (RREF rows)."""
        w, _ = self._reduce(vec)
        return w

    def insert(self, vec):
        """Returns (True, None) if vec was independent (and absorbed),
        else (False, coords) expressing vec over earlier inserts."""
        w, coords = self._reduce(vec)
        pivot = None
        for c in range(self.dim):
            if not w[c].is_zero():
                pivot = c
                break
        if pivot is None:
            return False, coords
        inv = w[pivot].inverse()
        roww = [e * inv for e in w]
        hist = [-c * inv for c in coords] + [inv]
        for k in range(len(self.history)):
            self.history[k] = self.history[k] + [ZERO]
        self.count += 1
        # keep RREF: clear the new pivot from existing rows
        for r in range(len(self.rows)):
            f = self.rows[r][pivot]
            if f.is_zero():
                continue
            self.rows[r] = [a - f * b for a, b in zip(self.rows[r], roww)]
            self.history[r] = [a - f * b for a, b in zip(self.history[r], hist)]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < pivot:
            at += 1
        self.rows.insert(at, roww)
        self.pivots.insert(at, pivot)
        self.history.insert(at, hist)
        return True, None

    @property
    def rank(self):
        return len(self.rows)


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials
# ---------------------------------------------------------------------------


def berkowitz_coefficients(rows, zero, one):
    """Samuelson-Berkowitz characteristic polynomial over any commutative
    ring: only +, -, * are used.  Returns ascending coefficients (monic).

    Entries must support the ring operations with ``zero``/``one`` as the
    ring constants; this is reused verbatim for polynomial-entry matrices.
    """
    n = len(rows)
    coeffs = [one]  # descending; charpoly of the empty matrix
    for i in range(n - 1, -1, -1):
        k = n - 1 - i
        a = rows[i][i]
        right = rows[i][i + 1 :]
        below = [rows[j][i] for j in range(i + 1, n)]
        toeplitz = [one, zero - a]
        w = list(below)
        for j in range(k):
            if j > 0:
                w = [
                    _dot_ring(rows, i + 1, w, p, zero)
                    for p in range(k)
                ]
            toeplitz.append(zero - _dot_row(right, w, zero))
        new = []
        for t in range(k + 2):
            acc = zero
            for s in range(min(t, k) + 1):
                acc = acc + toeplitz[t - s] * coeffs[s]
            new.append(acc)
        coeffs = new
    return list(reversed(coeffs))


def _dot_row(row, vec, zero):
    acc = zero
    for a, b in zip(row, vec):
        acc = acc + a * b
    return acc


def _dot_ring(rows, offset, vec, p, zero):
    acc = zero
    for q in range(len(vec)):
        acc = acc + rows[offset + p][offset + q] * vec[q]
    return acc


def characteristic_polynomial(m: ExactMatrix) -> Poly:
    """Monic char poly via the division-free Berkowitz recurrence."""
    if not m.is_square:
        raise ValueError("characteristic polynomial of non-square matrix")
    coeffs = berkowitz_coefficients(
        [list(r) for r in m.entries], ZERO, ONE
    )
    return Poly(coeffs)


def minimal_polynomial(m: ExactMatrix) -> Poly:
    """Lowest-degree monic annihilator, via exact Krylov dependence of
    I, m, m^2, ..."""
    if not m.is_square:
        raise ValueError("minimal polynomial of non-square matrix")
    n = m.rows
    span = EchelonSpan(n * n)
    power = ExactMatrix.identity(n)
    k = 0
    while True:
        independent, coords = span.insert(power.flatten())
        if not independent:
            return Poly([-c for c in coords] + [ONE])
        k += 1
        if k > n:
            raise EngineError("minimal polynomial did not terminate")
        power = power * m


def evaluate_poly_at_matrix(p: Poly, m: ExactMatrix) -> ExactMatrix:
    if not m.is_square:
        raise ValueError("polynomial of non-square matrix")
    acc = ExactMatrix.zeros(m.rows)
    for c in reversed(p.coeffs):
        acc = acc * m + ExactMatrix.identity(m.rows) * c
    return acc


# ---------------------------------------------------------------------------
# joint spectrum
# ---------------------------------------------------------------------------


@dataclass
class SpectrumCluster:
    point: tuple  # complex coordinates
    multiplicity: int
    basis: list  # approximate vectors spanning the joint generalized eigenspace
    exact_point: tuple | None = None  # GaussianRational coordinates when known


@dataclass
class JointSpectrum:
    clusters: list
    tolerance: float

    @property
    def total_multiplicity(self):
        return sum(c.multiplicity for c in self.clusters)


class _Block:
    """Invariant subspace under all matrices, with per-matrix exact
    eigenvalues where the splitting found them."""

    def __init__(self, basis_columns, coords):
        self.basis = basis_columns  # list of exact vectors in ambient space
        self.coords = coords  # per matrix: GaussianRational or None

    @property
    def dim(self):
        return len(self.basis)


def _restriction(m: ExactMatrix, span: EchelonSpan, basis):
    cols = []
    for b in basis:
        image = m.apply(b)
        coords = span.express(image)
        if coords is None:
            raise EngineError("subspace not invariant")
        cols.append(coords)
    return ExactMatrix.from_columns(cols)


def _split_block(block, matrix_index, m):
    """Split one invariant block along the exact factor structure of the
    restriction of matrix ``m``; returns a list of blocks."""
    span = EchelonSpan(len(block.basis[0]))
    for b in block.basis:
        ind, _ = span.insert(b)
        if not ind:
            raise EngineError("degenerate block basis")
    a = _restriction(m, span, block.basis)
    mu = minimal_polynomial(a)
    factors = []  # (full factor poly, exact eigenvalue or None)
    for g, mult in mu.squarefree_decomposition():
        roots, residual = gaussian_rational_roots(g)
        for c, _ in roots:
            factors.append((Poly((-c, ONE)) ** mult, c))
        if residual.degree >= 1:
            factors.append((residual**mult, None))
    if len(factors) == 1:
        f, c = factors[0]
        coords = list(block.coords)
        coords[matrix_index] = c
        return [_Block(block.basis, coords)]
    out = []
    total = 0
    for f, c in factors:
        fa = evaluate_poly_at_matrix(f, a)
        local = kernel_basis(fa)
        lifted = []
        for w in local:
            vec = [ZERO] * len(block.basis[0])
            for coef, b in zip(w, block.basis):
                if coef.is_zero():
                    continue
                for idx in range(len(vec)):
                    vec[idx] = vec[idx] + coef * b[idx]
            lifted.append(vec)
        coords = list(block.coords)
        coords[matrix_index] = c
        out.append(_Block(lifted, coords))
        total += len(lifted)
    if total != block.dim:
        raise EngineError("primary decomposition dimensions do not add up")
    return out


def _approx_basis(basis):
    return [[to_approx(e) for e in vec] for vec in basis]


def _numeric_refine(block, matrices, tol, rng):
    """Numeric joint clustering inside one exact invariant block.

    Uses a random linear combination of the restricted commuting family;
    its sorted Schur decomposition yields invariant subspaces per
    eigenvalue cluster.  Weights are redrawn when a combination fails to
    separate distinct joint points.
    """
    span = EchelonSpan(len(block.basis[0]))
    for b in block.basis:
        span.insert(b)
    restrictions = [_restriction(m, span, block.basis) for m in matrices]
    k = block.dim
    numeric = [r.to_complex() for r in restrictions]
    if k == 1:
        point = tuple(numeric[i][0, 0] for i in range(len(matrices)))
        return [
            SpectrumCluster(
                point=_override_exact(point, block.coords),
                multiplicity=1,
                basis=_approx_basis(block.basis),
                exact_point=None,
            )
        ]
    scale = max(1.0, max(np.max(np.abs(a)) for a in numeric))
    basis_matrix = np.array(_approx_basis(block.basis), dtype=complex).T
    for attempt in range(8):
        weights = rng.normal(size=len(matrices)) + 1j * rng.normal(size=len(matrices))
        combo = sum(w * a for w, a in zip(weights, numeric))
        eigvals = np.linalg.eigvals(combo)
        groups = _single_linkage(
            [(v,) for v in eigvals], tol * max(1.0, float(np.max(np.abs(eigvals))))
        )
        clusters = []
        ok = True
        for group in groups:
            center = np.mean([eigvals[i] for i in group])
            radius = max(abs(eigvals[i] - center) for i in group)
            margin = max(radius * 4.0, tol * scale)
            t2, z2, sdim = scipy.linalg.schur(
                combo, output="complex", sort=lambda lam: abs(lam - center) <= margin
            )
            if sdim != len(group):
                ok = False
                break
            sub = z2[:, :sdim]
            point = []
            for i, a in enumerate(numeric):
                blockm = sub.conj().T @ a @ sub
                evs = np.linalg.eigvals(blockm)
                mean = complex(np.mean(evs))
                spread = max(abs(e - mean) for e in evs)
                if spread > 1e-4 * max(1.0, float(np.max(np.abs(a)))):
                    ok = False
                    break
                point.append(mean)
            if not ok:
                break
            ambient = basis_matrix @ sub
            clusters.append(
                SpectrumCluster(
                    point=_override_exact(tuple(point), block.coords),
                    multiplicity=sdim,
                    basis=[list(ambient[:, j]) for j in range(sdim)],
                    exact_point=None,
                )
            )
        if ok:
            return clusters
    raise NumericDegradation(
        "joint eigenvalue clustering failed to stabilize within the tolerance"
    )


def _override_exact(point, coords):
    out = list(point)
    for i, c in enumerate(coords):
        if c is not None:
            out[i] = to_approx(c)
    return tuple(out)


def _single_linkage(points, tol):
    """Union-find single linkage on tuples under the sup metric."""
    n = len(points)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            d = max(abs(x - y) for x, y in zip(points[i], points[j]))
            if d <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [sorted(g) for g in groups.values()]


def _point_sort_key(point):
    return tuple((z.real, z.imag) for z in point)


def joint_spectrum(
    matrices, tol=DEFAULT_CLUSTER_TOL, seed=DEFAULT_SEED
) -> JointSpectrum:
    """Simultaneous generalized eigenspace decomposition of a commuting
    family.

    Strategy: exact primary splitting of each matrix's restricted minimal
    polynomial (squarefree factors, with Q(i) roots split off exactly),
    then numeric refinement inside blocks whose eigenvalues escape Q(i).
    Multiplicities are exact whenever all eigenvalues lie in Q(i).
    """
    if not matrices:
        raise ValueError("empty matrix family")
    n = matrices[0].rows
    for m in matrices:
        if not m.is_square or m.rows != n:
            raise ValueError("matrices must be square of equal size")
    if n == 0:
        raise ValueError("rank zero family")
    check_commuting(matrices)

    identity = ExactMatrix.identity(n)
    blocks = [_Block(identity.columns(), [None] * len(matrices))]
    for i, m in enumerate(matrices):
        blocks = [
            piece for block in blocks for piece in _split_block(block, i, m)
        ]

    rng = np.random.default_rng(seed)
    clusters = []
    for block in blocks:
        if all(c is not None for c in block.coords):
            clusters.append(
                SpectrumCluster(
                    point=tuple(to_approx(c) for c in block.coords),
                    multiplicity=block.dim,
                    basis=_approx_basis(block.basis),
                    exact_point=tuple(block.coords),
                )
            )
        else:
            clusters.extend(_numeric_refine(block, matrices, tol, rng))

    # tolerance merge across blocks (single linkage, sup metric, relative)
    scale = 1.0
    for c in clusters:
        for z in c.point:
            scale = max(scale, abs(z))
    groups = _single_linkage([c.point for c in clusters], tol * scale)
    merged = []
    for group in groups:
        members = [clusters[i] for i in group]
        if len(members) == 1:
            merged.append(members[0])
            continue
        total = sum(c.multiplicity for c in members)
        point = tuple(
            sum(c.point[k] * c.multiplicity for c in members) / total
            for k in range(len(members[0].point))
        )
        basis = [v for c in members for v in c.basis]
        exacts = {c.exact_point for c in members}
        exact = exacts.pop() if len(exacts) == 1 else None
        merged.append(
            SpectrumCluster(
                point=point, multiplicity=total, basis=basis, exact_point=exact
            )
        )
    merged.sort(key=lambda c: _point_sort_key(c.point))
    spectrum = JointSpectrum(clusters=merged, tolerance=tol)
    if spectrum.total_multiplicity != n:
        raise EngineError("cluster multiplicities do not sum to the rank")
    return spectrum

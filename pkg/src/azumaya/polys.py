"""Univariate polynomials over Q(i) and the rational-function tower.

Layers, bottom up:

* ``Poly`` — dense univariate polynomials over GaussianRational.
* ``RatX`` — the fraction field Q(i)(x), pairs of Poly reduced by gcd.
* ``LPoly`` — polynomials in a second variable (lambda) with RatX
  coefficients, i.e. Q(i)(x)[lambda].
* ``RatXL`` — the fraction field Q(i)(x)(lambda) = Q(i)(x, lambda).

The tower exists for lambda-connection Krylov computations, whose
coefficients are rational in both x and lambda.  Everything is exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import NoRelation
from .scalars import GaussianRational, ONE, ZERO, qi, to_approx


class Poly:
    """Dense univariate polynomial over GaussianRational.

    Coefficients are stored ascending (index = power).  The zero
    polynomial has an empty coefficient list and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, GaussianRational) else qi(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero():
        return Poly(())

    @staticmethod
    def one():
        return Poly((ONE,))

    @staticmethod
    def x():
        return Poly((ZERO, ONE))

    @staticmethod
    def constant(c):
        return Poly((c,))

    @staticmethod
    def monomial(c, k):
        if isinstance(c, (int, Fraction)):
            c = qi(c)
        if c.is_zero():
            return Poly(())
        return Poly((ZERO,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == Poly((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            [self.coeff(k) + other.coeff(k) for k in range(n)]
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly(())
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: GaussianRational) -> "Poly":
        return Poly([a * c for a in self.coeffs])

    def divmod(self, other: "Poly"):
        """Exact Euclidean division over the coefficient field."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = other.leading()
        dd = other.degree
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            f = rem[-1] / dlead
            quo[k] = f
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - f * b
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        if lead.is_one():
            return self
        return Poly([c / lead for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def squarefree_part(self) -> "Poly":
        if self.degree <= 0:
            return Poly.one()
        return self.exact_div(self.gcd(self.derivative())).monic()

    def squarefree_decomposition(self):
        """Yun's algorithm: returns [(g_j, j)] with self = lc * prod g_j^j.

        Each g_j is monic squarefree; pairwise coprime; only nonconstant
        factors are reported.
        """
        p = self.monic()
        if p.degree <= 0:
            return []
        out = []
        d = p.derivative()
        a = p.gcd(d)
        b = p.exact_div(a)
        c = d.exact_div(a) - b.derivative()
        j = 1
        while b.degree > 0:
            g = b.gcd(c)
            if g.degree > 0:
                out.append((g.monic(), j))
            b2 = b.exact_div(g)
            c = c.exact_div(g) - b2.derivative()
            b = b2
            j += 1
        return out

    def eval_scalar(self, x: GaussianRational) -> GaussianRational:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_complex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + to_approx(c)
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.constant(c)
        return acc

    def shift_multiply(self, k: int) -> "Poly":
        if self.is_zero():
            return self
        return Poly((ZERO,) * k + self.coeffs)

    def complex_coeffs(self):
        return [to_approx(c) for c in self.coeffs]

    def __str__(self):
        return self.to_text("x")

    def __repr__(self):
        return f"Poly({self.to_text('x')})"

    def to_text(self, var: str) -> str:
        from .mpoly import MultiPoly

        return MultiPoly.from_univariate(self, var).to_text()


def _as_poly(v):
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction, GaussianRational)):
        return Poly((v,))
    return None


def gaussian_rational_roots(p: Poly):
    """Split off all roots of p that lie in Q(i).

    Returns (roots, residual): roots is a list of (value, multiplicity),
    residual is the monic cofactor with no Q(i) roots.  Candidates come
    from numeric root finding on the squarefree part, snapped to nearby
    rationals and verified exactly, so false positives are impossible.
    """
    p = p.monic()
    if p.degree <= 0:
        return [], p
    candidates = []
    sf = p.squarefree_part()
    if sf.degree >= 1:
        arr = np.array(list(reversed(sf.complex_coeffs())), dtype=complex)
        if np.all(np.isfinite(arr)):
            for z in np.roots(arr):
                candidates.extend(_snap_candidates(complex(z)))
    roots = []
    residual = p
    seen = set()
    for c in candidates:
        if c in seen:
            continue
        seen.add(c)
        mult = 0
        lin = Poly((-c, ONE))
        while residual.degree >= 1:
            q, r = residual.divmod(lin)
            if not r.is_zero():
                break
            residual = q
            mult += 1
        if mult:
            roots.append((c, mult))
    return roots, residual.monic()


def _snap_candidates(z: complex):
    out = []
    for bound in (1, 12, 1000, 10**6):
        try:
            re = Fraction(z.real).limit_denominator(bound)
            im = Fraction(z.imag).limit_denominator(bound)
        except (OverflowError, ValueError):
            continue
        out.append(GaussianRational(re, im))
    return out


# ---------------------------------------------------------------------------
# Q(i)(x): rational functions in one variable
# ---------------------------------------------------------------------------


class RatX:
    """num/den with Poly parts, gcd-reduced, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = _as_poly(num)
        den = Poly.one() if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.one()
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lead = den.leading()
                if not lead.is_one():
                    num = num.scale(lead.inverse())
                    den = den.scale(lead.inverse())
        self.num = num
        self.den = den

    @staticmethod
    def zero():
        return RatX(Poly.zero(), Poly.one(), _reduced=True)

    @staticmethod
    def one():
        return RatX(Poly.one(), Poly.one(), _reduced=True)

    @staticmethod
    def x():
        return RatX(Poly.x(), Poly.one(), _reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def __bool__(self):
        return not self.num.is_zero()

    @staticmethod
    def _coerce(v):
        if isinstance(v, RatX):
            return v
        p = _as_poly(v)
        if p is not None:
            return RatX(p)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatX(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatX(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatX(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatX(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def derivative(self) -> "RatX":
        return RatX(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __str__(self):
        if self.den.degree == 0:
            return self.num.to_text("x")
        return f"({self.num.to_text('x')})/({self.den.to_text('x')})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Q(i)(x)[lambda] and its fraction field
# ---------------------------------------------------------------------------


class LPoly:
    """Polynomial in lambda with RatX coefficients (ascending order)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = []
        for c in coeffs:
            r = RatX._coerce(c)
            if r is None:
                raise TypeError("bad LPoly coefficient")
            cs.append(r)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero():
        return LPoly(())

    @staticmethod
    def one():
        return LPoly((RatX.one(),))

    @staticmethod
    def lam():
        return LPoly((RatX.zero(), RatX.one()))

    @staticmethod
    def constant(c):
        return LPoly((c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, k) -> RatX:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RatX.zero()

    def leading(self) -> RatX:
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    @staticmethod
    def _coerce(v):
        if isinstance(v, LPoly):
            return v
        r = RatX._coerce(v)
        if r is not None:
            return LPoly((r,))
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return LPoly([self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return LPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return LPoly(())
        out = [RatX.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return LPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "LPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        rem = list(self.coeffs)
        quo = [RatX.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = other.leading()
        dd = other.degree
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            f = rem[-1] / dlead
            quo[k] = f
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - f * b
            while rem and rem[-1].is_zero():
                rem.pop()
        return LPoly(quo), LPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "LPoly") -> "LPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "LPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        inv = RatX.one() / lead
        return LPoly([c * inv for c in self.coeffs])

    def gcd(self, other: "LPoly") -> "LPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative_x(self) -> "LPoly":
        """d/dx applied coefficient-wise (lambda is a constant)."""
        return LPoly([c.derivative() for c in self.coeffs])

    def at_lambda_zero(self) -> RatX:
        return self.coeff(0)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            if k == 0:
                parts.append(str(c))
            else:
                head = "lambda" if k == 1 else f"lambda^{k}"
                if c == RatX.one():
                    parts.append(head)
                else:
                    parts.append(f"({c})*{head}")
        return " + ".join(parts)

    __repr__ = __str__


class RatXL:
    """Element of Q(i)(x, lambda) as a reduced LPoly fraction."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = LPoly._coerce(num)
        den = LPoly.one() if den is None else LPoly._coerce(den)
        if den is None or num is None:
            raise TypeError("bad RatXL parts")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = LPoly.one()
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lead = den.leading()
                if not (lead == RatX.one()):
                    inv = RatX.one() / lead
                    num = LPoly([c * inv for c in num.coeffs])
                    den = LPoly([c * inv for c in den.coeffs])
                if den.degree == 0:
                    # push any residual x-denominator of den into num
                    d0 = den.coeff(0)
                    if not (d0 == RatX.one()):
                        inv = RatX.one() / d0
                        num = LPoly([c * inv for c in num.coeffs])
                        den = LPoly.one()
        self.num = num
        self.den = den

    @staticmethod
    def zero():
        return RatXL(LPoly.zero(), LPoly.one(), _reduced=True)

    @staticmethod
    def one():
        return RatXL(LPoly.one(), LPoly.one(), _reduced=True)

    @staticmethod
    def x():
        return RatXL(LPoly((RatX.x(),)))

    @staticmethod
    def lam():
        return RatXL(LPoly.lam())

    @staticmethod
    def from_poly(p: Poly):
        return RatXL(LPoly((RatX(p),)))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    @staticmethod
    def _coerce(v):
        if isinstance(v, RatXL):
            return v
        l = LPoly._coerce(v)
        if l is not None:
            return RatXL(l)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatXL(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatXL(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatXL(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero")
        return RatXL(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def derivative_x(self) -> "RatXL":
        return RatXL(
            self.num.derivative_x() * self.den - self.num * self.den.derivative_x(),
            self.den * self.den,
        )

    def at_lambda_zero(self) -> RatX:
        d0 = self.den.at_lambda_zero()
        if d0.is_zero():
            raise ZeroDivisionError("denominator vanishes at lambda = 0")
        return self.num.at_lambda_zero() / d0

    def as_bivariate_fraction(self):
        """Clear nested x-denominators: returns (P, Q) MultiPoly pair in
        (lambda, x) with self = P/Q."""
        from .mpoly import MultiPoly

        def lift(lp: LPoly):
            den = Poly.one()
            for c in lp.coeffs:
                den = den.exact_div(den.gcd(c.den)) * c.den
            lifted = MultiPoly.zero(["lambda", "x"])
            for k, c in enumerate(lp.coeffs):
                part = c.num * den.exact_div(c.den)
                for j, a in enumerate(part.coeffs):
                    if not a.is_zero():
                        lifted = lifted.add_term((k, j), a)
            return lifted, den

        pn, dn = lift(self.num)
        pd, dd = lift(self.den)
        # self = (pn/dn) / (pd/dd) = pn*dd / (pd*dn)
        num = pn * MultiPoly.from_univariate(dd, "x", ["lambda", "x"])
        den = pd * MultiPoly.from_univariate(dn, "x", ["lambda", "x"])
        return num, den

    def __str__(self):
        num, den = self.as_bivariate_fraction()
        if den.is_constant():
            c = den.constant_value()
            if not c.is_one():
                num = num.scale(c.inverse())
            return num.to_text()
        return f"({num.to_text()})/({den.to_text()})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Krylov relations over the rational-function field
# ---------------------------------------------------------------------------


class OperatorRelation:
    """Monic relation D^n + a_{n-1} D^{n-1} + ... + a_0 annihilating a seed.

    Coefficients are RatXL elements; ``order`` is n.
    """

    def __init__(self, order, coeffs):
        self.order = order
        self.coeffs = list(coeffs)

    def __eq__(self, other):
        if not isinstance(other, OperatorRelation):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def apply_to(self, apply_op, seed):
        """Evaluate the relation on a seed vector; exact zero when valid."""
        vecs = [list(seed)]
        for _ in range(self.order):
            vecs.append(apply_op(vecs[-1]))
        n = len(seed)
        out = list(vecs[self.order])
        for k, a in enumerate(self.coeffs):
            for i in range(n):
                out[i] = out[i] + a * vecs[k][i]
        return out

    def at_lambda_zero(self):
        """Coefficients specialized at lambda = 0, as RatX values."""
        return [a.at_lambda_zero() for a in self.coeffs]

    def to_text(self, symbol="D"):
        parts = []
        for k in range(self.order, -1, -1):
            if k == self.order:
                c = RatXL.one()
            else:
                c = self.coeffs[k]
            if c.is_zero():
                continue
            if k == 0:
                head = ""
            elif k == 1:
                head = symbol
            else:
                head = f"{symbol}^{k}"
            txt = str(c)
            if head:
                if c == RatXL.one():
                    body = head
                elif c == -RatXL.one():
                    body = f"-{head}"
                elif _is_simple_term(txt):
                    body = f"{txt}*{head}"
                else:
                    body = f"({txt})*{head}"
            else:
                body = txt
            parts.append(body)
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                text += " - " + p[1:]
            else:
                text += " + " + p
        return text

    def __str__(self):
        return self.to_text()

    __repr__ = __str__


def _is_simple_term(txt):
    return "+" not in txt and "/" not in txt and "-" not in txt.lstrip("-")


def rational_krylov_relation(apply_op, seed, max_order):
    """Least monic relation D^n s + sum a_i D^i s = 0 over Q(i)(x, lambda).

    ``apply_op`` maps a list of RatXL to a list of RatXL and need only be
    linear over constants; the relation itself is solved exactly over the
    rational-function field.  Raises NoRelation if independence persists
    through ``max_order``.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    seed = [RatXL._coerce(v) for v in seed]
    if any(v is None for v in seed):
        raise TypeError("seed entries must coerce to RatXL")
    vecs = [seed]
    for n in range(1, max_order + 1):
        vecs.append(apply_op(vecs[-1]))
        sol = _solve_dependency(vecs)
        if sol is not None:
            return OperatorRelation(n, sol)
    raise NoRelation(max_order)


def _solve_dependency(vecs):
    """Solve sum a_i vecs[i] = -vecs[-1] over RatXL; None if inconsistent."""
    n = len(vecs) - 1
    dim = len(vecs[0])
    # rows: one per vector component; columns: a_0..a_{n-1}, rhs
    rows = []
    for i in range(dim):
        rows.append([vecs[k][i] for k in range(n)] + [-vecs[n][i]])
    pivots = []
    rank = 0
    for col in range(n):
        pr = None
        for r in range(rank, len(rows)):
            if not rows[r][col].is_zero():
                pr = r
                break
        if pr is None:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        inv = RatXL.one() / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(rows)):
        if not rows[r][n].is_zero():
            return None
    sol = [RatXL.zero()] * n
    for r, col in enumerate(pivots):
        sol[col] = rows[r][n]
    return sol

"""Commutative multivariate and degree-bounded free-algebra polynomials.

``MultiPoly`` models elements of Q(i)[y1..yl]; ``FreePolyBounded`` models
elements of the free associative algebra on named generators truncated at
a degree cap.  Both share the same text syntax:

    3/2*y1^2*y2 - y3 + 5        (commutative)
    xi1*xi3*xi2*xi4 - xi1*xi4*xi2*xi3   (words, order preserved)

Monomial order everywhere is graded lexicographic with the first declared
variable largest.
"""

from __future__ import annotations

from .errors import DegreeCapExceeded, ParseError
from .polys import Poly
from .scalars import (
    GaussianRational,
    ONE,
    ZERO,
    _format_fraction,
    parse_scalar,
    qi,
    to_approx,
)


def grlex_key(exponents):
    """Sort key: ascending graded-lex (first variable most significant)."""
    return (sum(exponents), exponents)


def monomials_of_degree(nvars, degree):
    """All exponent vectors of the given total degree, ascending grlex."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest


class MultiPoly:
    """Commutative polynomial: {exponent vector: nonzero coefficient}."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(self.variables):
                raise ValueError("exponent arity mismatch")
            if not isinstance(c, GaussianRational):
                c = qi(c)
            if not c.is_zero():
                clean[tuple(exps)] = c
        self.terms = clean

    @staticmethod
    def zero(variables):
        return MultiPoly(variables)

    @staticmethod
    def constant(variables, c):
        return MultiPoly(variables, {(0,) * len(variables): c})

    @staticmethod
    def variable(variables, name):
        idx = list(variables).index(name)
        exps = tuple(1 if k == idx else 0 for k in range(len(variables)))
        return MultiPoly(variables, {exps: ONE})

    @staticmethod
    def from_univariate(p: Poly, var, variables=None):
        variables = [var] if variables is None else list(variables)
        idx = variables.index(var)
        terms = {}
        for k, c in enumerate(p.coeffs):
            if not c.is_zero():
                exps = [0] * len(variables)
                exps[idx] = k
                terms[tuple(exps)] = c
        return MultiPoly(variables, terms)

    def to_univariate(self) -> Poly:
        if len(self.variables) != 1:
            raise ValueError("not univariate")
        if not self.terms:
            return Poly.zero()
        deg = max(e[0] for e in self.terms)
        coeffs = [ZERO] * (deg + 1)
        for (e,), c in self.terms.items():
            coeffs[e] = c
        return Poly(coeffs)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> GaussianRational:
        return self.terms.get((0,) * len(self.variables), ZERO)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading_term(self):
        """(exponents, coeff) of the grlex-largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def coeff(self, exps) -> GaussianRational:
        return self.terms.get(tuple(exps), ZERO)

    def _same_vars(self, other):
        if self.variables != other.variables:
            raise ValueError("variable lists differ")

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def add_term(self, exps, c) -> "MultiPoly":
        terms = dict(self.terms)
        exps = tuple(exps)
        cur = terms.get(exps, ZERO) + c
        if cur.is_zero():
            terms.pop(exps, None)
        else:
            terms[exps] = cur
        return MultiPoly(self.variables, terms)

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._same_vars(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            cur = terms.get(exps, ZERO) + c
            if cur.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = cur
        return MultiPoly(self.variables, terms)

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._same_vars(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                cur = terms.get(e, ZERO) + c1 * c2
                if cur.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = cur
        return MultiPoly(self.variables, terms)

    def scale(self, c) -> "MultiPoly":
        if not isinstance(c, GaussianRational):
            c = qi(c)
        if c.is_zero():
            return MultiPoly.zero(self.variables)
        return MultiPoly(self.variables, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int):
        result = MultiPoly.constant(self.variables, ONE)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval_scalars(self, values) -> GaussianRational:
        """Exact evaluation at a point with GaussianRational coordinates."""
        acc = ZERO
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(values, exps):
                if e:
                    term = term * (v**e)
            acc = acc + term
        return acc

    def eval_complex(self, values) -> complex:
        acc = 0j
        for exps, c in self.terms.items():
            term = to_approx(c)
            for v, e in zip(values, exps):
                if e:
                    term *= v**e
            acc += term
        return acc

    def sorted_terms(self, descending=True):
        return sorted(
            self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=descending
        )

    def to_text(self) -> str:
        return _render_terms(
            [(self._monomial_text(e), c) for e, c in self.sorted_terms()]
        )

    def _monomial_text(self, exps):
        parts = []
        for name, e in zip(self.variables, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"


class FreePolyBounded:
    """Noncommutative polynomial on named generators, truncated in degree.

    Terms map words (tuples of generator indices) to coefficients; every
    word must respect the degree cap.
    """

    __slots__ = ("generators", "cap", "terms")

    def __init__(self, generators, cap, terms=None):
        self.generators = tuple(generators)
        self.cap = int(cap)
        clean = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            if len(word) > self.cap:
                raise DegreeCapExceeded(self.cap, "word too long")
            if any(not (0 <= g < len(self.generators)) for g in word):
                raise ValueError("word index out of range")
            if not isinstance(c, GaussianRational):
                c = qi(c)
            if not c.is_zero():
                clean[word] = c
        self.terms = clean

    @staticmethod
    def zero(generators, cap):
        return FreePolyBounded(generators, cap, {})

    @staticmethod
    def constant(generators, cap, c):
        return FreePolyBounded(generators, cap, {(): c})

    @staticmethod
    def generator(generators, cap, name):
        idx = list(generators).index(name)
        return FreePolyBounded(generators, cap, {(idx,): ONE})

    @staticmethod
    def word(generators, cap, indices, c=ONE):
        return FreePolyBounded(generators, cap, {tuple(indices): c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(len(w) for w in self.terms)

    def _same_algebra(self, other):
        if self.generators != other.generators:
            raise ValueError("generator lists differ")

    def __eq__(self, other):
        if not isinstance(other, FreePolyBounded):
            return NotImplemented
        return self.generators == other.generators and self.terms == other.terms

    def __hash__(self):
        return hash((self.generators, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, FreePolyBounded):
            return NotImplemented
        self._same_algebra(other)
        cap = max(self.cap, other.cap)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            cur = terms.get(w, ZERO) + c
            if cur.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = cur
        return FreePolyBounded(self.generators, cap, terms)

    def __neg__(self):
        return FreePolyBounded(
            self.generators, self.cap, {w: -c for w, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, FreePolyBounded):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FreePolyBounded):
            return NotImplemented
        self._same_algebra(other)
        cap = max(self.cap, other.cap)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                if len(w) > cap:
                    raise DegreeCapExceeded(cap, "product exceeds degree cap")
                cur = terms.get(w, ZERO) + c1 * c2
                if cur.is_zero():
                    terms.pop(w, None)
                else:
                    terms[w] = cur
        return FreePolyBounded(self.generators, cap, terms)

    def scale(self, c) -> "FreePolyBounded":
        if not isinstance(c, GaussianRational):
            c = qi(c)
        if c.is_zero():
            return FreePolyBounded.zero(self.generators, self.cap)
        return FreePolyBounded(
            self.generators, self.cap, {w: v * c for w, v in self.terms.items()}
        )

    def homogeneous_part(self, degree):
        return FreePolyBounded(
            self.generators,
            self.cap,
            {w: c for w, c in self.terms.items() if len(w) == degree},
        )

    def sorted_terms(self, descending=True):
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0]), kv[0]),
            reverse=descending,
        )

    def to_text(self) -> str:
        return _render_terms(
            [(self._word_text(w), c) for w, c in self.sorted_terms()]
        )

    def _word_text(self, word):
        parts = []
        k = 0
        while k < len(word):
            j = k
            while j < len(word) and word[j] == word[k]:
                j += 1
            name = self.generators[word[k]]
            parts.append(name if j - k == 1 else f"{name}^{j - k}")
            k = j
        return "*".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"FreePolyBounded({self.to_text()})"


def commutator(a, b):
    return a * b - b * a


# ---------------------------------------------------------------------------
# text rendering and parsing
# ---------------------------------------------------------------------------


def _render_terms(pairs):
    """Render (monomial text, coefficient) pairs; complex coefficients are
    split into a real and an imaginary printed term so output re-parses."""
    pieces = []
    for mono, c in pairs:
        if c.re:
            pieces.append(_signed_piece(c.re, False, mono))
        if c.im:
            pieces.append(_signed_piece(c.im, True, mono))
    if not pieces:
        return "0"
    text = pieces[0][1] if pieces[0][0] >= 0 else "-" + pieces[0][1]
    for sign, body in pieces[1:]:
        text += (" + " if sign >= 0 else " - ") + body
    return text


def _signed_piece(frac, imaginary, mono):
    sign = 1 if frac >= 0 else -1
    mag = abs(frac)
    factors = []
    if mag != 1 or (not imaginary and not mono):
        factors.append(_format_fraction(mag))
    if imaginary:
        factors.append("i")
    if mono:
        factors.append(mono)
    return sign, "*".join(factors)


def parse_poly_text(text, variables, commutative=True, cap=None):
    """Parse polynomial text against declared generator names.

    Returns MultiPoly (commutative) or FreePolyBounded.  Factor order is
    preserved for the noncommutative case.
    """
    if not isinstance(text, str):
        raise ParseError("polynomial text must be a string")
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial text")
    variables = list(variables)
    if cap is None:
        cap = 4
    chunks = []
    start = 0
    for k in range(1, len(s)):
        if s[k] in "+-" and s[k - 1] not in "+-*/^":
            chunks.append(s[start:k])
            start = k
    chunks.append(s[start:])

    if commutative:
        result = MultiPoly.zero(variables)
    else:
        result = FreePolyBounded.zero(variables, cap)
    for chunk in chunks:
        sign = ONE
        body = chunk
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = sign
        exps = [0] * len(variables)
        word = []
        for factor in body.split("*"):
            if not factor:
                raise ParseError(f"empty factor in {text!r}")
            name, _, exp_txt = factor.partition("^")
            if exp_txt:
                if not exp_txt.isdigit():
                    raise ParseError(f"bad exponent in {factor!r}")
                exp = int(exp_txt)
            else:
                exp = 1
            if name in variables:
                idx = variables.index(name)
                exps[idx] += exp
                word.extend([idx] * exp)
            elif name == "i":
                coeff = coeff * (qi(0, 1) ** exp)
            else:
                try:
                    lit = parse_scalar(name)
                except ParseError:
                    raise ParseError(
                        f"unknown factor {name!r} (variables: {variables})"
                    ) from None
                coeff = coeff * lit**exp
        if commutative:
            result = result.add_term(tuple(exps), coeff)
        else:
            if len(word) > cap:
                raise DegreeCapExceeded(cap, f"term {chunk!r}")
            result = result + FreePolyBounded.word(variables, cap, word, coeff)
    return result


def parse_univariate(text, var) -> Poly:
    return parse_poly_text(text, [var], commutative=True).to_univariate()


# ---------------------------------------------------------------------------
# multivariate reduction
# ---------------------------------------------------------------------------


def _divides(small, big):
    return all(a <= b for a, b in zip(small, big))


def reduce_modulo(p: MultiPoly, gens) -> MultiPoly:
    """Remainder of p under multivariate division by gens (grlex order).

    Division by the generators' leading terms in list order; deterministic.
    This is remainder reduction, not an ideal-membership oracle, except
    when the generators form a border/Groebner-style basis.
    """
    gens = [g for g in gens if not g.is_zero()]
    leads = [g.leading_term() for g in gens]
    remainder = MultiPoly.zero(p.variables)
    work = p
    while not work.is_zero():
        exps, c = work.leading_term()
        hit = None
        for k, (lexp, lc) in enumerate(leads):
            if _divides(lexp, exps):
                hit = (k, lexp, lc)
                break
        if hit is None:
            remainder = remainder.add_term(exps, c)
            work = work.add_term(exps, -c)
        else:
            k, lexp, lc = hit
            shift = tuple(a - b for a, b in zip(exps, lexp))
            factor = MultiPoly(p.variables, {shift: c / lc})
            work = work - factor * gens[k]
    return remainder

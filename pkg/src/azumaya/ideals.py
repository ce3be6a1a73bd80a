"""Vanishing ideals of commuting matrix tuples and free-algebra normal forms.

The vanishing ideal {f : f(m_1..m_l) = 0} of a commuting tuple is found by
spanning monomial values in graded-lex order: a monomial whose matrix value
depends linearly on earlier values contributes a generator (the dependency
relation); the independent monomials are the standard monomials of the
quotient.  The span is multiplicatively generated, so the first degree that
adds nothing new stabilizes the computation; generators are collected one
degree further and then inter-reduced.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeCapExceeded, EngineError
from .linalg import EchelonSpan, ExactMatrix, check_commuting
from .mpoly import (
    FreePolyBounded,
    MultiPoly,
    grlex_key,
    monomials_of_degree,
    reduce_modulo,
)
from .scalars import ONE, ZERO


def default_variable_names(count):
    if count == 1:
        return ["y"]
    return [f"y{k + 1}" for k in range(count)]


@dataclass
class IdealPresentation:
    """Reduced graded-lex generator list plus the quotient's monomial basis."""

    variables: tuple
    generators: list
    standard_monomials: list

    @property
    def quotient_dimension(self):
        return len(self.standard_monomials)

    def generator_texts(self):
        return [g.to_text() for g in self.generators]

    def standard_monomial_texts(self):
        one = MultiPoly.constant(self.variables, ONE)
        out = []
        for exps in self.standard_monomials:
            if sum(exps) == 0:
                out.append("1")
            else:
                out.append(MultiPoly(self.variables, {exps: ONE}).to_text())
        return out

    def __eq__(self, other):
        if not isinstance(other, IdealPresentation):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.generators == other.generators
            and self.standard_monomials == other.standard_monomials
        )


def evaluate_at_tuple(p: MultiPoly, matrices) -> ExactMatrix:
    """Exact value of p(m_1..m_l); matrices must pairwise commute."""
    if len(p.variables) != len(matrices):
        raise ValueError("variable count does not match tuple length")
    if not matrices:
        raise ValueError("empty tuple")
    check_commuting(matrices)
    n = matrices[0].rows
    acc = ExactMatrix.zeros(n)
    for exps, c in p.terms.items():
        term = ExactMatrix.identity(n) * c
        for m, e in zip(matrices, exps):
            if e:
                term = term * m**e
        acc = acc + term
    return acc


def evaluate_word_poly(p: FreePolyBounded, matrices) -> ExactMatrix:
    """Value of a free-algebra element on matrices (order preserved)."""
    if len(p.generators) != len(matrices):
        raise ValueError("generator count does not match tuple length")
    n = matrices[0].rows
    acc = ExactMatrix.zeros(n)
    for word, c in p.terms.items():
        term = ExactMatrix.identity(n) * c
        for g in word:
            term = term * matrices[g]
        acc = acc + term
    return acc


class QuotientData:
    """Vanishing ideal plus the exact multiplication action on the quotient.

    ``mult_ops[i]`` is the matrix of multiplication by the i-th variable on
    the standard-monomial basis.  These commute and their joint spectrum
    gives the local structure of the image scheme.
    """

    def __init__(self, presentation, standard_values, mult_ops):
        self.presentation = presentation
        self.standard_values = standard_values
        self.mult_ops = mult_ops


def vanishing_ideal(matrices, names=None, degree_cap=None) -> IdealPresentation:
    return quotient_data(matrices, names, degree_cap).presentation


def quotient_data(matrices, names=None, degree_cap=None) -> QuotientData:
    matrices = list(matrices)
    if not matrices:
        raise ValueError("empty tuple")
    check_commuting(matrices)
    l = len(matrices)
    r = matrices[0].rows
    names = default_variable_names(l) if names is None else list(names)
    if len(names) != l:
        raise ValueError("name count does not match tuple length")
    cap = 2 * r if degree_cap is None else degree_cap

    span = EchelonSpan(r * r)
    values = {}
    standard = []  # exponent tuples
    raw_generators = []
    degree = 0
    while True:
        new_independent = 0
        for exps in monomials_of_degree(l, degree):
            if degree == 0:
                value = ExactMatrix.identity(r)
            else:
                j = next(k for k in range(l) if exps[k] > 0)
                parent = tuple(
                    e - 1 if k == j else e for k, e in enumerate(exps)
                )
                value = matrices[j] * values[parent]
            values[exps] = value
            independent, coords = span.insert(value.flatten())
            if independent:
                standard.append(exps)
                new_independent += 1
            else:
                gen = MultiPoly(names, {exps: ONE})
                for c, sm in zip(coords, standard):
                    if not c.is_zero():
                        gen = gen.add_term(sm, -c)
                raw_generators.append(gen)
        if degree > 0 and new_independent == 0:
            # span stabilized; collect one more degree of relations
            for exps in monomials_of_degree(l, degree + 1):
                j = next(k for k in range(l) if exps[k] > 0)
                parent = tuple(e - 1 if k == j else e for k, e in enumerate(exps))
                value = matrices[j] * values[parent]
                values[exps] = value
                independent, coords = span.insert(value.flatten())
                if independent:
                    raise DegreeCapExceeded(cap, "stabilization rule violated")
                gen = MultiPoly(names, {exps: ONE})
                for c, sm in zip(coords, standard):
                    if not c.is_zero():
                        gen = gen.add_term(sm, -c)
                raw_generators.append(gen)
            break
        degree += 1
        if degree > cap:
            raise DegreeCapExceeded(cap, "vanishing ideal did not stabilize")

    generators = []
    for gen in raw_generators:
        reduced = reduce_modulo(gen, generators) if generators else gen
        if not reduced.is_zero():
            generators.append(reduced)

    presentation = IdealPresentation(
        variables=tuple(names),
        generators=generators,
        standard_monomials=list(standard),
    )
    standard_values = [values[exps] for exps in standard]
    mult_ops = []
    for i in range(l):
        cols = []
        for exps in standard:
            product = matrices[i] * values[exps]
            coords = span.express(product.flatten())
            if coords is None:
                raise EngineError("monomial span not multiplicatively closed")
            cols.append(coords)
        mult_ops.append(ExactMatrix.from_columns(cols))
    return QuotientData(presentation, standard_values, mult_ops)


# ---------------------------------------------------------------------------
# degree-bounded free-algebra normal forms
# ---------------------------------------------------------------------------


def _words_up_to(ngens, cap):
    out = [()]
    frontier = [()]
    for _ in range(cap):
        frontier = [w + (g,) for w in frontier for g in range(ngens)]
        out.extend(frontier)
    return out


class TruncatedIdealReducer:
    """Reduces free-algebra elements modulo the span of all products
    u*g*v (g a relation, u, v words) that fit under the degree cap.

    Reduction is against the RREF of that span, so normal forms are
    canonical, linear, and idempotent at the given cap.  For homogeneous
    top-degree relations (the quadric-commutator algebra) membership at
    the cap is exact; in general this is a degree-truncated check.
    """

    def __init__(self, generators, relations, cap):
        self.generators = tuple(generators)
        self.cap = cap
        words = _words_up_to(len(self.generators), cap)
        self.index = {w: k for k, w in enumerate(words)}
        self.words = words
        self.span = EchelonSpan(len(words))
        for rel in relations:
            deg = rel.degree()
            if deg < 0:
                continue
            for u in _words_up_to(len(self.generators), cap - deg):
                for v in _words_up_to(len(self.generators), cap - deg - len(u)):
                    product = self._pad_product(u, rel, v)
                    if product is not None:
                        self.span.insert(product)

    def _pad_product(self, u, rel, v):
        vec = [ZERO] * len(self.words)
        any_nonzero = False
        for word, c in rel.terms.items():
            w = u + word + v
            if len(w) > self.cap:
                return None
            vec[self.index[w]] = vec[self.index[w]] + c
            any_nonzero = True
        return vec if any_nonzero else None

    def normal_form(self, elem: FreePolyBounded) -> FreePolyBounded:
        if elem.degree() > self.cap:
            raise DegreeCapExceeded(self.cap, "element above normal-form cap")
        vec = [ZERO] * len(self.words)
        for word, c in elem.terms.items():
            vec[self.index[word]] = c
        residual = self.span.residual(vec)
        terms = {}
        for k, c in enumerate(residual):
            if not c.is_zero():
                terms[self.words[k]] = c
        return FreePolyBounded(self.generators, self.cap, terms)


def nc_normal_form(elem, relations, cap=4) -> FreePolyBounded:
    reducer = TruncatedIdealReducer(elem.generators, relations, cap)
    return reducer.normal_form(elem)

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from azumaya.errors import NotCommuting
from azumaya.linalg import (
    ExactMatrix,
    characteristic_polynomial,
    invert,
    joint_spectrum,
    kernel_basis,
    minimal_polynomial,
    evaluate_poly_at_matrix,
)
from azumaya.polys import Poly
from azumaya.scalars import qi

from oracles import brute_minimal_polynomial


def M(rows):
    return ExactMatrix(rows)


@st.composite
def small_matrices(draw, max_size=3, span=3):
    n = draw(st.integers(1, max_size))
    entries = [
        [
            qi(draw(st.integers(-span, span)), draw(st.integers(-span, span)))
            for _ in range(n)
        ]
        for _ in range(n)
    ]
    return ExactMatrix(entries)


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.zeros(2)) == [
        [qi(1), qi(0)],
        [qi(0), qi(1)],
    ]
    assert kernel_basis(ExactMatrix.identity(3)) == []
    # hand row-reduction oracle: [[1,2],[2,4]] -> x1 = -2 x2
    assert kernel_basis(M([[1, 2], [2, 4]])) == [[qi(-2), qi(1)]]


@given(small_matrices())
@settings(max_examples=60)
def test_kernel_vectors_annihilate(m):
    for v in kernel_basis(m):
        assert all(e.is_zero() for e in m.apply(v))


def test_minimal_polynomial_examples():
    assert minimal_polynomial(M([[0, 0], [0, 1]])) == Poly([0, -1, 1])
    assert minimal_polynomial(M([[3, 1], [0, 3]])) == Poly([9, -6, 1])
    assert minimal_polynomial(M([[3, 0], [0, 3]])) == Poly([-3, 1])


def test_characteristic_polynomial_examples():
    assert characteristic_polynomial(M([[0, 1], [1, 0]])) == Poly([-1, 0, 1])
    assert characteristic_polynomial(ExactMatrix.identity(3)) == Poly(
        [-1, 3, -3, 1]
    )
    # frozen from the 2x2 determinant expansion: det(yI - m) = y^2 - 5
    assert characteristic_polynomial(M([[0, 5], [1, 0]])) == Poly([-5, 0, 1])


@given(small_matrices())
@settings(max_examples=40)
def test_cayley_hamilton_exact(m):
    chi = characteristic_polynomial(m)
    assert evaluate_poly_at_matrix(chi, m).is_zero()


@given(small_matrices())
@settings(max_examples=40)
def test_minimal_divides_characteristic(m):
    mu = minimal_polynomial(m)
    chi = characteristic_polynomial(m)
    assert (chi % mu).is_zero()


@given(small_matrices())
@settings(max_examples=25)
def test_minimal_polynomial_against_brute_force(m):
    mu = minimal_polynomial(m)
    brute = brute_minimal_polynomial(
        [[(e.re, e.im) for e in row] for row in m.entries]
    )
    assert [(c.re, c.im) for c in mu.coeffs] == brute


def test_conjugation_invariance_of_polynomials():
    m = M([[1, 2], [3, qi(0, 1)]])
    g = M([[1, 1], [0, 1]])
    conj = g * m * invert(g)
    assert minimal_polynomial(conj) == minimal_polynomial(m)
    assert characteristic_polynomial(conj) == characteristic_polynomial(m)


def test_invert_round_trip_and_singular():
    g = M([[1, 2], [3, 5]])
    assert g * invert(g) == ExactMatrix.identity(2)
    with pytest.raises(ValueError):
        invert(M([[1, 2], [2, 4]]))


# joint spectrum


def test_joint_spectrum_diagonal():
    js = joint_spectrum([M([[0, 0], [0, 1]]), M([[2, 0], [0, 3]])])
    assert [(c.exact_point, c.multiplicity) for c in js.clusters] == [
        ((qi(0), qi(2)), 1),
        ((qi(1), qi(3)), 1),
    ]


def test_joint_spectrum_jordan_block():
    js = joint_spectrum([M([[3, 1], [0, 3]])])
    (c,) = js.clusters
    assert c.exact_point == (qi(3),) and c.multiplicity == 2


def test_joint_spectrum_nilpotent_pair():
    # frozen by direct triangularization: strictly upper pair is supported
    # at the origin with full multiplicity
    js = joint_spectrum([M([[0, 1], [0, 0]]), ExactMatrix.zeros(2)])
    (c,) = js.clusters
    assert c.exact_point == (qi(0), qi(0)) and c.multiplicity == 2


def test_joint_spectrum_rejects_noncommuting():
    with pytest.raises(NotCommuting) as info:
        joint_spectrum([M([[0, 1], [0, 0]]), M([[0, 0], [1, 0]])])
    assert not info.value.commutator.is_zero()


def test_joint_spectrum_irrational_eigenvalues():
    js = joint_spectrum([M([[0, 5], [1, 0]])])
    points = sorted(c.point[0].real for c in js.clusters)
    assert len(js.clusters) == 2
    assert abs(points[0] + 5**0.5) < 1e-8 and abs(points[1] - 5**0.5) < 1e-8
    assert all(c.exact_point is None for c in js.clusters)


def test_joint_spectrum_irrational_with_multiplicity():
    block = M([[0, 5], [1, 0]])
    big = ExactMatrix(
        [
            [0, 5, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 0, 5],
            [0, 0, 1, 0],
        ]
    )
    js = joint_spectrum([big])
    assert sorted(c.multiplicity for c in js.clusters) == [2, 2]
    assert js.total_multiplicity == 4


def test_joint_spectrum_multiplicities_sum_to_rank():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        a = ExactMatrix(
            [
                [qi(int(x)) for x in rng.integers(-2, 3, size=n)]
                for _ in range(n)
            ]
        )
        spectrum = joint_spectrum([a])
        assert spectrum.total_multiplicity == n
        assert len(spectrum.clusters) <= n


def test_cluster_separation_respects_tolerance():
    # eigenvalues 0 and 1e-12 merge at the default relative tolerance
    m = M([[0, 0], [0, Fraction(1, 10**12)]])
    js = joint_spectrum([m])
    assert len(js.clusters) == 1 and js.clusters[0].multiplicity == 2
    js_fine = joint_spectrum([m], tol=1e-15)
    assert len(js_fine.clusters) == 2

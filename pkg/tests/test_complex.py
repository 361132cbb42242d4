import random
from functools import reduce
from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from alexandroff.complex import (
    HomologyGroup,
    SimplicialComplex,
    chain_complex,
    homology,
    homology_all,
    order_complex,
    smith_normal_form,
    space_homology,
)
from alexandroff.space import connected_components, disjoint_union, from_relations, kolmogorov_quotient

from posets import antichain, chain, circle, random_non_t0, random_poset, rp2_face_poset


def brute_chains(X):
    out = set()
    for k in range(1, len(X) + 1):
        for sub in combinations(X.points, k):
            if all(X.leq(u, v) or X.leq(v, u) for u, v in combinations(sub, 2)):
                out.add(sub)
    return out


def determinantal_factors(M):
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    A = sympy.Matrix(M)
    rows, cols = A.shape
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        minors = [A.extract(list(r), list(c)).det() for r in combinations(range(rows), k)
                  for c in combinations(range(cols), k)]
        g = reduce(gcd, (abs(int(m)) for m in minors), 0)
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def test_order_complex_circle_is_square_boundary():
    K = order_complex(circle())
    assert K.simplices_of_dim(0) == [("a",), ("b",), ("c",), ("d",)]
    assert set(K.simplices_of_dim(1)) == {("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")}
    assert K.simplices_of_dim(2) == []
    assert set(K.simplices) == brute_chains(circle())


def test_order_complex_chain_and_antichain():
    K = order_complex(chain(3))
    assert ("x", "y", "z") in K.simplices and len(K.simplices) == 7
    A = order_complex(antichain(5))
    assert A.dimension == 0 and len(A.simplices) == 5


def test_order_complex_rejects_non_t0():
    X = from_relations("xy", [("x", "y"), ("y", "x")])
    with pytest.raises(ValueError, match="T0"):
        order_complex(X)


def test_order_complex_matches_brute_force_on_random_posets():
    rng = random.Random(3)
    for _ in range(30):
        X = random_poset(rng, rng.randint(1, 8))
        assert set(order_complex(X).simplices) == brute_chains(X)


def test_simplicial_complex_requires_faces():
    with pytest.raises(ValueError, match="face"):
        SimplicialComplex(("u", "v", "w"), frozenset({("u",), ("v",), ("w",), ("u", "v", "w")}))
    with pytest.raises(ValueError):
        SimplicialComplex(("u", "v"), frozenset({("u",), ("u", "v")}))


def test_boundary_of_an_edge():
    K = SimplicialComplex(("u", "v"), frozenset({("u",), ("v",), ("u", "v")}))
    assert chain_complex(K).boundary(1) == [[-1], [1]]


def test_boundary_squares_to_zero_on_a_simplex():
    C = chain_complex(order_complex(chain(4, "wxyz")))
    d1, d2, d3 = C.boundary(1), C.boundary(2), C.boundary(3)
    for a, b in ((d1, d2), (d2, d3)):
        prod = sympy.Matrix(a) * sympy.Matrix(b)
        assert prod.is_zero_matrix


def test_circle_boundary_rank_three():
    d1 = chain_complex(order_complex(circle())).boundary(1)
    assert len(d1) == 4 and len(d1[0]) == 4
    assert sympy.Matrix(d1).rank() == 3
    assert smith_normal_form(d1) == ([1, 1, 1], 3)


@pytest.mark.parametrize("M, expected", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], ([1, 1, 1], 3)),
    ([[2, 0], [0, 0]], ([2], 1)),
    ([[2, 4], [6, 8]], ([2, 4], 2)),
    ([], ([], 0)),
    ([[0, 0, 0]], ([], 0)),
])
def test_smith_normal_form_examples(M, expected):
    assert smith_normal_form(M) == expected


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_smith_normal_form_matches_determinantal_divisors(M):
    factors, rank = smith_normal_form(M)
    assert factors == determinantal_factors(M)
    assert rank == sympy.Matrix(M).rank()
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


def test_smith_normal_form_large_entries_stay_exact():
    big = 10 ** 30
    assert smith_normal_form([[big, 0], [0, big * 6]]) == ([big, big * 6], 2)


def test_homology_examples():
    K = order_complex(circle())
    assert homology(K, 1) == HomologyGroup(1)
    assert homology(K, 0) == HomologyGroup(1)
    assert homology(order_complex(chain(3)), 1) == HomologyGroup(0)
    two = disjoint_union(chain(3), chain(2, "uv"))
    assert homology(order_complex(two), 0).betti == 2


def test_homology_dimension_cap():
    K = order_complex(chain(3))
    with pytest.raises(ValueError, match="cap"):
        homology(K, 4)
    assert homology(K, 4, max_dim=5) == HomologyGroup(0)
    with pytest.raises(ValueError):
        homology(K, -1)


def test_projective_plane_has_two_torsion():
    X = rp2_face_poset()
    groups = homology_all(order_complex(X))
    assert groups == [HomologyGroup(1), HomologyGroup(0, (2,)), HomologyGroup(0)]
    assert str(groups[1]) == "Z/2"


def test_homology_formatting():
    assert str(HomologyGroup(0)) == "0"
    assert str(HomologyGroup(1)) == "Z"
    assert str(HomologyGroup(3, (2, 4))) == "Z^3 ⊕ Z/2 ⊕ Z/4"
    with pytest.raises(ValueError):
        HomologyGroup(0, (2, 3))


def test_euler_characteristic_and_components_on_random_posets():
    rng = random.Random(11)
    for _ in range(60):
        X = random_poset(rng, rng.randint(1, 8))
        K = order_complex(X)
        groups = homology_all(K, max_dim=len(X))
        assert sum((-1) ** n * g.betti for n, g in enumerate(groups)) == K.euler_characteristic()
        assert groups[0].betti == len(connected_components(X))
        C = chain_complex(K)
        for n in range(2, K.dimension + 1):
            assert (sympy.Matrix(C.boundary(n - 1)) * sympy.Matrix(C.boundary(n))).is_zero_matrix


def test_non_t0_homology_goes_through_the_quotient():
    rng = random.Random(5)
    for _ in range(10):
        X = random_non_t0(rng)
        X0 = kolmogorov_quotient(X).space
        for n in range(3):
            assert space_homology(X, n) == homology(order_complex(X0), n)

import itertools
from fractions import Fraction

import pytest

from quasilang.errors import ValidationError
from quasilang.grouptheory import FiniteGroup, abelian_table
from quasilang.segre import (
    GroupAction,
    SimplicialComplex,
    boundary_matrix,
    check_boundary_squares_to_zero,
    equivariant_hilbert_data,
    equivariant_trace,
    homology_ranks,
    iterated_segre,
    segre_product,
)


def edge() -> SimplicialComplex:
    return SimplicialComplex([1, 2], [[1, 2]])


def triangle_boundary() -> SimplicialComplex:
    return SimplicialComplex([1, 2, 3], [[1, 2], [2, 3], [1, 3]])


def test_closure_and_counts():
    filled = SimplicialComplex([1, 2, 3], [[1, 2, 3]])
    assert len(filled.simplices[0]) == 3
    assert len(filled.simplices[1]) == 3
    assert len(filled.simplices[2]) == 1
    assert filled.facets() == [(1, 2, 3)]


def test_segre_of_two_edges():
    prod = segre_product(edge(), edge())
    assert len(prod.vertices) == 4
    edges = prod.simplices.get(1, [])
    assert sorted(edges) == [((1, 1), (2, 2)), ((1, 2), (2, 1))]


def test_segre_with_point_is_zero_skeleton():
    point = SimplicialComplex([0], [[0]])
    prod = segre_product(edge(), point)
    assert len(prod.vertices) == 2
    assert 1 not in prod.simplices or not prod.simplices[1]


def test_segre_vertex_count():
    x = triangle_boundary()
    prod = segre_product(x, edge())
    assert len(prod.vertices) == 6


def test_boundary_squares_to_zero():
    for complex_ in [
        triangle_boundary(),
        SimplicialComplex([1, 2, 3, 4], [[1, 2, 3], [2, 3, 4]]),
        iterated_segre(edge(), 3),
    ]:
        check_boundary_squares_to_zero(complex_)


def test_homology_circle():
    data = homology_ranks(triangle_boundary(), 1)
    assert data.rank(0) == 1 and data.rank(1) == 1


def test_homology_two_disjoint_edges():
    x = SimplicialComplex([1, 2, 3, 4], [[1, 2], [3, 4]])
    data = homology_ranks(x, 1)
    assert data.rank(0) == 2 and data.rank(1) == 0


def test_homology_filled_triangle():
    filled = SimplicialComplex([1, 2, 3], [[1, 2, 3]])
    data = homology_ranks(filled, 2)
    assert data.rank(0) == 1 and data.rank(1) == 0 and data.rank(2) == 0


def test_edge_powers_components():
    for n in range(1, 5):
        power = iterated_segre(edge(), n)
        data = homology_ranks(power, 0)
        assert data.rank(0) == 2 ** (n - 1)


def union_find_components(x: SimplicialComplex) -> int:
    parent = {v: v for v in x.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in x.simplices.get(1, []):
        for a, b in itertools.combinations(e, 2):
            parent[find(a)] = find(b)
    return len({find(v) for v in x.vertices})


def test_h0_equals_component_count():
    for complex_ in [
        edge(),
        triangle_boundary(),
        iterated_segre(edge(), 3),
        SimplicialComplex([1, 2, 3, 4, 5], [[1, 2], [3, 4], [5]]),
    ]:
        assert homology_ranks(complex_, 0).rank(0) == union_find_components(complex_)


def z2_swap_action():
    g = FiniteGroup.cyclic(2)
    table = abelian_table(g)
    base = iterated_segre(edge(), 1)  # vertices (1,), (2,)
    maps = [
        {(1,): (1,), (2,): (2,)},
        {(1,): (2,), (2,): (1,)},
    ]
    return GroupAction(table, base, maps)


def test_group_action_validation():
    g = FiniteGroup.cyclic(2)
    table = abelian_table(g)
    base = iterated_segre(edge(), 1)
    with pytest.raises(ValidationError):
        GroupAction(table, base, [{(1,): (1,), (2,): (2,)}, {(1,): (1,), (2,): (1,)}])


def test_equivariant_traces_edge_square():
    action = z2_swap_action()
    power = iterated_segre(edge(), 2)
    hom = homology_ranks(power, 0)
    # identity trace = rank, full swap preserves both components
    ident = {v: v for v in power.vertices}
    assert equivariant_trace(power, hom, 0, ident) == 2
    swap_both = {v: (3 - v[0], 3 - v[1]) for v in power.vertices}
    assert equivariant_trace(power, hom, 0, swap_both) == 2
    swap_first = {v: (3 - v[0], v[1]) for v in power.vertices}
    assert equivariant_trace(power, hom, 0, swap_first) == 0


def test_equivariant_hilbert_data_edge():
    action = z2_swap_action()
    data = equivariant_hilbert_data(action, 0, 2)
    assert data[0] == {(1, 0): 1}
    assert data[1] == {(2, 0): 1, (0, 2): 1}


def test_equivariant_identity_trace_is_rank():
    action = z2_swap_action()
    data = equivariant_hilbert_data(action, 0, 3)
    for n, poly in enumerate(data, start=1):
        total = 0
        for content, mult in poly.items():
            total += mult  # all irreducibles of an abelian group are linear
        assert total == 2 ** (n - 1)


def test_json_round_trip():
    x = triangle_boundary()
    blob = x.to_json()
    y = SimplicialComplex.from_json(blob)
    assert y.simplices == x.simplices

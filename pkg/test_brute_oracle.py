# test_brute_oracle.py
import random
from fractions import Fraction

import pytest

from src.linalg.exact_linalg import det_fraction_free
from src.traces.brute_oracle import (IndexEntry, IndexTuple, MultiDigraph, brute_trace,
                                     build_minor_matrix, count_eulerian_circuits, digraph_of,
                                     digraph_trace_terms, enumeration_size, hypercycle_edges,
                                     laplacian_minor, minor_closed_form, minor_determinant_check,
                                     weak_compositions)
from src.traces.trace_engine import trace_any
from src.utils.errors import FeasibilityError, ParameterError


def _circuits_by_backtracking(arcs):
    # фиксируем первую дугу: каждый контур учитывается ровно один раз
    used = [False] * len(arcs)
    start = arcs[0][0]

    def walk(vertex, remaining):
        if remaining == 0:
            return 1 if vertex == start else 0
        total = 0
        for index, (u, v) in enumerate(arcs):
            if not used[index] and u == vertex:
                used[index] = True
                total += walk(v, remaining - 1)
                used[index] = False
        return total

    used[0] = True
    return walk(arcs[0][1], len(arcs) - 1)


def _random_closed_walk(rng, vertices, length):
    walk = [rng.choice(vertices)]
    for _ in range(length - 1):
        walk.append(rng.choice([v for v in vertices if v != walk[-1]]))
    while walk[-1] == walk[0]:
        walk[-1] = rng.choice([v for v in vertices if v not in (walk[-2], walk[0])])
    return list(zip(walk, walk[1:] + walk[:1]))


def test_hypercycle_edges():
    assert [set(e) for e in hypercycle_edges(3, 3)] == [{1, 2, 4}, {2, 3, 5}, {3, 1, 6}]
    assert [set(e) for e in hypercycle_edges(4, 3)] == [{1, 4, 5, 2}, {2, 6, 7, 3}, {3, 8, 9, 1}]
    edges = hypercycle_edges(5, 4)
    assert len({v for e in edges for v in e}) == 4 * 4
    with pytest.raises(ParameterError):
        hypercycle_edges(2, 3)


def test_weak_compositions():
    items = list(weak_compositions(3, 2))
    assert items == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert len(list(weak_compositions(4, 3))) == 15


def test_enumeration_size():
    assert enumeration_size(3, 3, 9) == 24310
    assert enumeration_size(4, 3, 4) == 1365


def test_digraph_of_index_tuple():
    F = IndexTuple((IndexEntry(1, (2, 4)), IndexEntry(2, (1, 4)), IndexEntry(4, (2, 1))))
    assert F.is_well_formed(hypercycle_edges(3, 3))
    assert F.is_r_valent(3)
    D = digraph_of(F)
    assert D.arc_count == 6
    assert D.out_degrees() == D.in_degrees() == {1: 2, 2: 2, 4: 2}
    assert not IndexTuple((IndexEntry(2, (1, 4)), IndexEntry(1, (2, 4)))).is_well_formed(hypercycle_edges(3, 3))


def test_laplacian_minor_is_arborescence_count():
    D = MultiDigraph.from_arcs([(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)])
    assert laplacian_minor(D).to_rows() == [[2, -1], [-1, 2]]
    assert det_fraction_free(laplacian_minor(D, root=3)) == 3


def test_eulerian_circuits_small():
    assert count_eulerian_circuits(MultiDigraph.from_arcs([(1, 2), (2, 1)])) == 1
    assert count_eulerian_circuits(MultiDigraph.from_arcs([(1, 2), (1, 2), (2, 1), (2, 1)])) == 2
    assert count_eulerian_circuits(MultiDigraph.from_arcs([(1, 2), (2, 3)])) == 0
    disconnected = MultiDigraph.from_arcs([(1, 2), (2, 1), (3, 4), (4, 3)])
    assert count_eulerian_circuits(disconnected) == 0
    assert count_eulerian_circuits(MultiDigraph.from_arcs([], vertices=[1])) == 0


def test_eulerian_circuits_match_backtracking():
    rng = random.Random(3)
    for _ in range(60):
        vertices = list(range(1, rng.randint(2, 4) + 1))
        if len(vertices) > 2:
            arcs = _random_closed_walk(rng, vertices, rng.randint(2, 8))
        else:
            arcs = [(1, 2), (2, 1)] * rng.randint(1, 4)
        D = MultiDigraph.from_arcs(arcs)
        assert count_eulerian_circuits(D) == _circuits_by_backtracking(arcs)


def test_digraph_trace_terms_are_r_valent():
    for term in digraph_trace_terms(3, 3, 3):
        in_degrees = term.digraph.in_degrees()
        for v, out in term.digraph.out_degrees().items():
            assert (out // 2 + in_degrees[v]) % 3 == 0
        assert term.tuple_count > 0


@pytest.mark.parametrize("order", range(1, 7))
def test_brute_trace_matches_formula_c33(order):
    assert brute_trace(3, 3, order) == trace_any(3, 3, order)


@pytest.mark.slow
@pytest.mark.parametrize("order", [7, 8, 9])
def test_brute_trace_matches_formula_c33_high_orders(order):
    value = brute_trace(3, 3, order)
    assert value == trace_any(3, 3, order)
    if order == 9:
        assert value == 1836


def test_brute_trace_r4():
    assert brute_trace(4, 3, 4) == trace_any(4, 3, 4)
    assert brute_trace(4, 3, 3) == 0


def test_brute_trace_is_schedule_independent():
    assert brute_trace(3, 3, 6, jobs=2) == brute_trace(3, 3, 6)


def test_brute_trace_budget():
    with pytest.raises(FeasibilityError) as info:
        brute_trace(3, 3, 9, budget=1000)
    assert info.value.estimate == 24310


def test_brute_trace_is_integral_fraction():
    value = brute_trace(3, 3, 3)
    assert isinstance(value, Fraction)
    assert value == 216


@pytest.mark.parametrize("kind, r, params, expected", [
    ("p", 3, (2,), 12),
    ("p", 3, (1, 1), 9),
    ("c", 3, (1, 1, 1), 54),
    ("cprime", 3, (3, 1), 72),
])
def test_minor_examples(kind, r, params, expected):
    assert det_fraction_free(build_minor_matrix(kind, r, params)) == expected
    assert minor_closed_form(kind, r, params) == expected


def test_minor_matrix_orders():
    assert build_minor_matrix("p", 4, (1, 2, 3)).rows == 3 * 3
    assert build_minor_matrix("c", 4, (1, 2, 3)).rows == 3 * 3 - 1
    assert build_minor_matrix("cprime", 5, (4, 2)).rows == 4 * 4 - 1


@pytest.mark.parametrize("kind", ["p", "c", "cprime"])
def test_minor_random_draws(kind):
    rng = random.Random({"p": 1, "c": 2, "cprime": 3}[kind])
    for _ in range(100):
        r = rng.randint(3, 5)
        if kind == "p":
            params = tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 5)))
        elif kind == "c":
            params = tuple(rng.randint(1, 5) for _ in range(rng.randint(3, 5)))
        else:
            params = (rng.randint(3, 5), rng.randint(1, 5))
        assert minor_determinant_check(kind, r, params)


def test_minor_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        build_minor_matrix("c", 3, (1, 1))
    with pytest.raises(ParameterError):
        build_minor_matrix("q", 3, (1,))
    with pytest.raises(ParameterError):
        build_minor_matrix("p", 2, (1,))

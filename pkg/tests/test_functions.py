import pytest

from submaxi import (
    CoverageFunction,
    CutFunction,
    FacilityLocationFunction,
    ModularFunction,
    PhiObjective,
    evaluate,
    function_from_spec,
)
from submaxi.checkers import check_monotone, check_submodular

from oracles import crossing_weight, es, subsets

TRIANGLE = [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]

FAMILIES = [
    ModularFunction([0.5, 2, 3, 0, 1.25, 4, 7, 2]),
    CoverageFunction([[0, 1], [1, 2, 3], [3], [4, 5, 0], [], [2, 6], [6, 7, 8], [8]],
                     weights=[1, 2, 0.5, 1, 3, 1, 1, 2, 4]),
    CutFunction(8, [(0, 1, 1), (1, 2, 2.5), (2, 3, 1), (3, 0, 1), (4, 5, 3), (5, 6, 1),
                    (6, 7, 0.5), (0, 7, 2), (2, 6, 1)]),
    PhiObjective(4),
    FacilityLocationFunction([[1, 5, 2, 0, 3, 1, 0, 2], [4, 0, 1, 2, 2, 6, 1, 0],
                              [0, 0, 0, 9, 1, 1, 2, 3]]),
]


def test_phi_objective_counts_vertices_only():
    f = PhiObjective(5)
    # s is vertex 0, d1 and d2 are elements 5 and 6
    assert f(es(10, [0, 5, 6])) == 1


def test_cut_triangle_single_vertex():
    f = CutFunction(3, TRIANGLE)
    for v in range(3):
        assert f(es(3, [v])) == crossing_weight(TRIANGLE, [v]) == 2


def test_cut_matches_hand_enumeration():
    edges = FAMILIES[2].edges
    for s in subsets(range(8)):
        assert FAMILIES[2](es(8, s)) == crossing_weight(edges, s)


@pytest.mark.parametrize("f", FAMILIES, ids=lambda f: f.family)
def test_empty_set_is_zero(f):
    assert f(es(f.n, [])) == 0


@pytest.mark.parametrize("f", FAMILIES, ids=lambda f: f.family)
def test_every_family_is_submodular(f):
    assert check_submodular(f)


@pytest.mark.parametrize("f", FAMILIES, ids=lambda f: f.family)
def test_monotonicity_report(f):
    assert check_monotone(f).ok == (f.family != "cut")


def test_cut_is_zero_on_full_set():
    f = FAMILIES[2]
    assert f(es(8, range(8))) == 0


def test_phi_dummies_add_nothing():
    f = PhiObjective(6)
    n = 12
    for s in subsets(range(n)):
        base = es(n, s)
        for d in range(6, 12):
            assert f(base.add(d)) == f(base)


@pytest.mark.parametrize("bad", [
    lambda: ModularFunction([1, -1]),
    lambda: CoverageFunction([[0]], weights=[-2]),
    lambda: CutFunction(2, [(0, 1, -0.5)]),
    lambda: CutFunction(2, [(0, 0, 1)]),
    lambda: CutFunction(2, [(0, 2, 1)]),
    lambda: FacilityLocationFunction([[1, -1]]),
    lambda: FacilityLocationFunction([[1, 2], [1]]),
])
def test_construction_errors(bad):
    with pytest.raises(ValueError):
        bad()


@pytest.mark.parametrize("f", FAMILIES, ids=lambda f: f.family)
def test_spec_round_trip(f):
    g = function_from_spec(f.to_spec())
    assert g.to_spec() == f.to_spec()
    for s in subsets(range(f.n)):
        assert g(es(f.n, s)) == f(es(f.n, s))


def test_evaluate_from_spec():
    assert evaluate({"family": "phi", "n_vertices": 5}, es(10, [0, 5, 6])) == 1
    with pytest.raises(ValueError):
        evaluate({"family": "phi", "n_vertices": 5}, es(4, []))
    with pytest.raises(ValueError):
        function_from_spec({"family": "nope"})
    with pytest.raises(ValueError):
        function_from_spec({"family": "modular", "wieghts": [1]})

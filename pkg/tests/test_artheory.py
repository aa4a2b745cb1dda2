"""Translates, almost split sequences, knitting and Dynkin types."""
import pytest

from arqlab import modcat as mc
from arqlab import zoo
from arqlab.algcore import Quiver
from arqlab.artheory import (almost_split_sequence, classify_graph, dynkin_type_of, irreducible_counts,
                             knit, mesh_defects, sectional_successors, stable_part, tau, tau_inv,
                             transpose)
from arqlab.errors import (BudgetExceeded, NotDynkin, NotSelfinjective, NotSimplyLaced,
                           UndefinedTranslate)

from conftest import d4_star


def test_transpose_of_simple_over_a2():
    a = zoo.hereditary_nakayama(2)   # arrow 2 -> 1
    tr = transpose(mc.simple(a, 1))
    assert tr.algebra is a.opposite()
    assert tr.dims == (1, 0)


def test_tau_in_nakayama_rotates():
    a = zoo.nakayama_selfinjective(3, 3)
    s = mc.simple(a, 0)
    t = tau(s)
    assert t.dim == 1 and mc.top_dims(t) != mc.top_dims(s)
    assert mc.is_isomorphic(tau_inv(t), s)


def test_tau_of_projective_undefined(example):
    with pytest.raises(UndefinedTranslate):
        tau(mc.projective(example, 0))


def test_almost_split_sequence_nakayama():
    a = zoo.nakayama_selfinjective(2, 2)
    s = mc.simple(a, 0)
    seq = almost_split_sequence(s)
    assert seq.right.dim == 1
    assert [(m.dim, k) for m, k in seq.middle] == [(2, 1)]
    assert mc.is_projective(seq.middle[0][0])


@pytest.mark.parametrize("q, count", [
    (Quiver(1, ()), 1),
    (Quiver(3, (("a", 2, 1), ("b", 3, 2))), 6),
    (Quiver(3, (("a", 1, 2), ("b", 3, 2))), 6),
    (Quiver(4, (("a", 2, 1), ("b", 3, 1), ("c", 4, 1))), 12),
    (Quiver(6, (("a", 2, 1), ("b", 3, 2), ("c", 4, 3), ("d", 5, 4), ("e", 6, 3))), 36),
])
def test_hereditary_counts_match_positive_roots(q, count):
    # Gabriel: indecomposables of a Dynkin quiver <-> positive roots
    g = knit(zoo.path_algebra(q))
    assert len(g.nodes) == count
    assert not mesh_defects(g)


def test_example_ar_quiver(example, example_quiver):
    g = example_quiver
    assert len(g.nodes) == 24
    assert sum(g.projective) == 6
    assert g.projective == g.injective
    s, orbits = stable_part(g)
    assert sorted(len(o) for o in orbits) == [6, 6, 6]
    assert str(dynkin_type_of(g)) == "A3"
    assert not mesh_defects(g)
    assert all(mc.is_indecomposable(m) for m in g.nodes)


def test_example_arrows_match_irreducible_maps(example_quiver):
    assert irreducible_counts(example_quiver) == example_quiver.arrows


def test_nakayama_arrows_match_irreducible_maps():
    g = knit(zoo.nakayama_selfinjective(3, 3))
    assert irreducible_counts(g) == g.arrows


def test_length_additivity(example_quiver):
    g = example_quiver
    for z, t in g.tau.items():
        mid = sum(c * g.nodes[i].dim for (i, j), c in g.arrows.items() if j == z)
        assert g.nodes[z].dim + g.nodes[t].dim == mid


def test_stable_part_needs_selfinjective():
    g = knit(zoo.hereditary_nakayama(3))
    with pytest.raises(NotSelfinjective):
        stable_part(g)


def test_budget_exceeded(example):
    with pytest.raises(BudgetExceeded):
        knit(example, node_budget=10)
    with pytest.raises(BudgetExceeded):
        knit(example, dim_budget=2)


def test_dynkin_types_of_trivial_extensions():
    assert str(dynkin_type_of(knit(zoo.trivial_extension_r(d4_star(), 1)))) == "D4"
    assert str(dynkin_type_of(knit(zoo.nakayama_selfinjective(4, 3)))) == "A2"


def test_sectional_successors_form_a_slice(example_quiver):
    g = example_quiver
    start = g.stable_nodes()[0]
    reached = sectional_successors(g, start)
    assert len(reached) == 3


def test_classify_graph():
    assert str(classify_graph([1, 2, 3], [(1, 2, 1), (2, 3, 1)])) == "A3"
    assert str(classify_graph([1, 2, 3, 4], [(1, 2, 1), (1, 3, 1), (1, 4, 1)])) == "D4"
    e7 = [(1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 6, 1), (3, 7, 1)]
    assert str(classify_graph(range(1, 8), e7)) == "E7"
    with pytest.raises(NotDynkin):
        classify_graph([1, 2, 3], [(1, 2, 1), (2, 3, 1), (3, 1, 1)])
    with pytest.raises(NotSimplyLaced):
        classify_graph([1, 2], [(1, 2, 2)])
    star5 = [(1, k, 1) for k in range(2, 6)]
    with pytest.raises(NotDynkin):
        classify_graph(range(1, 6), star5)


def test_dot_and_json(example_quiver):
    dot = example_quiver.to_dot()
    assert dot.count("shape=box") == 6
    assert dot.count("style=dashed") == 18
    js = example_quiver.to_json()
    assert len(js["nodes"]) == 24 and len(js["orbits"]) == 3

"""Constructors: Nakayama, trivial extensions, reflections, Brauer trees."""
import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from arqlab import modcat as mc
from arqlab import zoo
from arqlab.algcore import cartan_matrix, gabriel_quiver, is_selfinjective
from arqlab.analysis import compare_invariants
from arqlab.errors import InvalidTwist, NotASink, NotTriangular

from conftest import a3_alternating, d4_star, same_up_to_relabelling, trivext_bases


def arrows_of(a):
    return sorted((s, t) for _, s, t in gabriel_quiver(a).arrows)


def elementary_divisors(a):
    snf = smith_normal_form(sympy.Matrix(cartan_matrix(a)), domain=sympy.ZZ)
    return sorted(abs(snf[k, k]) for k in range(a.n))


@pytest.mark.parametrize("m, ell", [(1, 2), (2, 2), (3, 2), (2, 5), (4, 3)])
def test_nakayama_dimensions(m, ell):
    a = zoo.nakayama_selfinjective(m, ell)
    assert a.dim == m * ell
    assert a.loewy_length() == ell
    assert is_selfinjective(a)
    assert all(mc.projective(a, i).dim == ell for i in range(m))


def test_hereditary_nakayama():
    a = zoo.hereditary_nakayama(4)
    assert a.dim == 10
    assert not is_selfinjective(a)


@pytest.mark.parametrize("n, r", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_trivial_extension_of_linear_is_nakayama(n, r):
    t = zoo.trivial_extension_r(zoo.hereditary_nakayama(n), r)
    assert same_up_to_relabelling(t, zoo.nakayama_selfinjective(r * n, n + 1))


@pytest.mark.parametrize("name", ["A2", "A3", "A3alt", "D4"])
def test_trivial_extension_dimension(name):
    b = trivext_bases()[name]
    for r in (1, 2):
        t = zoo.trivial_extension_r(b, r)
        assert t.n == r * b.n
        assert t.dim == 2 * r * b.dim
        assert is_selfinjective(t)


def test_twisted_trivial_extension():
    b = d4_star()
    sigma = zoo.AutomorphismSpec((0, 2, 3, 1), {"a": ("b", 1), "b": ("c", 1), "c": ("a", 1)})
    t = zoo.trivial_extension_r(b, 1, sigma)
    assert t.dim == 2 * b.dim and is_selfinjective(t)
    nu = mc.nakayama_permutation(t)
    assert sorted(nu) == list(range(4)) and nu != list(range(4))


def test_invalid_twist():
    b = d4_star()
    with pytest.raises(InvalidTwist):
        zoo.trivial_extension_r(b, 1, zoo.AutomorphismSpec((0, 1, 1, 3)))
    with pytest.raises(InvalidTwist):
        zoo.trivial_extension_r(b, 1, zoo.AutomorphismSpec((1, 0, 2, 3)))
    with pytest.raises(InvalidTwist):
        zoo.trivial_extension_r(b, 1, zoo.AutomorphismSpec((0, 1, 2, 3), {"a": ("a", 0)}))


def test_repetitive_truncation():
    b = zoo.hereditary_nakayama(2)
    assert zoo.repetitive_truncation(b, 0, 0) is b
    r = zoo.repetitive_truncation(b, 0, 1)
    # two copies of B plus one copy of D(B)
    assert r.n == 4 and r.dim == 3 * b.dim
    with pytest.raises(ValueError):
        zoo.repetitive_truncation(b, 2, 1)


def test_one_point_extension_by_simple():
    b = zoo.hereditary_nakayama(2)
    ext = zoo.one_point_extension(b, mc.simple(b, 0))
    assert ext.n == 3 and ext.dim == b.dim + 2
    assert len(gabriel_quiver(ext).arrows) == 2


def test_reflection_of_a2_reverses_the_arrow():
    b = zoo.hereditary_nakayama(2)       # 1 <- 2
    assert arrows_of(b) == [(2, 1)]
    assert arrows_of(zoo.reflection(b, 0)) == [(1, 2)]


def test_reflection_of_linear_a3():
    b = zoo.hereditary_nakayama(3)
    assert arrows_of(zoo.reflection(b, 0)) == [(1, 3), (3, 2)]


def test_reflection_needs_a_sink():
    with pytest.raises(NotASink):
        zoo.reflection(zoo.hereditary_nakayama(3), 2)
    with pytest.raises(NotTriangular):
        zoo.reflection(zoo.nakayama_selfinjective(2, 2), 0)


@pytest.mark.parametrize("b", [zoo.hereditary_nakayama(3), a3_alternating(), d4_star()],
                         ids=["A3", "A3alt", "D4"])
def test_full_reflection_sequence(b):
    seq = zoo.reflection_sequence(b)
    assert sorted(seq) == list(range(b.n))
    out = zoo.apply_reflections(b, seq)
    assert all(compare_invariants(out, b).values())
    assert elementary_divisors(out) == elementary_divisors(b)


@pytest.mark.parametrize("shape, dim", [((1, 1), 2), ((1, 2), 3), ((2, 1), 6), ((2, 2), 10)])
def test_brauer_star_dimensions(shape, dim):
    a = zoo.brauer_tree_algebra(zoo.BrauerTree.star(*shape))
    assert a.dim == dim
    assert is_selfinjective(a)


def test_brauer_star_is_nakayama():
    # star with e edges and multiplicity m: cycle of length e, Loewy length e*m + 1
    a = zoo.brauer_tree_algebra(zoo.BrauerTree.star(2, 2))
    assert same_up_to_relabelling(a, zoo.nakayama_selfinjective(2, 5))


def test_brauer_line():
    a = zoo.brauer_tree_algebra(zoo.BrauerTree.line(2))
    assert a.n == 2 and is_selfinjective(a)
    assert cartan_matrix(a) == [[2, 1], [1, 2]]


def test_brauer_tree_validation():
    with pytest.raises(ValueError):
        zoo.BrauerTree(((0, 1), (1, 2), (2, 0)), 0)
    with pytest.raises(ValueError):
        zoo.BrauerTree(((0, 1),), 5)
    with pytest.raises(ValueError):
        zoo.BrauerTree.star(2, 0)

"""Modules: Hom spaces, radicals and socles, decomposition, isomorphism."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from arqlab import modcat as mc
from arqlab import zoo
from arqlab.artheory import knit
from arqlab.exactla import QQ, Mat, inverse, is_invertible

from test_algcore import dual_numbers


def random_invertible(rng, n):
    while True:
        m = Mat.from_ints(QQ, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if is_invertible(m):
            return m


def conjugate(m, rng):
    """Same module in a random basis at every vertex."""
    a = m.algebra
    t = [random_invertible(rng, d) if d else Mat.identity(QQ, 0) for d in m.dims]
    ti = [inverse(x) if x.rows else x for x in t]
    mats = [t[a.gen_src(g)] @ m.mats[g] @ ti[a.gen_tgt(g)] for g in range(len(a.gens))]
    return mc.Module(a, m.dims, mats, check=True)


def test_example_projective_structure(example):
    p1 = mc.projective(example, 0)
    assert p1.dim == 4
    assert mc.top_dims(p1) == (1, 0, 0, 0, 0, 0)
    assert mc.socle_dims(p1) == (0, 0, 0, 1, 0, 0)
    assert mc.radical_layers(p1) == [(1, 0, 0, 0, 0, 0), (0, 1, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0)]


def test_hom_against_projective_and_injective_formulas(example, example_quiver):
    # Hom(P(i), M) = M_i and Hom(M, I(j)) = M_j
    for m in example_quiver.nodes[::3]:
        for i in range(example.n):
            assert mc.hom_dim(mc.projective(example, i), m) == m.dims[i]
            assert mc.hom_dim(m, mc.injective(example, i)) == m.dims[i]


def test_hom_simples(example):
    for i in range(example.n):
        for j in range(example.n):
            d = mc.hom_dim(mc.simple(example, i), mc.simple(example, j))
            assert d == (1 if i == j else 0)


def test_hom_p1_p4_image_is_socle(example):
    hs = mc.hom(mc.projective(example, 0), mc.projective(example, 3))
    assert hs.dim == 1
    im, _ = mc.image_of(mc.projective(example, 3), hs.basis[0])
    assert im.dims == (1, 0, 0, 0, 0, 0)


def test_homs_are_intertwiners(example):
    p, q = mc.projective(example, 0), mc.projective(example, 3)
    for f in mc.hom(p, q).basis:
        assert mc.is_intertwiner(p, q, f)


def test_injective_of_linear_a2():
    a = zoo.hereditary_nakayama(2)
    i1 = mc.injective(a, 0)
    assert i1.dims == (1, 1)
    assert mc.is_indecomposable(i1)


def test_dual_numbers_modules():
    a = dual_numbers()
    p = mc.projective(a, 0)
    s = mc.series(p)
    assert s.top.dim == 1 and s.socle.dim == 1 and s.radical.dim == 1
    assert len(mc.end_radical(p)) == 1
    pres = mc.minimal_presentation(mc.simple(a, 0))
    assert pres.p0.vertices == (0,) or list(pres.p0.vertices) == [0]
    assert list(pres.p1.vertices) == [0]


def test_projective_cover_of_projective(example):
    p0, eps = mc.projective_cover(mc.projective(example, 2))
    assert list(p0.vertices) == [2]
    assert mc.is_iso_map(eps)
    pres = mc.minimal_presentation(mc.projective(example, 2))
    assert not list(pres.p1.vertices)


def test_regular_module_decomposes_into_projectives(example):
    parts = mc.decompose(mc.regular_module(example))
    assert len(parts) == 6
    assert all(mult == 1 for _, mult in parts)
    assert all(mc.is_projective(m) for m, _ in parts)


def test_simple_sum_and_iso():
    a = zoo.hereditary_nakayama(2)
    s = mc.direct_sum([mc.simple(a, 0), mc.simple(a, 1)])
    parts = mc.decompose(s)
    assert sorted(m.dims for m, _ in parts) == [(0, 1), (1, 0)]
    ss = mc.direct_sum([mc.simple(a, 0), mc.simple(a, 0)])
    assert not mc.is_indecomposable(ss)
    assert mc.decompose(ss)[0][1] == 2
    assert mc.is_isomorphic(mc.simple(a, 0), mc.simple(a, 0))
    assert not mc.is_isomorphic(mc.simple(a, 0), mc.simple(a, 1))


def test_end_radical_local_fallback(example):
    for i in range(example.n):
        p = mc.projective(example, i)
        assert len(mc.end_radical(p)) == len(mc.local_end_radical(p)) == mc.end(p).dim - 1


def test_nakayama_permutation(example):
    assert mc.nakayama_permutation(example) == [3, 5, 4, 0, 2, 1]
    assert mc.nakayama_permutation(zoo.nakayama_selfinjective(4, 3)) == [2, 3, 0, 1]
    assert mc.nakayama_permutation(zoo.hereditary_nakayama(2)) is None


def test_kernel_cokernel_dimensions(example):
    p, q = mc.projective(example, 0), mc.projective(example, 3)
    f = mc.hom(p, q).basis[0]
    k, _ = mc.kernel_of(p, f)
    c, _ = mc.cokernel_of(q, f)
    assert k.dim + 1 == p.dim
    assert c.dim + 1 == q.dim


@given(st.integers(0, 10 ** 6), st.lists(st.integers(0, 23), min_size=1, max_size=3))
@settings(max_examples=15, deadline=None)
def test_decompose_hidden_direct_sums(seed, picks):
    a = zoo.example_orbit_algebra()
    nodes = knit(a).nodes
    parts = [nodes[k] for k in picks]
    m = conjugate(mc.direct_sum(parts, a), random.Random(seed))
    found = mc.decompose(m)
    assert sum(mult for _, mult in found) == len(parts)
    expected = sorted(p.dims for p in parts)
    got = sorted(x.dims for x, mult in found for _ in range(mult))
    assert got == expected
    for x, _ in found:
        assert any(x.dims == p.dims and mc.is_isomorphic(x, p) for p in parts)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=10, deadline=None)
def test_find_iso_after_base_change(seed):
    a = zoo.example_orbit_algebra()
    m = mc.projective(a, 0)
    n = conjugate(m, random.Random(seed))
    f = mc.find_iso(m, n)
    assert f is not None and mc.is_iso_map(f) and mc.is_intertwiner(m, n, f)


def test_dual_is_involutive(example):
    m = mc.projective(example, 1)
    dd = m.dual().dual()
    assert dd.algebra is example
    assert mc.is_isomorphic(dd, m)

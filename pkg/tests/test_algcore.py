"""Bound quiver algebras, structure constants, ideals and the text format."""
import pytest

from arqlab import zoo
from arqlab.algcore import (Quiver, Relation, SubspaceIdeal, algebra_radical, bound_quiver_algebra,
                            cartan_matrix, corner, gabriel_quiver, ideal_from_vectors,
                            is_selfinjective, presentation_of, quotient, Algebra)
from arqlab.errors import MalformedRelation, NotFiniteDimensional, NotTwoSided, ParseError
from arqlab.exactla import GF, QQ
from arqlab.textformat import parse_algebra, parse_presentation, render_algebra


def dual_numbers(f=QQ):
    q = Quiver(1, (("a", 1, 1),))
    return bound_quiver_algebra(q, [Relation(((1, ("a", "a")),))], f)


def semisimple2():
    return bound_quiver_algebra(Quiver(2, ()), [])


def test_linear_a2_basis():
    a = zoo.hereditary_nakayama(2)
    assert a.dim == 3
    assert a.loewy_length() == 2
    assert cartan_matrix(a) == [[1, 0], [1, 1]]


def test_dual_numbers():
    a = dual_numbers()
    assert a.dim == 2
    assert a.loewy_length() == 2
    assert gabriel_quiver(a).multiplicities() == [[1]]
    assert cartan_matrix(a) == [[2]]
    assert is_selfinjective(a)


def test_semisimple():
    a = semisimple2()
    assert a.dim == 2 and a.loewy_length() == 1
    assert cartan_matrix(a) == [[1, 0], [0, 1]]
    assert is_selfinjective(a)
    rad, _ = algebra_radical(a)
    assert rad.dim == 0


def test_example_dimension_and_cartan(example):
    # enumerating reduced paths by hand: P(1), P(4) have 4 paths, the others 3
    assert example.dim == 20
    assert [sum(r) for r in cartan_matrix(example)] == [4, 3, 3, 4, 3, 3]
    assert example.loewy_length() == 3
    assert example.check_associative()
    assert example.check_idempotents()


def test_example_selfinjective_and_quiver(example):
    assert is_selfinjective(example)
    q = gabriel_quiver(example)
    expected = [[0] * 6 for _ in range(6)]
    for s, t in [(1, 2), (1, 3), (2, 4), (3, 4), (4, 6), (4, 5), (6, 1), (5, 1)]:
        expected[s - 1][t - 1] = 1
    assert q.multiplicities() == expected


def test_nakayama_cartan_rows_shift():
    a = zoo.nakayama_selfinjective(3, 2)
    c = cartan_matrix(a)
    assert c == [[1, 1, 0], [0, 1, 1], [1, 0, 1]]


def test_linear_a2_not_selfinjective():
    assert not is_selfinjective(zoo.hereditary_nakayama(2))


def test_not_finite_dimensional():
    q = Quiver(1, (("a", 1, 1),))
    with pytest.raises(NotFiniteDimensional):
        bound_quiver_algebra(q, [], QQ, length_bound=4)


def test_malformed_relation():
    q = Quiver(2, (("a", 1, 2), ("b", 1, 2)))
    with pytest.raises(MalformedRelation):
        bound_quiver_algebra(q, [Relation(((1, ("a", "b")),))])


def test_radical_trace_form_agrees(example):
    rad, series = algebra_radical(example)
    assert rad.dim == example.dim - example.n
    assert [s.dim for s in series] == [20, 14, 6, 0]


def test_opposite_reverses_quiver(example):
    op = example.opposite()
    assert op.dim == example.dim
    assert gabriel_quiver(op).multiplicities() == gabriel_quiver(example).reversed().multiplicities()
    assert op.opposite() is example


def test_quotient_and_ideal(example):
    # the ideal generated by the length-two path al1*al2 is the socle of P(1)
    q = example.presentation[0]
    vec = None
    for b in range(example.dim):
        if len(example.words[b]) == 2 and example.src[b] == 0:
            vec = {b: QQ.one}
    ideal = ideal_from_vectors(example, [vec])
    assert ideal.dim == 1
    b, proj = quotient(example, ideal)
    assert b.dim == 19
    assert proj.shape == (20, 19)
    with pytest.raises(NotTwoSided):
        SubspaceIdeal(example, [{example.idem[0]: QQ.one}], two_sided=True)


def test_quotient_by_zero_and_radical():
    a = dual_numbers()
    same, _ = quotient(a, SubspaceIdeal(a, []))
    assert same.dim == 2
    rad, _ = algebra_radical(a)
    field, _ = quotient(a, rad)
    assert field.dim == 1


def test_corner():
    a = semisimple2()
    assert corner(a, [0]).dim == 1
    ex = zoo.example_orbit_algebra()
    c = corner(ex, [0, 3])
    cm = cartan_matrix(ex)
    assert c.dim == cm[0][0] + cm[0][3] + cm[3][0] + cm[3][3]


def test_from_table_roundtrip(example):
    b = Algebra.from_table(example.field, example.dim, example.table,
                           [{e: QQ.one} for e in example.idem])
    assert b.dim == example.dim
    assert cartan_matrix(b) == cartan_matrix(example)
    assert gabriel_quiver(b).multiplicities() == gabriel_quiver(example).multiplicities()


def test_presentation_recovery_on_trivial_extension():
    t = zoo.trivial_extension_r(zoo.hereditary_nakayama(2), 2)
    q, rels = presentation_of(t)
    back = bound_quiver_algebra(q, rels, t.field)
    assert back.dim == t.dim
    assert cartan_matrix(back) == cartan_matrix(t)


def test_text_roundtrip(example_path):
    text = open(example_path).read()
    a = parse_algebra(text)
    assert a.dim == 20
    out = render_algebra(a)
    b = parse_algebra(out)
    assert render_algebra(b) == out


def test_text_roundtrip_gf():
    a = zoo.nakayama_selfinjective(3, 2, GF(7))
    text = render_algebra(a)
    assert "field GF(7)" in text
    assert parse_algebra(text).field == GF(7)


def test_make_linear_parses_without_relations():
    text = render_algebra(zoo.hereditary_nakayama(4))
    assert parse_algebra(text).dim == 10


@pytest.mark.parametrize("text", [
    "vertices 2\n",
    "arqlab v1\narrow a 1 2\n",
    "arqlab v1\nvertices 2\narrow a 1 3\n",
    "arqlab v1\nvertices 2\narrow a 1 2\nrelation a*c\n",
    "arqlab v1\nvertices 2\nfoo bar\n",
    "arqlab v1\nfield GF(4)\nvertices 1\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_presentation(text)


def test_parse_coefficients():
    text = "arqlab v1\nvertices 2\narrow a 1 2\narrow b 1 2\narrow c 2 2\nrelation a*c - 1/2*b*c\nrelation c*c\n"
    _, _, rels = parse_presentation(text)
    assert rels[0].terms[1][0] == -QQ(1) / 2

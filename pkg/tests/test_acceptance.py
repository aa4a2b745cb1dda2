"""Acceptance criteria 1-7, one result line per criterion."""
import pytest

from arqlab import analysis as an
from arqlab import artheory as ar
from arqlab import modcat as mc
from arqlab import zoo

from conftest import ACCEPTANCE, same_up_to_relabelling, trivext_bases


def record(k, ok, note=""):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}" + (f"  {note}" if note else "")
    ACCEPTANCE[k] = line
    print(line)


def failed(clauses):
    return [name for name, ok in clauses if not ok]


def test_criterion_1_example(example, example_quiver):
    g = example_quiver
    _, orbits = ar.stable_part(g)
    slices = an.stable_slices(g)
    w = an.short_cycles(example, g).witness
    clauses = [
        ("24 indecomposables", len(g.nodes) == 24),
        ("6 projective-injective", sum(g.projective) == 6 and g.projective == g.injective),
        ("18 stable in 3 orbits of 6", sorted(len(o) for o in orbits) == [6, 6, 6]),
        ("type A3", str(ar.dynkin_type_of(g)) == "A3"),
        ("all slices double tau-rigid", all(an.slice_props(g, s)[1] for s in slices)),
        ("witness (P(1), P(4))", (w["x"], w["y"]) == ("P(1)", "P(4)")),
        ("Im f = S(1)", w["f_image_is_socle"] and w["f_image_dims"] == [1, 0, 0, 0, 0, 0]),
        ("Im g = S(4)", w["g_image_is_socle"] and w["g_image_dims"] == [0, 0, 0, 1, 0, 0]),
    ]
    bad = failed(clauses)
    dim_ok = example.dim == 24
    note = "" if dim_ok else f"dim A = {example.dim}, expected 24 (see decisions ledger)"
    if not bad:
        note += "; every other clause holds" if note else ""
    else:
        note += f"; also failing: {', '.join(bad)}"
    record(1, dim_ok and not bad, note)
    assert not bad


@pytest.mark.xfail(strict=True, reason="reduced paths of the Example span 20 dimensions, not 24")
def test_criterion_1_dimension(example):
    assert example.dim == 24


def test_criterion_2_nakayama_sweep():
    wrong = []
    for m in range(1, 9):
        for ell in range(2, 9):
            g = ar.knit(zoo.nakayama_selfinjective(m, ell))
            free = not an.short_cycle_pairs(g, an.HomTable(g))
            if free != (m >= 2 * ell - 1):
                wrong.append((m, ell))
    record(2, not wrong, "56 instances" + (f", wrong: {wrong}" if wrong else ""))
    assert not wrong


def test_criterion_3_trivial_extensions():
    wrong = []
    for name, b in trivext_bases().items():
        for r in (1, 2, 3, 4):
            if an.has_short_cycle(zoo.trivial_extension_r(b, r)) != (r <= 2):
                wrong.append(f"T({name})^({r})")
    record(3, not wrong, "16 instances" + (f", wrong: {wrong}" if wrong else ""))
    assert not wrong


REQUIRED = ["D1", "D2", "r_A(I)=eI", "H hereditary", "A[I] invariants equal A",
            "e_i != e_nu(i) on e", "phi strictly positive"]


def certificate_clauses(cert, htype):
    names = {c["name"] for c in cert.checks}
    deforming = cert.extra.get("deforming", {})
    return [
        ("short-cycle-free", cert.verdict == an.SHORT_CYCLE_FREE),
        ("all checks pass", cert.all_passed),
        ("double tau-rigid slice", "double tau-rigid" in names),
        ("D1/D2 and r_A(I)=eI", all(deforming.get(k) for k in ("D1", "D2", "r_A(I)=eI"))),
        ("clauses present", all(k in names for k in REQUIRED[2:])),
        (f"H of type {htype}", cert.hereditary_type == htype),
    ]


def test_criterion_4_theorem_pipeline():
    runs = [("T(A3)^(3)", zoo.trivial_extension_r(zoo.hereditary_nakayama(3), 3), "A3"),
            ("N(6,3)", zoo.nakayama_selfinjective(6, 3), "A2")]
    bad = []
    for label, a, htype in runs:
        cert = an.theorem_check(a)
        bad += [f"{label}: {n}" for n in failed(certificate_clauses(cert, htype))]
        # both are Nakayama, so the radical-series slice stands in for a semiregular one
        bad += [f"{label}: radical-series route"] if cert.extra.get("pipeline") != "radical series" else []
    # the semiregular slice route on algebras that admit one
    for name, htype in (("A3alt", "A3"), ("D4", "D4")):
        cert = an.theorem_check(zoo.trivial_extension_r(trivext_bases()[name], 3))
        names = {c["name"] for c in cert.checks}
        bad += [f"T({name})^(3): {n}" for n in failed(certificate_clauses(cert, htype))]
        bad += [f"T({name})^(3): semiregular"] if "semiregular" not in names else []
    note = ("semiregular slice clause replaced by the radical-series slice for these Nakayama "
            "algebras, semiregular route checked on T(A3alt)^(3) and T(D4)^(3) (see decisions ledger)")
    record(4, not bad, note + (f"; failing: {bad}" if bad else ""))
    assert not bad


def zoo_instances():
    yield "Example", zoo.example_orbit_algebra()
    for m in range(1, 9):
        for ell in range(2, 9):
            yield f"N({m},{ell})", zoo.nakayama_selfinjective(m, ell)
    for name, b in trivext_bases().items():
        for r in (1, 2, 3, 4):
            yield f"T({name})^({r})", zoo.trivial_extension_r(b, r)


def test_criterion_5_property_suites():
    bad = []
    count = 0
    for label, a in zoo_instances():
        count += 1
        props = an.property_checks(a)
        bad += [f"{label}: {k}" for k, ok in props.items() if not ok]
    record(5, not bad, f"{count} instances" + (f", violated: {bad}" if bad else ""))
    assert not bad


def test_criterion_6_brauer_star():
    a = zoo.brauer_tree_algebra(zoo.BrauerTree.star(2, 2))
    g = ar.knit(a)
    cert = an.short_cycles(a, g)
    w = cert.witness
    proj = (cert.verdict == an.HAS_SHORT_CYCLE
            and g.projective[w["x_node"]] and g.projective[w["y_node"]])
    same = same_up_to_relabelling(a, zoo.nakayama_selfinjective(2, 5))
    clauses = [("short cycle of projectives", proj), ("invariants match N(2,5)", same)]
    bad = failed(clauses)
    record(6, not bad, f"witness {w['x']} -> {w['y']} -> {w['x']}" if w else "no witness")
    assert not bad


def test_criterion_7_excluded():
    ACCEPTANCE[7] = ("criterion 7: EXCLUDED  classification claims are not reproduced; "
                     "the certificate chain of criterion 4 stands in")
    pytest.skip("classification claims are out of scope")

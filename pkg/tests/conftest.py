import os

import pytest

from arqlab import zoo
from arqlab.algcore import Quiver

DATA = os.path.join(os.path.dirname(__file__), "data")

# criterion number -> result line, filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture(scope="session")
def example():
    return zoo.example_orbit_algebra()


@pytest.fixture(scope="session")
def example_quiver(example):
    from arqlab.artheory import knit
    return knit(example)


@pytest.fixture(scope="session")
def example_path():
    return os.path.join(DATA, "example.alg")


def a3_alternating():
    return zoo.path_algebra(Quiver(3, (("a", 1, 2), ("b", 3, 2))))


def d4_star():
    return zoo.path_algebra(Quiver(4, (("a", 2, 1), ("b", 3, 1), ("c", 4, 1))))


def trivext_bases():
    return {
        "A2": zoo.hereditary_nakayama(2),
        "A3": zoo.hereditary_nakayama(3),
        "A3alt": a3_alternating(),
        "D4": d4_star(),
    }


def same_up_to_relabelling(a, b):
    """Invariants of a and b agree after some renumbering of the vertices."""
    import itertools
    from arqlab.analysis import algebra_invariants
    ia, ib = algebra_invariants(a), algebra_invariants(b)
    if a.n != b.n or ia["dim"] != ib["dim"] or ia["selfinjective"] != ib["selfinjective"]:
        return False
    n = a.n
    for p in itertools.permutations(range(n)):
        # vertex i of a corresponds to vertex p[i] of b
        if any(ia["quiver"][i][j] != ib["quiver"][p[i]][p[j]] for i in range(n) for j in range(n)):
            continue
        if any(ia["cartan"][i][j] != ib["cartan"][p[i]][p[j]] for i in range(n) for j in range(n)):
            continue
        if any(ia["socle_dims"][i][j] != ib["socle_dims"][p[i]][p[j]] for i in range(n) for j in range(n)):
            continue
        nu_a, nu_b = ia["nakayama_permutation"], ib["nakayama_permutation"]
        if nu_a is not None and any(p[nu_a[i]] != nu_b[p[i]] for i in range(n)):
            continue
        return True
    return False

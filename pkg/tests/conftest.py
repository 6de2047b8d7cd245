import re

import pytest

from genus_atlas.catalog import Catalog
from genus_atlas.group import generate
from genus_atlas.perm import Permutation


def perm(text, degree):
    return Permutation.parse(text, degree)


def regular_cyclic(n):
    return generate([Permutation(tuple(list(range(2, n + 1)) + [1]))]) if n > 1 else generate(
        [Permutation.identity(1)])


def natural_dihedral(n):
    """Symmetries of a regular n-gon (order 2n) acting on its vertices.

    For n <= 2 the vertex action is not faithful, so a regular representation
    of C2 / C2 x C2 is used instead.
    """
    if n == 1:
        return generate([perm("(1,2)", 2)])
    if n == 2:
        return generate([perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])
    rot = Permutation(tuple(list(range(2, n + 1)) + [1]))
    refl = Permutation(tuple([1] + list(range(n, 1, -1))))
    return generate([rot, refl])


@pytest.fixture(scope="session")
def Q8():
    return generate([perm("(1,2,3,4)(5,6,7,8)", 8), perm("(1,5,3,7)(2,8,4,6)", 8)])


@pytest.fixture(scope="session")
def S3():
    return generate([perm("(1,2)", 3), perm("(1,2,3)", 3)])


@pytest.fixture(scope="session")
def S4():
    return generate([perm("(1,2)", 4), perm("(1,2,3,4)", 4)])


@pytest.fixture(scope="session")
def A4():
    return generate([perm("(1,2,3)", 4), perm("(2,3,4)", 4)])


@pytest.fixture(scope="session")
def A5():
    return generate([perm("(1,2,3)", 5), perm("(1,2,3,4,5)", 5)])


@pytest.fixture(scope="session")
def klein():
    return generate([perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])


@pytest.fixture(scope="session")
def C2cubed():
    return generate([perm("(1,2)", 6), perm("(3,4)", 6), perm("(5,6)", 6)])


@pytest.fixture(scope="session")
def catalog():
    return Catalog.bundled()


@pytest.fixture(scope="session")
def extended_catalog():
    return Catalog.bundled(extended=True)


# --- one PASS/FAIL line per acceptance criterion ------------------------------

_criteria: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if not m or (report.when != "call" and report.passed):
        return
    n = m.group(1)
    _criteria[n] = _criteria.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria, key=int):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _criteria[n] else 'FAIL'}")

from __future__ import annotations

import pytest

from zcyclic import kernel
from zcyclic.kernel import FiniteGroup, perm_from_cycles
from zcyclic.zgen import ZParams, realize

ACCEPTANCE_LINES: list[str] = []


def perm_group(cycle_lists, degree, name="G") -> FiniteGroup:
    gens = [perm_from_cycles(cycles, degree) for cycles in cycle_lists]
    return kernel.from_permutation_generators(gens, name)


def small_corpus() -> list[FiniteGroup]:
    """Mixed small groups covering abelian, nilpotent, Frobenius and nonsolvable cases."""
    c = kernel.cyclic
    return [
        c(2), c(6), c(8), c(12),
        kernel.direct_product(c(2), c(2), "C2xC2"),
        kernel.direct_product(c(2), c(4), "C2xC4"),
        kernel.symmetric(3), kernel.dihedral(4), kernel.dihedral(6),
        kernel.dicyclic(2), kernel.dicyclic(3), kernel.dicyclic(4),
        kernel.direct_product(kernel.dicyclic(2), c(3), "Q8xC3"),
        kernel.alternating(4), kernel.symmetric(4), kernel.frobenius_20(),
        realize(ZParams(7, 3, 2)), realize(ZParams(5, 4, 2)), realize(ZParams(3, 4, 2)),
        realize(ZParams(15, 4, 2)),
    ]


@pytest.fixture(scope="session")
def corpus() -> list[FiniteGroup]:
    return small_corpus()


@pytest.fixture(scope="session")
def S3() -> FiniteGroup:
    return perm_group([[(0, 1)], [(0, 1, 2)]], 3, "S3")


@pytest.fixture(scope="session")
def Q8() -> FiniteGroup:
    return kernel.dicyclic(2)


@pytest.fixture(scope="session")
def C6() -> FiniteGroup:
    return kernel.cyclic(6)


@pytest.fixture(scope="session")
def A5() -> FiniteGroup:
    return kernel.alternating(5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

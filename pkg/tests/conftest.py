import pytest

from tetragg import build_edge_ring, build_icosahedral, twist_edge_ring, twist_icosahedral
from tetragg.verify import canonical, five_bc, three_bc


@pytest.fixture(scope="session")
def rings():
    return {n: build_edge_ring(n) for n in (3, 4, 5)}


@pytest.fixture(scope="session")
def twisted_rings(rings):
    return {n: twist_edge_ring(r) for n, r in rings.items()}


@pytest.fixture(scope="session")
def ico():
    return build_icosahedral()


@pytest.fixture(scope="session")
def twisted_ico(ico):
    return twist_icosahedral(ico)


@pytest.fixture(scope="session")
def helix5():
    return five_bc(12)


@pytest.fixture(scope="session")
def helix3():
    return three_bc(12)


@pytest.fixture(scope="session")
def bc25():
    return canonical(25)


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.RESULTS:
        terminalreporter.write_line(line)

import pytest

from fibrcheck.data import load_example, pretzel_witness
from fibrcheck.groups import GroupHom, TargetGroup, enumerate_epimorphisms
from fibrcheck.words import abelianization_phi, surgery_presentation


@pytest.fixture(scope="session")
def pretzel():
    return load_example("pretzel_5_-3_5")


@pytest.fixture(scope="session")
def trefoil():
    return load_example("trefoil")


@pytest.fixture(scope="session")
def figure_eight():
    return load_example("figure_eight")


@pytest.fixture(scope="session")
def unknot():
    return load_example("unknot")


@pytest.fixture(scope="session")
def pretzel_surgery(pretzel):
    return surgery_presentation(pretzel)


@pytest.fixture(scope="session")
def pretzel_phi(pretzel_surgery):
    return abelianization_phi(pretzel_surgery)


@pytest.fixture(scope="session")
def witness_hom():
    return GroupHom(TargetGroup("A", 5), tuple(pretzel_witness()), True)


@pytest.fixture(scope="session")
def pretzel_a5_homs(pretzel_surgery):
    return enumerate_epimorphisms(pretzel_surgery, TargetGroup("A", 5))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)

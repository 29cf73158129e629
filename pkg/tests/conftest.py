from __future__ import annotations

from pathlib import Path

import pytest

from wilsonsg.functions import SFunc, StructureInstance
from wilsonsg.semigroup import cyclic_group, validate

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def z3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def mult01():
    """({0,1}, multiplication)."""
    return validate([[0, 0], [0, 1]])


@pytest.fixture(scope="session")
def trivial():
    return validate([[0]])


@pytest.fixture(scope="session")
def z3_neg(z3):
    """Z/3 with sigma = -id, mu = 1."""
    return StructureInstance(z3, (0, 2, 1))


@pytest.fixture(scope="session")
def z3_chars(z3_neg):
    """chi_k(x) = omega^(k x) with omega = zeta_6^2, for k = 0, 1, 2."""
    fld = z3_neg.field
    w = fld.z_power(2)
    return [SFunc([w ** (k * x) for x in range(3)], fld) for k in range(3)]


@pytest.fixture(scope="session")
def mult01_ctx(mult01):
    return StructureInstance(mult01)


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if getattr(rep, "when", None) != "call":
                continue
            for name, value in getattr(rep, "user_properties", []):
                if name == "criterion":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grassindex.monomials import Monomial  # noqa: E402
from grassindex.wreath import Od, SqC  # noqa: E402

import oracles  # noqa: E402

ACCEPTANCE = {}
CRITERIA = [
    "1 theorem reproduction n=1..8",
    "2 c^(2n) in kernel ideal, n<=8",
    "3 gap case n=12 within [7, 23]",
    "4 worked relations replicate",
    "5 divisibility monotonicity n<=12",
    "6 streaming solver agrees with dense oracle",
    "7 algebra property suite",
    "8 numeric suite n=4",
]


def record(criterion: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE[criterion] = (passed, detail)


def to_tensor(cls):
    t = oracles.Tensor()
    for e in cls.terms:
        if isinstance(e, SqC):
            t = t + oracles.sqc(e.x.exponents, e.j)
        else:
            t = t + oracles.od(e.x.exponents, e.y.exponents)
    return t


def from_exponents(e) -> Monomial:
    return Monomial(tuple(e))


@pytest.fixture
def acceptance_record():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in CRITERIA:
        passed, detail = ACCEPTANCE.get(name, (False, "not run"))
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")

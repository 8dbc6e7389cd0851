from pathlib import Path

import numpy as np
import pytest

from gencheck.codes import GroupTable, build_from_descriptor, build_quadripartite_qt
from gencheck.gf2 import BinaryMatrix

ROOT = Path(__file__).resolve().parents[1]
CODES = ROOT / "configs" / "codes"


def random_matrix(rng, rows, cols, p=0.5) -> BinaryMatrix:
    return BinaryMatrix.from_dense((rng.random((rows, cols)) < p).astype(np.uint8))


@pytest.fixture(scope="session")
def z5_code():
    return build_from_descriptor(CODES / "qt_z5_toy.json")


@pytest.fixture(scope="session")
def d10_code():
    return build_from_descriptor(CODES / "qt_d10_180.json")


@pytest.fixture(scope="session")
def z13_code():
    return build_from_descriptor(CODES / "qt_z13_117.json")


def toy_qt_codes():
    """Small quadripartite codes used across census tests."""
    rep2 = BinaryMatrix.from_strings(["11"])
    rep3 = BinaryMatrix.from_strings(["110", "011"])
    spc3 = BinaryMatrix.from_strings(["111"])
    cases = [
        (GroupTable.cyclic(2), [0, 1], [0, 1], rep2, rep2),
        (GroupTable.cyclic(5), [1, 4], [2, 3], rep2, rep2),
        (GroupTable.cyclic(5), [1, 4], [1, 4], rep2, rep2),
        (GroupTable.cyclic(6), [1, 5], [2, 4], rep2, rep2),
        (GroupTable.cyclic(7), [1, 6], [2, 5], rep2, rep2),
        (GroupTable.cyclic(8), [1, 7], [3, 5], rep2, rep2),
        (GroupTable.cyclic(13), [0, 1, 12], [0, 3, 10], rep3, spc3),
        (GroupTable.cyclic(7), [0, 1, 6], [0, 2, 5], spc3, rep3),
        (GroupTable.dihedral(3), [1, 2, 3], [3, 4, 5], rep3, spc3),
        (GroupTable.dihedral(4), [1, 3, 4], [4, 5, 6], spc3, rep3),
    ]
    return [build_quadripartite_qt(*c) for c in cases]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

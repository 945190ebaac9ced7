import pathlib

import pytest

import bcopt as B

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fig1():
    return B.load_instance(str(FIXTURES / "fig1.json"))


@pytest.fixture(scope="session")
def fig2():
    return B.load_instance(str(FIXTURES / "fig2_shape.json"))


@pytest.fixture(scope="session")
def corpus():
    # instance objects are shared across tests so per-instance caches
    # (brute-force optimum, two-approximation) pay off suite-wide
    out = [("bm", i, B.corpus_bm(i)) for i in range(300)]
    out += [("bi", i, B.corpus_bi(i)) for i in range(150)]
    return out

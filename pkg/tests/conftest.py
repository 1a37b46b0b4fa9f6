import json
from pathlib import Path

import pytest

from confalg import AlgebraConfig, FreeConformal, PseudoAlgebra

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def alg_ab():
    return AlgebraConfig({"a": 2, "b": 3})


@pytest.fixture(scope="session")
def fc_ab(alg_ab):
    return FreeConformal(alg_ab)


@pytest.fixture(scope="session")
def alg_small():
    return AlgebraConfig({"a": 1, "b": 2})


@pytest.fixture(scope="session")
def fc_small(alg_small):
    return FreeConformal(alg_small)


@pytest.fixture(scope="session")
def pa_small(alg_small):
    return PseudoAlgebra(alg_small)


@pytest.fixture(scope="session")
def corpus():
    with open(DATA / "corpus.json", encoding="utf-8") as fh:
        return json.load(fh)

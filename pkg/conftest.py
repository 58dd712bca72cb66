import os
import sys
from pathlib import Path

import hypothesis
import numpy as np
import pytest

# Добавляем текущую директорию в путь
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from finite_field import field_create
from models import CodeStorage
from stabilizer_codes import build_code, from_cyclic, search_codes

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

SPECS = Path(__file__).parent / "specs"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def gf4():
    return field_create(2, 2)


@pytest.fixture(scope="session")
def gf16():
    return field_create(2, 4)


@pytest.fixture(scope="session")
def five_qubit():
    """[[5,1,3]]_2 from the Hermitian self-orthogonal [5,2]_4 code"""
    return build_code(CodeStorage.load_spec(str(SPECS / "five_qubit.json")))


@pytest.fixture(scope="session")
def five_qubit_big_phi():
    return build_code(CodeStorage.load_spec(str(SPECS / "five_qubit_big_phi.json")))


@pytest.fixture(scope="session")
def five_qubit_symplectic():
    return build_code(CodeStorage.load_spec(str(SPECS / "five_qubit_symplectic.json")))


@pytest.fixture(scope="session")
def five_qubit_cyclic():
    return build_code(CodeStorage.load_spec(str(SPECS / "five_qubit_cyclic.json")))


@pytest.fixture(scope="session")
def punctured_bch(gf4):
    """[[14,4,>=4]]_2 from the punctured [15,9] BCH code with zeros 1..4"""
    return from_cyclic(gf4, 15, [1, 2, 3, 4], puncture_at=1)


@pytest.fixture(scope="session")
def quartic_code():
    """Best (p, m) = (2, 2) code of length 4 found by the seeded search"""
    codes = search_codes(2, 2, 4, 0, budget=300, seed=7)
    assert codes, "search found no Hermitian self-dual [4,2]_16 code"
    return codes[0]

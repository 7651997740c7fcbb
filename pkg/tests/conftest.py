from pathlib import Path

import pytest

from ontosearch.loader import load_kb

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
CROPS_DIR = FIXTURES / "crops"


@pytest.fixture(scope="session")
def loaded():
    return load_kb(CROPS_DIR)


@pytest.fixture(scope="session")
def kb(loaded):
    return loaded.kb


@pytest.fixture(scope="session")
def class_table(loaded):
    return loaded.class_table


@pytest.fixture(scope="session")
def instance_table(loaded):
    return loaded.instance_table

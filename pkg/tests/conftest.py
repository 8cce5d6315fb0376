import json
from pathlib import Path

import pytest

from prudentia import serialize as ser

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str):
    with open(FIXTURES / f"{name}.json", encoding="utf-8") as fh:
        obj = json.load(fh)
    if "dates" in obj:
        return ser.load_model(obj)
    if "counts" in obj:
        return ser.load_database(obj)
    return ser.load_matrix(obj)


@pytest.fixture
def fixture():
    return load_fixture

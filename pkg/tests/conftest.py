import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def output_schema():
    with open(REPO_ROOT / "schema" / "output.json", encoding="utf-8") as handle:
        return json.load(handle)

from __future__ import annotations

from pathlib import Path

import pytest

from wallcross import load_registry

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def registry():
    return load_registry()


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR

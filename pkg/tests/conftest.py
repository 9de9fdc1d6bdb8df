import shutil
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
sys.path.insert(0, str(TESTS_DIR))

FIXTURE_DATASET = TESTS_DIR / "fixtures" / "dataset"
FIXTURE_MASKS = TESTS_DIR / "fixtures" / "masks"
GOLDEN_DIR = TESTS_DIR / "golden"


@pytest.fixture(scope="session")
def fixture_dataset() -> Path:
    return FIXTURE_DATASET


@pytest.fixture(scope="session")
def fixture_masks() -> Path:
    return FIXTURE_MASKS


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture()
def scratch_dataset(tmp_path) -> Path:
    """Writable copy of the bundled dataset (service saves into it)."""
    dst = tmp_path / "dataset"
    shutil.copytree(FIXTURE_DATASET, dst)
    return dst

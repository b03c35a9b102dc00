import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bmvt import build_standard


@pytest.fixture(scope="session")
def one_1e4():
    return build_standard("one", 10**4)


@pytest.fixture(scope="session")
def log_1e4():
    return build_standard("log", 10**4)


@pytest.fixture(scope="session")
def mobius_1e4():
    return build_standard("mobius", 10**4)


@pytest.fixture(scope="session")
def vm_1e6():
    return build_standard("von_mangoldt", 10**6)


@pytest.fixture(scope="session")
def lam2_1e6():
    return build_standard("lambda_k", 10**6, k=2)


@pytest.fixture()
def cache_dir(tmp_path):
    d = tmp_path / "cache"
    d.mkdir()
    return d

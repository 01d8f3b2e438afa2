import os
from pathlib import Path

import pytest

from ohnolab.mzv import CACHE_ENV, ValueCache

DEFAULT_CACHE = Path(__file__).resolve().parents[1] / ".cache" / "values.txt"


@pytest.fixture(scope="session")
def value_cache():
    """Persistent value cache shared by the numeric tests; only speeds them up."""
    path = Path(os.environ.get(CACHE_ENV) or DEFAULT_CACHE)
    path.parent.mkdir(parents=True, exist_ok=True)
    cache = ValueCache(path)
    yield cache
    cache.flush()

"""Shared test configuration: one echelon cache per session."""

import pytest


@pytest.fixture(scope="session", autouse=True)
def _session_cache(tmp_path_factory):
    """Point the echelon cache at a session directory so repeated suites
    and acceptance criteria share builds instead of recomputing them."""
    import os

    cache = tmp_path_factory.mktemp("ospan-cache")
    old = os.environ.get("ORBIFOCK_CACHE_DIR")
    os.environ["ORBIFOCK_CACHE_DIR"] = str(cache)
    yield str(cache)
    if old is None:
        os.environ.pop("ORBIFOCK_CACHE_DIR", None)
    else:
        os.environ["ORBIFOCK_CACHE_DIR"] = old

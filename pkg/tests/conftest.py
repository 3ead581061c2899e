"""Shared fixtures.  The order-512 census takes half a minute to grow,
so it is cached on disk between runs; delete tests/_cache to rebuild."""

import pathlib

import pytest

from artin44.tree import PoolFormatError, census, load, save

CACHE = pathlib.Path(__file__).parent / "_cache"


@pytest.fixture(scope="session")
def census9():
    CACHE.mkdir(exist_ok=True)
    path = CACHE / "census9.pool"
    if path.exists():
        try:
            return load(path)
        except PoolFormatError:
            path.unlink()
    pool = census(max_order_exp=9)
    save(pool, path)
    return pool

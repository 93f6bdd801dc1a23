import pytest

from orbitcodes import builtin_instance, run_construction


@pytest.fixture(scope="session")
def built():
    """Construction results for every built-in instance the suite uses,
    computed once."""
    cache = {}
    for family, q in [("fermat", 3), ("fermat", 4), ("projline", 5),
                      ("projline", 7), ("projline", 9), ("bf", 2)]:
        inst = builtin_instance(family, q)
        cache[(family, q)] = run_construction(inst)
    return cache

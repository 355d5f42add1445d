import csv
import pathlib

import pytest

from ksecretary import PolicyKind, oracle_table, validate_params

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURE_TABLE = REPO_ROOT / "fixtures" / "appendix_table.csv"


def iter_single_ref_configs(n_max):
    """All valid (n, k, t, r) with n <= n_max."""
    for n in range(2, n_max + 1):
        for k in range(1, (n - 1) // 2 + 1):
            for t in range(k + 1, n - k + 1):
                for r in range(1, k + 1):
                    yield n, k, t, r


def iter_optimistic_k2_configs(n_max):
    """All valid (n, t) for budget-2 optimistic runs with n <= n_max."""
    for n in range(5, n_max + 1):
        for t in range(3, n - 1):
            yield n, t


@pytest.fixture(scope="session")
def golden_table():
    rows = {}
    with open(FIXTURE_TABLE) as fh:
        for row in csv.DictReader(fh):
            rows[int(row["k"])] = (int(row["r"]), float(row["c"]), float(row["cr"]))
    assert len(rows) == 100
    return rows


@pytest.fixture(scope="session")
def oracle_cache():
    """Memoized oracle tables; several test modules share configurations."""
    cache = {}

    def get(n, k, t, r=None, kind=PolicyKind.SINGLE_REF):
        key = (n, k, t, r, kind)
        if key not in cache:
            cache[key] = oracle_table(validate_params(n, k, t, r), kind)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def computed_table():
    """The optimizer's full 100-row table (shared across acceptance tests)."""
    from ksecretary import build_table

    return build_table(100)

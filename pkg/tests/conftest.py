from functools import lru_cache

import pytest

from cosetsemi.catalog import default_catalog
from cosetsemi.cosets import FULL, NONTRIVIAL, build_coset_semigroup
from cosetsemi.group import build_group
from cosetsemi.lattice import enumerate_subgroups


@lru_cache(maxsize=None)
def group(spec):
    """Catalog name (e.g. SD16) or a DSL spec."""
    cat = catalog()
    if spec in cat.names():
        return cat.get(spec).build()
    return build_group(spec, name=spec)


@lru_cache(maxsize=None)
def lattice(spec):
    return enumerate_subgroups(group(spec))


@lru_cache(maxsize=None)
def k1(spec):
    return build_coset_semigroup(group(spec), NONTRIVIAL, lattice(spec))


@lru_cache(maxsize=None)
def k(spec):
    return build_coset_semigroup(group(spec), FULL, lattice(spec))


@lru_cache(maxsize=None)
def catalog(max_order=24):
    return default_catalog(max_order)


SMALL = ["C4", "C2xC2", "C6", "S3", "D8", "Q8", "C3xC3", "C2xC2xC2", "C12", "A4"]


@pytest.fixture(params=SMALL)
def small_spec(request):
    return request.param


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2}: {'PASS' if ok else 'FAIL'}  {detail}")

import pytest
from hypothesis import settings

from isaacs import census
from isaacs.constructions import heisenberg

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# results recorded by test_acceptance.py, printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def prime_census():
    """Census records for e = 2, 3, 5, 7 (computed once per session)."""
    cache = {}

    def get(p):
        if p not in cache:
            cache[p] = census.classify_e_prime(p, strict=False)
        return cache[p]

    return get


@pytest.fixture(scope="session")
def census4():
    return census.classify_p_closed(4, [heisenberg(4)], shapes=("cyclic",))


@pytest.fixture(scope="session")
def census9():
    return census.classify_e9()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {msg}")

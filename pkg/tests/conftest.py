import pytest

import lmc.liealg as liealg


@pytest.fixture(autouse=True, scope="session")
def _invariant_checks():
    # Validate the zero-constant and membership invariants on every
    # constructed element for the whole test run.
    liealg.CHECK_INVARIANTS = True
    yield
    liealg.CHECK_INVARIANTS = False

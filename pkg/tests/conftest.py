import mpmath as mp
import pytest


@pytest.fixture(autouse=True)
def _mpmath_precision():
    # mpmath precision is process-global; pin it per test so module import
    # order cannot change oracle accuracy
    with mp.workdps(40):
        yield

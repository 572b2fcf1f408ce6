import pytest

from dunkldyn.numeric import set_precision


@pytest.fixture(autouse=True)
def fixed_precision():
    """Every test runs at the package default precision unless it says otherwise."""
    set_precision(256)
    yield
    set_precision(256)

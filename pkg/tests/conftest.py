import pytest

from ordtypes.engine import Engine


@pytest.fixture(scope="session")
def eng() -> Engine:
    """One shared engine; its memo table only caches sound answers."""
    return Engine()

import pytest

from dwtqft import corpus


@pytest.fixture(scope="session")
def manifolds():
    """One shared instance per corpus entry so coboundary/SNF caches persist
    across the whole test session."""
    return {name: corpus.build(name) for name in corpus.BUILDERS}

import pytest

from app.monoid import VerificationParams, make_instance, reset_instances


@pytest.fixture(autouse=True)
def clean_instance_cache():
    """Drop shared instances between tests."""
    reset_instances()
    yield
    reset_instances()


@pytest.fixture
def params():
    """Small bounds that keep every check fast."""
    return VerificationParams(
        window=6, degree=3, max_factors=3, depth=24, level=8, seed=0, qmax=10_000
    )


@pytest.fixture
def free():
    return make_instance("free", gens=2)


@pytest.fixture
def qplus():
    return make_instance("qplus")


@pytest.fixture
def harmonic():
    return make_instance("harmonic", window=6)


@pytest.fixture
def series():
    return make_instance("series", vars=2, precision=6)


@pytest.fixture
def pointwise():
    return make_instance("pointwise", window=6)


@pytest.fixture
def restricted():
    return make_instance("restricted", window=6)


@pytest.fixture
def integers():
    return make_instance("integers-demo")

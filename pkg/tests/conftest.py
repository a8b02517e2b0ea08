import pytest

from attenuwave import FrequencyGrid, ModelSpec


@pytest.fixture(scope="session")
def small_grid():
    return FrequencyGrid(n=2**10, domega=0.05)


@pytest.fixture(scope="session")
def medium_grid():
    return FrequencyGrid(n=2**14, domega=0.02)


@pytest.fixture(scope="session")
def synth_grid():
    # wide band, tail floor ~1e-11 for unit power-law models at r=1
    return FrequencyGrid(n=2**16, domega=0.05)


@pytest.fixture(scope="session")
def powerlaw_half():
    return ModelSpec(kind="PowerLaw", gamma=0.5, alpha0=1.0, omega0=0.0, c0=1.0)


@pytest.fixture(scope="session")
def thermoviscous():
    return ModelSpec(kind="ThermoViscous", tau0=1.0, c0=1.0)


@pytest.fixture(scope="session")
def kowar15():
    return ModelSpec(kind="KowarModified", gamma=1.5, tau0=1.0, c0=1.0, c1=1.0)


def assert_rel(actual, expected, tol, label=""):
    actual, expected = float(actual), float(expected)
    denom = max(abs(expected), 1e-300)
    rel = abs(actual - expected) / denom
    assert rel <= tol, f"{label}: {actual} vs {expected} (rel {rel:.3e} > {tol})"


@pytest.fixture(scope="session")
def rel():
    return assert_rel

import pytest
from hypothesis import HealthCheck, settings

from sl3ops.algebra import RHO, RHO_TILDE
from sl3ops.kflat import to_sl2
from sl3ops.pipeline import build_operators

# Derandomized so repeated runs exercise the same cases.
settings.register_profile("repo", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def ops_rho():
    return {r.label: r for r in build_operators(-RHO)}


@pytest.fixture(scope="session")
def ops_rhotilde():
    return {r.label: r for r in build_operators(-RHO_TILDE)}


@pytest.fixture(scope="session")
def x_flat(ops_rho):
    return to_sl2(ops_rho["X"].u_flat)


@pytest.fixture(scope="session")
def y_flat(ops_rho):
    return to_sl2(ops_rho["Y"].u_flat)


@pytest.fixture(scope="session")
def xcy_flat(ops_rhotilde):
    return to_sl2(ops_rhotilde["XcY"].u_flat)

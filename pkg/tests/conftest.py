import numpy as np
import pytest

from hollowcore.cli import run_phase_gate, run_qnd
from hollowcore.scenario import bundled_scenario


@pytest.fixture(scope="session")
def gate_scenario():
    return bundled_scenario("paper_phase_gate")


@pytest.fixture(scope="session")
def qnd_scenario():
    return bundled_scenario("paper_qnd")


@pytest.fixture(scope="session")
def gate_pair(gate_scenario):
    return gate_scenario.pair()


@pytest.fixture(scope="session")
def qnd_pair(qnd_scenario):
    return qnd_scenario.pair()


@pytest.fixture(scope="session")
def gate_bundle(gate_scenario):
    return run_phase_gate(gate_scenario, quad_tol=1e-8)


@pytest.fixture(scope="session")
def qnd_bundle(qnd_scenario):
    return run_qnd(qnd_scenario, quad_tol=1e-8)


def _backends():
    import hollowcore.kernels.numpy_impl as numpy_impl
    mods = [numpy_impl]
    try:
        import hollowcore.kernels.numba_impl as numba_impl
        mods.append(numba_impl)
    except ImportError:
        pass
    return mods


@pytest.fixture(params=_backends(), ids=lambda m: m.NAME)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)

import pytest

from qkdwdm import default_scenario
from qkdwdm.detector import DetectorSpec
from qkdwdm.fiber import CwdmGrid, FiberSpec, QuantumChannelSpec
from qkdwdm.keyrate import DecoyProtocolSpec

DEFAULT_ATTENUATION = {1551: 0.20, 1571: 0.21, 1591: 0.22, 1611: 0.24}
BANDS = (1551.0, 1571.0, 1591.0, 1611.0)


@pytest.fixture(scope="session")
def scenario():
    return default_scenario()


@pytest.fixture
def fiber():
    return FiberSpec(DEFAULT_ATTENUATION, dispersion_ps_per_nm_km=4.0, connector_loss_db=0.6)


@pytest.fixture
def grid():
    return CwdmGrid(BANDS, 13.0, (0.75,) * 4)


@pytest.fixture
def qspec():
    return QuantumChannelSpec()


@pytest.fixture
def detector():
    return DetectorSpec()


@pytest.fixture
def protocol():
    return DecoyProtocolSpec([(0.5, 0.988), (0.1, 0.008), (0.0007, 0.004)])


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance_lines(request):
    return request.config.stash[_ACCEPTANCE_KEY]


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

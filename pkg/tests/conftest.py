import pytest
from click.testing import CliRunner

from itoric.gallery.fans import hirzebruch, sigma1, sigma2, sigma3
from itoric.geometry.cone import Cone
from itoric.geometry.config import PointConfiguration
from itoric.main import cli, register_commands
from itoric.settings import ScalarMode

EXACT = ScalarMode.EXACT


@pytest.fixture
def sigma3_cone():
    """cone{2e1 - e2, e2}"""
    return Cone([[2, -1], [0, 1]], mode=EXACT)


@pytest.fixture
def sigma1_fan():
    return sigma1(EXACT)


@pytest.fixture
def sigma2_fan():
    return sigma2(EXACT)


@pytest.fixture
def sigma3_fan():
    return sigma3(EXACT)


@pytest.fixture
def hirzebruch2_fan():
    return hirzebruch(2, EXACT)


@pytest.fixture
def triangle():
    """the standard 2-simplex {0, e1, e2}"""
    return PointConfiguration.of([[0, 0], [1, 0], [0, 1]], EXACT)


@pytest.fixture
def square():
    return PointConfiguration.of([[0, 0], [1, 0], [0, 1], [1, 1]], EXACT)


@pytest.fixture
def segment3():
    """{0, 1, 2} on the line"""
    return PointConfiguration.of([[0], [1], [2]], EXACT)


@pytest.fixture
def runner():
    register_commands(cli)
    return CliRunner()


@pytest.fixture
def invoke(runner):
    def run(args, document=None):
        return runner.invoke(cli, args, input=document, catch_exceptions=False)
    return run

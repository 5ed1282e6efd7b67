import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kserverlab.metric import line_metric, uniform_metric


@pytest.fixture(scope="session")
def uniform3():
    return uniform_metric(3, ["a", "b", "c"])


@pytest.fixture(scope="session")
def line3():
    """Points on a line at coordinates 0, 1, 3."""
    return line_metric([0, 1, 3], ["a", "b", "c"])

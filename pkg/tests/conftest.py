import math

import numpy as np
import pytest
from hypothesis import strategies as st


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def disk_amplitude(rng, radius):
    r = radius * math.sqrt(rng.random())
    return r * complex(math.cos(2 * math.pi * rng.random()), math.sin(2 * math.pi * rng.random()))


def amplitudes(radius=6.0):
    coord = st.floats(-radius, radius, allow_nan=False, allow_infinity=False)
    return st.builds(complex, coord, coord).filter(lambda z: abs(z) <= radius)


phases = st.floats(0.0, 2 * math.pi, allow_nan=False, exclude_max=True)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

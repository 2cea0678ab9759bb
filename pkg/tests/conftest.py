import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from invlsb import GrayImage  # noqa: E402


def random_image(rs, width, height):
    return GrayImage(width, height, rs.integers(0, 256, width * height))


def textured_cover(seed=0, size=512):
    """Smooth gradient plus noise, roughly like a photograph's low planes."""
    rs = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size]
    base = 128 + 60 * np.sin(x / 37.0) * np.cos(y / 53.0)
    noisy = base + rs.normal(0, 6, base.shape)
    return GrayImage.from_array(np.clip(np.rint(noisy), 0, 255).astype(np.uint8))


@pytest.fixture
def rs():
    return np.random.default_rng(1234)


_VERDICTS = []


@pytest.fixture
def verdict():
    """Record one acceptance line, then assert it."""

    def check(name, ok, detail=""):
        _VERDICTS.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _VERDICTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")

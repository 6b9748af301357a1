import pytest
import numpy as np
from mpmath import mp

from core.series import EmTable, PrecisionCtx


@pytest.fixture
def ctx():
    """Return a 128-bit precision context."""
    return PrecisionCtx(128)


@pytest.fixture
def wide_ctx():
    """Return a 256-bit precision context for the derivative oracle and eta checks."""
    return PrecisionCtx(256)


@pytest.fixture
def em_table():
    """Return a fresh e_m table, independent of the process-wide one."""
    return EmTable()


@pytest.fixture
def rng():
    """Return a seeded numpy random generator."""
    return np.random.default_rng(20240601)


@pytest.fixture
def mp60():
    """Run mpmath at 60 significant digits for the duration of a test."""
    with mp.workdps(60):
        yield mp

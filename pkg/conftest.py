"""
Shared pytest fixtures. Lives at the repo root so ``alp_feasibility`` imports
without installation.
"""
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from alp_feasibility.parser import parse_system  # noqa: E402
from alp_feasibility.selftest import WORKED_EXAMPLE  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def worked_example():
    return parse_system(WORKED_EXAMPLE)


@pytest.fixture
def lsys_file(tmp_path):
    """Writes a .lsys text and returns its path."""

    def write(text: str, name: str = "system.lsys") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write

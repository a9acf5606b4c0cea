"""
Shared pytest fixtures for the numerical pipeline and the CLI.
"""

from __future__ import annotations

import math
import os

import pytest
from dotenv import load_dotenv

# Load project and test specific environment variables before src is imported.
load_dotenv(".env", override=False)
load_dotenv("test/.env.test", override=False)
os.environ.setdefault("LOG_TO_FILE", "false")

from typer.testing import CliRunner  # noqa: E402

from src.filters import FilterSequence  # noqa: E402
from src.seedfn import A, SeedFunction, SeedPresetFactory  # noqa: E402

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def a() -> float:
    return A


@pytest.fixture
def preset():
    """Factory fixture: preset("row3") -> SeedFunction."""

    def build(name: str) -> SeedFunction:
        return SeedPresetFactory.create(name)

    return build


@pytest.fixture
def gaussian_seed(preset) -> SeedFunction:
    return preset("gaussian")


@pytest.fixture
def haar_seed(preset) -> SeedFunction:
    return preset("haar")


@pytest.fixture
def haar_filter() -> FilterSequence:
    """Haar coefficients on n = 0, 1."""
    return FilterSequence(0, [1.0 / SQRT2, 1.0 / SQRT2])


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()

"""Shared fixtures for the test suite."""

import json
from pathlib import Path

import pytest

from cdfkit import bundle, fixtures

GOLDEN_DIR = Path(__file__).parent / "data" / "golden"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def golden_bundle():
    return bundle.load_bundle(GOLDEN_DIR)


@pytest.fixture(scope="session")
def golden_limb_nodes():
    return json.loads((GOLDEN_DIR / "limb_nodes.json").read_text())


@pytest.fixture(scope="session")
def clean_serialized() -> dict:
    """A small, defect-free in-memory bundle used across test modules."""
    return fixtures.generate_serialized(fixtures.MUTATION_SPEC)

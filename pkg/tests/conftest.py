from pathlib import Path

import pytest

from elnet.network import load

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
HAND_FIXTURES = ["triangle", "star", "single_edge"]
RANDOM_FIXTURES = sorted(p.stem for p in (FIXTURES / "random").glob("*.enet"))


def fixture_path(name: str) -> Path:
    p = FIXTURES / f"{name}.enet"
    return p if p.exists() else FIXTURES / "random" / f"{name}.enet"


def load_fixture(name: str):
    return load(fixture_path(name))


ALL_FIXTURES = HAND_FIXTURES + RANDOM_FIXTURES


@pytest.fixture
def triangle():
    return load_fixture("triangle")


@pytest.fixture
def star():
    return load_fixture("star")


@pytest.fixture
def single_edge():
    return load_fixture("single_edge")

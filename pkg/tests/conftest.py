from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from starrep import complete, parse_presentation  # noqa: E402


@pytest.fixture(scope="session")
def ax2_gb():
    pres = parse_presentation("generators: x;\nrelations: x^2, x*^2")
    return complete(pres.relations, 12)


@pytest.fixture(scope="session")
def heisenberg_gb():
    from starrep.examples import preset

    return complete(preset("uea-heisenberg").relations, 8)


@pytest.fixture(scope="session")
def t3_gb():
    from corpus import t3_completed

    return t3_completed()


@pytest.fixture(scope="session")
def b4_gb():
    from corpus import b4_completed

    return b4_completed()

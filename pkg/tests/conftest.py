import json
from pathlib import Path

import pytest

from pancake_genus.graph import build_graph

DATA = Path(__file__).parent / "data"


def load_data(name):
    return json.loads((DATA / name).read_text())


@pytest.fixture(scope="session")
def graphs():
    cache = {}

    def get(m, n):
        if (m, n) not in cache:
            cache[m, n] = build_graph((m, n))
        return cache[m, n]

    return get

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pathkoszul import build_category, field_from_name, load_graph

CORPUS = {
    "a2": "1 2",
    "p3": "1 2\n2 3",
    "c3": "1 2\n2 3\n1 3",
    "c4": "1 2\n2 3\n3 4\n1 4",
    "k4": "1 2\n1 3\n1 4\n2 3\n2 4\n3 4",
    "tri_pendant": "1 2\n2 3\n1 3\n3 4",
    "c5": "1 2\n2 3\n3 4\n4 5\n1 5",
    "c6": "1 2\n2 3\n3 4\n4 5\n5 6\n1 6",
}

# graphs satisfying the infinite-walk hypothesis (some cycle exists)
CYCLIC = ["c3", "c4", "k4", "tri_pendant", "c5", "c6"]


@pytest.fixture(scope="session")
def graphs():
    return {name: load_graph(text) for name, text in CORPUS.items()}


@pytest.fixture(scope="session")
def cat(graphs):
    """Factory returning cached categories keyed by (name, field, mode)."""
    cache = {}

    def get(name, field="fp:32003", mode="truncate2", cap=None):
        key = (name, field, mode, cap)
        if key not in cache:
            cache[key] = build_category(
                graphs[name], field_from_name(field), mode=mode, cap=cap
            )
        return cache[key]

    return get

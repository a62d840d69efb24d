"""Proper equitable edge colorings of complete and sparse bipartite graphs."""

import random

import pytest

from dinners.coloring import color_bipartite_edges, equitable_bipartite_coloring


def check_proper_equitable(a, b, k, classes, expected_edges):
    got = sorted(e for cls in classes for e in cls)
    assert got == sorted(expected_edges)
    assert len(classes) == k
    sizes = sorted(len(cls) for cls in classes)
    assert sizes[-1] - sizes[0] <= 1
    total = len(expected_edges)
    assert sizes[-1] == -(-total // k) or total == 0
    for cls in classes:
        lefts = [i for i, _ in cls]
        rights = [j for _, j in cls]
        assert len(set(lefts)) == len(lefts)
        assert len(set(rights)) == len(rights)


def complete(a, b):
    return [(i, j) for i in range(1, a + 1) for j in range(1, b + 1)]


def test_square_with_minimum_colors():
    col = equitable_bipartite_coloring(3, 3, 3)
    check_proper_equitable(3, 3, 3, col.classes(), complete(3, 3))
    assert all(len(cls) == 3 for cls in col.classes())


def test_square_with_extra_colors():
    col = equitable_bipartite_coloring(3, 3, 5)
    check_proper_equitable(3, 3, 5, col.classes(), complete(3, 3))
    assert sorted(len(cls) for cls in col.classes()) == [1, 2, 2, 2, 2]


def test_rectangle():
    col = equitable_bipartite_coloring(2, 4, 4)
    check_proper_equitable(2, 4, 4, col.classes(), complete(2, 4))
    assert all(len(cls) == 2 for cls in col.classes())


def test_rejects_too_few_colors():
    with pytest.raises(ValueError):
        equitable_bipartite_coloring(3, 4, 3)


def test_complete_sweep():
    for a in range(1, 9):
        for b in range(1, 9):
            for k in range(max(a, b), 21):
                col = equitable_bipartite_coloring(a, b, k)
                check_proper_equitable(a, b, k, col.classes(), complete(a, b))


def test_sparse_graphs_random():
    rng = random.Random(7)
    for _ in range(300):
        a = rng.randint(1, 7)
        b = rng.randint(1, 7)
        edges = [e for e in complete(a, b) if rng.random() < 0.6]
        if not edges:
            continue
        deg: dict = {}
        for i, j in edges:
            deg[("L", i)] = deg.get(("L", i), 0) + 1
            deg[("R", j)] = deg.get(("R", j), 0) + 1
        delta = max(deg.values())
        k = rng.randint(delta, delta + 4)
        classes = color_bipartite_edges(a, b, edges, k)
        check_proper_equitable(a, b, k, classes, edges)


def test_deterministic():
    a = equitable_bipartite_coloring(5, 7, 9)
    b = equitable_bipartite_coloring(5, 7, 9)
    assert a == b

import os
import subprocess
import sys

import pytest
from hypothesis import given

from _strategies import multigraphs
from conftest import brute_aut_order
from harmonica import _kernel
from harmonica.action import automorphism_group, automorphism_group_order
from harmonica.census import enumerate_graphs
from harmonica.covers import macbeath
from harmonica.families import barbell, decorated_cycle, lower_bound_family
from harmonica.multigraph import build_graph

compiled = _kernel.compiled_canonical_search()
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernel not built")


def _run(fn, G, colors=None):
    n = G.num_vertices
    return fn(n, G.multiplicity_matrix(), colors or [0] * n)


@needs_compiled
@given(multigraphs(max_vertices=7, max_genus=4))
def test_backends_agree_on_random_graphs(G):
    assert _run(compiled, G) == _run(_kernel.py_canonical_search, G)


@needs_compiled
def test_backends_agree_on_census_and_symmetric_graphs():
    graphs = list(enumerate_graphs(2, 5)) + [
        decorated_cycle(6).graph,
        lower_bound_family(5).graph,
        macbeath(2).graph,
    ]
    for G in graphs:
        assert _run(compiled, G) == _run(_kernel.py_canonical_search, G)


@needs_compiled
def test_backends_agree_with_vertex_colors():
    G = barbell().graph
    colors = [0, 1, 1, 0]
    assert _run(compiled, G, colors) == _run(_kernel.py_canonical_search, G, colors)


@given(multigraphs(max_vertices=6, max_genus=3))
def test_aut_order_matches_brute_force(G):
    assert automorphism_group_order(G) == brute_aut_order(G)


def test_aut_examples():
    assert automorphism_group(build_graph(["a", "b"], [("e", "a", "b")])).order == 2
    assert automorphism_group(build_graph(["a", "b"], [("e", "a", "b"), ("f", "a", "b")])).order == 4
    assert automorphism_group(barbell().graph).order == 8


def test_huge_aut_order_from_generators():
    # every centre of the cover carries three pendant leaves; |Aut| is far
    # beyond enumeration, but its order follows from the search generators
    G = macbeath(2).graph
    assert automorphism_group_order(G) % (6 ** 8) == 0


def test_backend_selection_env():
    code = "import harmonica._kernel as k; print(k.BACKEND)"
    env = dict(os.environ, HARMONICA_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert _kernel.BACKEND in ("cython", "python")
    if compiled is not None:
        assert _kernel.BACKEND == "cython"


def test_empty_input():
    assert _kernel.py_canonical_search(0, [], []) == ((), (), [])

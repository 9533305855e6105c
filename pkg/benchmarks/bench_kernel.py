"""Compare the compiled and pure-Python canonical search kernels.

Workloads: every census graph of one genus, and the homology covers of the
genus-2 extremal graph.  Both kernels must agree on every input.

    python benchmarks/bench_kernel.py --genus 3 --max-vertices 7 --m 2 3
"""

import argparse
import statistics
import sys
import time

from harmonica._kernel import compiled_canonical_search, py_canonical_search
from harmonica.census import enumerate_graphs
from harmonica.covers import derived_cover, homology_voltages, spanning_tree
from harmonica.families import hurwitz_genus2


def workloads(genus, max_vertices, moduli):
    graphs = list(enumerate_graphs(genus, max_vertices))
    yield f"census g={genus} v<={max_vertices} ({len(graphs)} graphs)", graphs
    base = hurwitz_genus2().graph
    covers = [derived_cover(homology_voltages(base, spanning_tree(base), m)).cover for m in moduli]
    yield f"homology covers m={','.join(map(str, moduli))}", covers


def run(kernel, inputs):
    return [kernel(n, mat, [0] * n) for n, mat in inputs]


def timed(kernel, inputs, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = run(kernel, inputs)
        times.append(time.perf_counter() - start)
    return statistics.median(times), out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--genus", type=int, default=3)
    parser.add_argument("--max-vertices", type=int, default=7)
    parser.add_argument("--m", type=int, nargs="*", default=[2, 3])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    compiled = compiled_canonical_search()
    if compiled is None:
        print("compiled kernel not built; install with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'workload':48s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for label, graphs in workloads(args.genus, args.max_vertices, args.m):
        inputs = [(G.num_vertices, G.multiplicity_matrix()) for G in graphs]
        tc, oc = timed(compiled, inputs, args.repeat)
        tp, op = timed(py_canonical_search, inputs, args.repeat)
        if oc != op:
            print(f"{label}: kernels DISAGREE")
            return 1
        print(f"{label:48s} {tc:9.3f}s {tp:9.3f}s {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

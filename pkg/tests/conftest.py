import os
from itertools import permutations
from math import factorial

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def brute_aut_order(G):
    """|Aut(G)| by scanning every vertex bijection; independent of the search kernel."""
    n = G.num_vertices
    mat = G.multiplicity_matrix()
    count = 0
    for p in permutations(range(n)):
        if all(mat[i * n + j] == mat[p[i] * n + p[j]] for i in range(n) for j in range(n)):
            count += 1
    for ks in G.parallel_classes().values():
        count *= factorial(len(ks))
    return count


def brute_is_harmonic(phi):
    """Direct reading of the local preimage-count condition."""
    S, T = phi.source, phi.target
    for i in range(S.num_vertices):
        y = phi.vidx[i]
        counts = []
        for k in T.incident_indices(y):
            counts.append(sum(1 for j in S.incident_indices(i) if phi.eidx[j] == k))
        if len(set(counts)) > 1:
            return False
    return True

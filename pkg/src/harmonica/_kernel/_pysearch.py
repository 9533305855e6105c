"""Pure-Python individualization/refinement search.

Operates on a flattened symmetric multiplicity matrix.  Children of a search
node are skipped when an automorphism found so far, fixing the node's
individualized vertices, maps them onto an already explored child; pruned
subtrees are images of explored ones, so the minimal certificate is still
found and the recorded automorphisms generate the whole group.
"""


def _refine(n, mat, lab, start):
    cnt = [0] * n
    while True:
        split = False
        s = 0
        while s < n:
            e = s + 1
            while e < n and not start[e]:
                e += 1
            cell = lab[s:e]
            for v in range(n):
                row = v * n
                acc = 0
                for w in cell:
                    acc += mat[row + w]
                cnt[v] = acc
            c = 0
            while c < n:
                d = c + 1
                while d < n and not start[d]:
                    d += 1
                if d - c > 1:
                    first = cnt[lab[c]]
                    for i in range(c + 1, d):
                        if cnt[lab[i]] != first:
                            break
                    else:
                        c = d
                        continue
                    block = sorted(lab[c:d], key=cnt.__getitem__)
                    lab[c:d] = block
                    for i in range(1, d - c):
                        if cnt[block[i]] != cnt[block[i - 1]]:
                            start[c + i] = 1
                    split = True
                c = d
            if split:
                break
            s = e
        if not split:
            return


def _orbit_roots(n, autos, prefix):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in autos:
        if all(p[v] == v for v in prefix):
            for v in range(n):
                a, b = find(v), find(p[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_search(n, mat, colors):
    """Return ``(certificate, labeling, generators)``.

    ``labeling[i]`` is the vertex placed at canonical position ``i``;
    generators are tuples ``p`` with ``p[v]`` the image of vertex ``v`` and
    together generate the vertex automorphism group.
    """
    if n == 0:
        return (), (), []
    order = sorted(range(n), key=colors.__getitem__)
    start = [0] * n
    start[0] = 1
    for i in range(1, n):
        if colors[order[i]] != colors[order[i - 1]]:
            start[i] = 1

    st = {"first": None, "firstlab": None, "best": None, "bestlab": None}
    autos = []

    def record(ref, lab):
        p = [0] * n
        for i in range(n):
            p[ref[i]] = lab[i]
        p = tuple(p)
        if p not in autos and p != tuple(range(n)):
            autos.append(p)

    def leaf(lab):
        cert = [colors[v] for v in lab]
        for i in range(n):
            row = lab[i] * n
            for j in range(i + 1, n):
                cert.append(mat[row + lab[j]])
        cert = tuple(cert)
        if st["first"] is None:
            st["first"] = st["best"] = cert
            st["firstlab"] = st["bestlab"] = tuple(lab)
            return
        if cert == st["first"]:
            record(st["firstlab"], lab)
        if cert < st["best"]:
            st["best"] = cert
            st["bestlab"] = tuple(lab)
        elif cert == st["best"]:
            record(st["bestlab"], lab)

    def search(lab, start, prefix):
        _refine(n, mat, lab, start)
        c = 0
        while c < n:
            d = c + 1
            while d < n and not start[d]:
                d += 1
            if d - c > 1:
                break
            c = d
        else:
            leaf(lab)
            return
        cell = lab[c:d]
        done = []
        for w in cell:
            if done:
                roots = _orbit_roots(n, autos, prefix)
                if any(roots[w] == roots[x] for x in done):
                    continue
            done.append(w)
            lab2 = list(lab)
            start2 = list(start)
            i = lab2.index(w, c, d)
            lab2[c], lab2[i] = lab2[i], lab2[c]
            start2[c + 1] = 1
            search(lab2, start2, prefix + [w])

    search(order, start, [])
    return st["best"], st["bestlab"], autos

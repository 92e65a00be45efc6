"""Independent oracles for surface invariants."""


def braid_closure_components(d, bands):
    """Components of the closure of a band word on ``d`` strands.

    Each band generator permutes its two strands; the closure has one
    component per cycle of the product permutation.
    """
    perm = list(range(d))
    for _, i, j, _ in sorted(bands):
        perm[i], perm[j] = perm[j], perm[i]
    seen, cycles = set(), 0
    for k in range(d):
        if k in seen:
            continue
        cycles += 1
        while k not in seen:
            seen.add(k)
            k = perm[k]
    return cycles


def fat_graph_faces(surface):
    """Faces of the ribbon graph: disks are vertices with the theta rotation,
    bands are edges.  Disks without bands bound one face each."""
    half = []
    for bi, b in enumerate(surface.bands):
        half.append((b.i, b.theta, bi, 0))
        half.append((b.j, b.theta, bi, 1))
    by_disk = {}
    for h in half:
        by_disk.setdefault(h[0], []).append(h)
    sigma = {}
    for hs in by_disk.values():
        hs.sort(key=lambda h: (h[1], h[3]))
        for a, b in zip(hs, hs[1:] + hs[:1]):
            sigma[a] = b
    alpha = {}
    for bi, b in enumerate(surface.bands):
        x, y = (b.i, b.theta, bi, 0), (b.j, b.theta, bi, 1)
        alpha[x], alpha[y] = y, x
    seen, faces = set(), 0
    for h in half:
        if h in seen:
            continue
        faces += 1
        while h not in seen:
            seen.add(h)
            h = sigma[alpha[h]]
    isolated = surface.d - len(by_disk)
    return faces + isolated


def components(surface):
    parent = list(range(surface.d))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x
    for b in surface.bands:
        parent[find(b.i)] = find(b.j)
    return len({find(x) for x in range(surface.d)})

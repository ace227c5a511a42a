"""Independent oracles used by the test suite.

Everything here is deliberately written from scratch against the
definitions, sharing no code with the package: dimension counts come
from a full-path-space rank computation over Fraction, extendability
from brute force over all edge orientations, and the graph enumerator
walks every labelled graph and keeps canonical representatives.
"""

from fractions import Fraction
from itertools import combinations, permutations


# -- sparse elimination over Q ---------------------------------------------

def _rank_of_vectors(vectors):
    """Rank of a list of {key: Fraction} sparse vectors."""
    pivots = {}
    rank = 0
    for vec in vectors:
        vec = dict(vec)
        while vec:
            key = min(vec)
            if key in pivots:
                coeff = vec[key]
                for k, c in pivots[key].items():
                    vec[k] = vec.get(k, Fraction(0)) - coeff * c
                    if not vec[k]:
                        del vec[k]
            else:
                inv = Fraction(1) / vec[key]
                pivots[key] = {k: c * inv for k, c in vec.items()}
                rank += 1
                break
    return rank


# -- category dimensions ----------------------------------------------------

def _arcs(edges):
    out = []
    for u, v in edges:
        out.append((u, v))
        out.append((v, u))
    return out


def _paths_of_length(vertices, edges, length):
    """All directed paths in the double quiver as vertex tuples."""
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    level = [(v,) for v in sorted(vertices)]
    for _ in range(length):
        nxt = []
        for p in level:
            for w in sorted(adj[p[-1]]):
                nxt.append(p + (w,))
        level = nxt
    return level

def _relation_vectors(vertices, edges):
    """Defining relations as sparse vectors over length-2 paths.

    Two kinds: any 2-step path through three distinct vertices vanishes,
    and all 2-step loops based at a common vertex are identified.
    """
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    rels = []
    for b in sorted(vertices):
        for a in sorted(adj[b]):
            for c in sorted(adj[b]):
                if a != c:
                    rels.append({(a, b, c): Fraction(1)})
    for b in sorted(vertices):
        nbs = sorted(adj[b])
        for a, c in zip(nbs, nbs[1:]):
            rels.append({(b, a, b): Fraction(1), (b, c, b): Fraction(-1)})
    return rels


def oracle_dims(vertices, edges, cap):
    """Graded dimensions {degree: dim} of the quotient path category.

    dim_d = (#paths of length d) - rank(two-sided span of the relations
    inside degree d), computed on the raw path space.
    """
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    rels = _relation_vectors(vertices, edges)
    dims = {0: len(vertices), 1: 2 * len(edges)} if cap >= 1 else {0: len(vertices)}
    for d in range(2, cap + 1):
        paths = _paths_of_length(vertices, edges, d)
        consequences = []
        for rel in rels:
            # every term of a relation shares the same endpoints, so a
            # left path a ending at the start and a right path b starting
            # at the end glue uniformly across the whole relation
            (x0, _, z0) = next(iter(rel))
            assert all(x == x0 and z == z0 for (x, _, z) in rel)
            for la in range(0, d - 1):
                lb = d - 2 - la
                lefts = [a for a in _paths_of_length(vertices, edges, la)
                         if a[-1] == x0]
                rights = [b for b in _paths_of_length(vertices, edges, lb)
                          if b[0] == z0]
                for a in lefts:
                    for b in rights:
                        vec = {}
                        for (x, y, z), c in rel.items():
                            glued = a + (y,) + b
                            vec[glued] = vec.get(glued, Fraction(0)) + c
                        if any(vec.values()):
                            consequences.append(vec)
        dims[d] = len(paths) - _rank_of_vectors(consequences)
    return dims


# -- brute-force extendability ----------------------------------------------

def oracle_extendable_table(vertices, edges):
    """{(u, v): bool} over all arcs: does some orientation of the graph
    admit an infinite directed walk whose first step is u -> v?

    Brute force over all 2^|E| orientations; in each, the vertices with
    an infinite forward walk are found by peeling out-degree-0 vertices.
    """
    vlist = sorted(vertices)
    vpos = {v: t for t, v in enumerate(vlist)}
    elist = sorted(tuple(sorted(e)) for e in edges)
    m = len(elist)
    table = {}
    for u, v in elist:
        table[(u, v)] = False
        table[(v, u)] = False
    for mask in range(1 << m):
        out = [0] * len(vlist)
        arcs = []
        for t, (u, v) in enumerate(elist):
            a, b = (u, v) if (mask >> t) & 1 else (v, u)
            out[vpos[a]] |= 1 << vpos[b]
            arcs.append((a, b))
        alive = (1 << len(vlist)) - 1
        changed = True
        while changed:
            changed = False
            for t in range(len(vlist)):
                if (alive >> t) & 1 and not (out[t] & alive):
                    alive &= ~(1 << t)
                    changed = True
        for a, b in arcs:
            if (alive >> vpos[b]) & 1:
                table[(a, b)] = True
    return table


# -- exhaustive small graphs --------------------------------------------------

def _connected_mask(mask, n, pair_list):
    adj = [0] * n
    for t, (a, b) in enumerate(pair_list):
        if (mask >> t) & 1:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for t in range(n):
            if (frontier >> t) & 1:
                nxt |= adj[t]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << n) - 1


def connected_graph_classes(n):
    """All connected graphs on vertices 1..n, one labelled representative
    per isomorphism class (the lexicographically minimal edge bitmask)."""
    pair_list = list(combinations(range(n), 2))
    m = len(pair_list)
    pidx = {p: t for t, p in enumerate(pair_list)}
    perm_tables = []
    for sigma in permutations(range(n)):
        tbl = [0] * m
        for t, (a, b) in enumerate(pair_list):
            x, y = sigma[a], sigma[b]
            tbl[t] = pidx[(x, y) if x < y else (y, x)]
        perm_tables.append(tbl)
    out = []
    for mask in range(1, 1 << m):
        if not _connected_mask(mask, n, pair_list):
            continue
        canonical = True
        for tbl in perm_tables[1:]:
            img = 0
            rest = mask
            while rest:
                low = rest & -rest
                img |= 1 << tbl[low.bit_length() - 1]
                rest ^= low
            if img < mask:
                canonical = False
                break
        if canonical:
            edges = [(a + 1, b + 1) for t, (a, b) in enumerate(pair_list)
                     if (mask >> t) & 1]
            out.append((list(range(1, n + 1)), edges))
    return out


def all_connected_graphs_up_to(nmax):
    out = []
    for n in range(2, nmax + 1):
        out.extend(connected_graph_classes(n))
    return out


def is_tree(vertices, edges):
    return len(edges) == len(vertices) - 1

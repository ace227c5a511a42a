"""Finite simple connected graphs and walk-extendability predicates.

Graphs are stored undirected with integer vertex ids; the double quiver
(one arrow each way per edge) is implicit everywhere downstream.  Two
input formats are accepted: a JSON object with "vertices" and "edges"
keys, and a plain edge list with one "u v" pair per line.

The predicates at the bottom answer the walk-extension questions that
the resolution builders depend on: a 2-step walk ending with the edge
(i, j) extends to arbitrarily long walks avoiding immediate backtracking
iff from j one can reach a cycle without using the edge back to i.
"""

from __future__ import annotations

import json
from itertools import count

from .errors import (EdgeAbsent, HypothesisViolation, ParseError,
                     UnknownVertex, ValidationError)


class Graph:
    """Validated simple connected graph with at least two vertices."""

    __slots__ = ("vertices", "edges", "adjacency", "_bridges")

    def __init__(self, vertices, edges):
        vs = sorted(set(vertices))
        if len(vs) != len(list(vertices)):
            raise ValidationError("duplicate vertex ids")
        if len(vs) < 2:
            raise ValidationError("need at least two vertices")
        if any(not isinstance(v, int) for v in vs):
            raise ValidationError("vertex ids must be integers")
        vset = set(vs)
        es = set()
        for e in edges:
            u, v = e
            if u not in vset or v not in vset:
                raise ValidationError(f"edge {e!r} mentions an unknown vertex")
            if u == v:
                raise ValidationError(f"self loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in es:
                raise ValidationError(f"duplicate edge {key!r}")
            es.add(key)
        self.vertices = tuple(vs)
        self.edges = tuple(sorted(es))
        adj = {v: [] for v in vs}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._check_connected()
        self._bridges = None

    def _check_connected(self):
        seen = {self.vertices[0]}
        frontier = [self.vertices[0]]
        while frontier:
            nxt = []
            for v in frontier:
                for w in self.adjacency[v]:
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        if len(seen) != len(self.vertices):
            raise ValidationError("graph is not connected")

    def check_vertex(self, v):
        if v not in self.adjacency:
            raise UnknownVertex(f"vertex {v} is not in the graph")

    def neighbors(self, v):
        self.check_vertex(v)
        return self.adjacency[v]

    def has_edge(self, u, v):
        self.check_vertex(u)
        self.check_vertex(v)
        return v in self.adjacency[u]

    def __eq__(self, other):
        return (isinstance(other, Graph) and other.vertices == self.vertices
                and other.edges == self.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def to_dict(self):
        return {"vertices": list(self.vertices),
                "edges": [list(e) for e in self.edges]}


def load_graph(text):
    """Parse a graph from JSON or from plain 'u v' edge-list lines."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty graph input")
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from None
        if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
            raise ParseError("JSON graph needs 'vertices' and 'edges' keys")
        verts = obj["vertices"]
        edges = obj["edges"]
        if (not isinstance(verts, list)
                or not all(isinstance(v, int) for v in verts)):
            raise ParseError("'vertices' must be a list of integers")
        if (not isinstance(edges, list)
                or not all(isinstance(e, list) and len(e) == 2
                           and all(isinstance(x, int) for x in e) for e in edges)):
            raise ParseError("'edges' must be a list of [u, v] integer pairs")
        return Graph(verts, [tuple(e) for e in edges])
    edges = []
    verts = set()
    for lineno, line in enumerate(stripped.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex id") from None
        edges.append((u, v))
        verts.update((u, v))
    return Graph(sorted(verts), edges)


def load_graph_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return load_graph(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read graph file {path!r}: {exc}") from None


def bridges(g):
    """The set of bridge edges (as sorted pairs), by one DFS with low links."""
    if g._bridges is not None:
        return g._bridges
    index = {}
    low = {}
    out = set()
    clock = count()
    for root in g.vertices:
        if root in index:
            continue
        index[root] = low[root] = next(clock)
        stack = [(None, root, iter(g.adjacency[root]))]
        while stack:
            parent, v, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in index:
                    if index[w] < low[v]:
                        low[v] = index[w]
                else:
                    index[w] = low[w] = next(clock)
                    stack.append((v, w, iter(g.adjacency[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent is not None:
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                    if low[v] > index[parent]:
                        out.add((min(parent, v), max(parent, v)))
    g._bridges = frozenset(out)
    return g._bridges


def cycle_vertices(g):
    """Vertices lying on some cycle: endpoints of non-bridge edges."""
    br = bridges(g)
    out = set()
    for e in g.edges:
        if e not in br:
            out.update(e)
    return frozenset(out)


def has_infinite_walk(g):
    """True iff the graph contains a cycle (equivalently, a non-bridge edge)."""
    return len(bridges(g)) < len(g.edges)


def extendable(g, i, j):
    """Can a walk arriving at j along the edge (i, j) be extended forever
    without immediately backtracking?  True iff j reaches a cycle vertex
    in the graph with the edge (i, j) removed (including j itself)."""
    if not g.has_edge(i, j):
        raise EdgeAbsent(f"({i}, {j}) is not an edge")
    on_cycle = cycle_vertices(g)
    if j in on_cycle:
        return True
    seen = {j}
    frontier = [j]
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.adjacency[v]:
                if v == j and w == i:
                    continue  # the removed edge
                if w not in seen:
                    if w in on_cycle:
                        return True
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return False


def pick_extension(g, i, j):
    """A neighbour k of j, k != i, with extendable(g, j, k); smallest such."""
    if not extendable(g, i, j):
        raise HypothesisViolation(f"walk ending ({i}, {j}) is not extendable")
    for k in g.adjacency[j]:
        if k != i and extendable(g, j, k):
            return k
    raise HypothesisViolation(f"no extension step out of {j} avoiding {i}")

"""The graded path category of a graph modulo its quadratic relations.

Morphisms from i to j in degree n are spanned by the length-n directed
paths from i to j in the double quiver of the graph (one arrow each way
per edge), modulo the two-sided ideal generated by

* every 2-path through three pairwise distinct vertices, and
* the difference of any two 2-loops based at a common vertex through
  distinct neighbours.

Components are materialised degree by degree as explicit quotients: the
relation consequences of degree n are row reduced and the surviving
(non-pivot) paths form a deterministic basis.  Paths are vertex tuples
(v_0, ..., v_n) read left to right, so "p then q" glues as p + q[1:],
and compose(f, g) applies g first.

Two modes exist.  ``truncate2`` also kills everything above degree 2;
for a connected graph on more than two vertices nothing is lost because
all degree-3 components already vanish in the quotient (verified by
verify_category via a literal rebuild).  ``literal`` materialises the
untruncated quotient up to a chosen degree cap and refuses, with
Truncated, to answer past it.
"""

from __future__ import annotations

from typing import NamedTuple

from . import linalg
from .errors import (EdgeAbsent, NotComposable, Truncated,
                     ValidationError, VerificationError)
from .graphs import has_infinite_walk
from .linalg import Mat


class BasisElement(NamedTuple):
    source: int
    target: int
    degree: int
    path: tuple
    name: str


def _name_path(path):
    n = len(path) - 1
    if n == 0:
        return f"e_{path[0]}"
    if n == 1:
        return f"a_{path[0]}_{path[1]}"
    if n == 2 and path[0] == path[2]:
        return f"w_{path[0]}"
    return "p_" + "_".join(str(v) for v in path)


def relation_instances(graph):
    """Generating relations as lists of (coefficient, 2-path) terms."""
    rels = []
    for b in graph.vertices:
        nbs = graph.adjacency[b]
        for a in nbs:
            for c in nbs:
                if a != c:
                    rels.append([(1, (a, b, c))])
    for j in graph.vertices:
        nbs = graph.adjacency[j]
        for k1, k2 in zip(nbs, nbs[1:]):
            rels.append([(1, (j, k1, j)), (-1, (j, k2, j))])
    return rels


class PathCategory:
    """Materialised graded quotient category of a graph."""

    __slots__ = ("graph", "field", "mode", "cap", "basis", "nf", "mult",
                 "finite_from", "relations")

    def __init__(self, graph, field, mode, cap, basis, nf, mult,
                 finite_from, relations):
        self.graph = graph
        self.field = field
        self.mode = mode
        self.cap = cap
        self.basis = basis
        self.nf = nf
        self.mult = mult
        self.finite_from = finite_from
        self.relations = relations

    @property
    def mode_label(self):
        if self.mode == "truncate2":
            return "truncate2"
        return f"literal:{self.cap}"

    # -- queries ---------------------------------------------------------

    def dim(self, i, j, n):
        self.graph.check_vertex(i)
        self.graph.check_vertex(j)
        if n < 0:
            return 0
        if n > self.cap:
            if self.mode == "literal":
                raise Truncated(f"degree {n} beyond materialised cap {self.cap}")
            return 0
        return len(self.basis.get((i, j, n), ()))

    def block(self, i, j, n):
        return self.basis.get((i, j, n), ())

    def blocks(self):
        return sorted(self.basis)

    def elements(self):
        out = []
        for key in sorted(self.basis, key=lambda k: (k[2], k[0], k[1])):
            out.extend(self.basis[key])
        return out

    def identity(self, i):
        self.graph.check_vertex(i)
        return self.basis[(i, i, 0)][0]

    def arrow(self, u, v):
        if not self.graph.has_edge(u, v):
            raise EdgeAbsent(f"({u}, {v}) is not an edge")
        return self.basis[(u, v, 1)][0]

    def loop(self, i):
        """The degree-2 loop class at i."""
        self.graph.check_vertex(i)
        return self.basis[(i, i, 2)][0]

    def total_dim(self):
        return sum(len(b) for b in self.basis.values())

    def dims_by_degree(self):
        out = {}
        for (i, j, n), b in self.basis.items():
            out[n] = out.get(n, 0) + len(b)
        return dict(sorted(out.items()))

    def nf_of_path(self, path):
        """Normal form of an arbitrary quiver path as a basis combination."""
        n = len(path) - 1
        if n > self.cap:
            if self.mode == "literal":
                raise Truncated(f"degree {n} beyond materialised cap {self.cap}")
            return ()
        return self.nf.get(tuple(path), ())

    def compose(self, f, g):
        """f after g; requires g.target == f.source.  Returns a combination."""
        if g.target != f.source:
            raise NotComposable(f"{g.name} then {f.name}: endpoints mismatch")
        n = f.degree + g.degree
        if n > self.cap:
            if self.mode == "literal":
                raise Truncated(f"degree {n} beyond materialised cap {self.cap}")
            return ()
        return self.mult.get((g.path, f.path), ())

    def to_dict(self):
        dims = {f"{i},{j},{n}": len(b) for (i, j, n), b in sorted(self.basis.items())}
        basis = {f"{i},{j},{n}": [e.name for e in b]
                 for (i, j, n), b in sorted(self.basis.items())}
        mult = {}
        for (gp, fp), combo in sorted(self.mult.items()):
            key = f"{_name_path(gp)};{_name_path(fp)}"
            mult[key] = [[linalg.entry_to_str(c), e.name] for c, e in combo]
        return {
            "graph": self.graph.to_dict(),
            "field": self.field.name,
            "mode": self.mode,
            "cap": self.cap,
            "finite_from": self.finite_from,
            "total_dim": self.total_dim(),
            "dims": dims,
            "basis": basis,
            "mult": mult,
        }


def _consequence_vectors(graph, rels, paths_by_len, i, j, n):
    """All degree-n relation consequences in the (i, j) block, deduplicated."""
    out = []
    seen = set()
    for s in range(n - 1):
        t = n - 2 - s
        for rel in rels:
            a = rel[0][1][0]
            c = rel[0][1][2]
            lefts = paths_by_len[s].get((i, a), ())
            if not lefts:
                continue
            rights = paths_by_len[t].get((c, j), ())
            if not rights:
                continue
            for p in lefts:
                for r in rights:
                    vec = {}
                    for coef, mid in rel:
                        full = p + mid[1:] + r[1:]
                        vec[full] = vec.get(full, 0) + coef
                    items = tuple(sorted((k, v) for k, v in vec.items() if v))
                    if items and items not in seen:
                        seen.add(items)
                        out.append(items)
    return out


def build_category(graph, field, mode="truncate2", cap=None):
    """Materialise the quotient category up to the degree cap."""
    if mode == "truncate2":
        if cap not in (None, 2):
            raise ValidationError("truncate2 mode has a fixed cap of 2")
        cap = 2
    elif mode == "literal":
        if cap is None or cap < 2:
            raise ValidationError("literal mode needs an explicit cap >= 2")
    else:
        raise ValidationError(f"unknown mode {mode!r}")

    rels = relation_instances(graph)
    paths_by_len = [{(v, v): ((v,),) for v in graph.vertices}]
    basis = {}
    nf = {}
    finite_from = None

    for v in graph.vertices:
        key = (v, v, 0)
        elt = BasisElement(v, v, 0, (v,), _name_path((v,)))
        basis[key] = (elt,)
        nf[(v,)] = ((field.one, elt),)

    for n in range(1, cap + 1):
        prev = paths_by_len[n - 1]
        cur = {}
        for (i, x), plist in prev.items():
            for p in plist:
                for y in graph.adjacency[x]:
                    cur.setdefault((i, y), []).append(p + (y,))
        # descending column order: elimination consumes the lexicographically
        # larger paths, so each surviving representative is the smallest in
        # its class (the loop at i survives via its smallest neighbor)
        cur = {k: tuple(sorted(v, reverse=True)) for k, v in cur.items()}
        paths_by_len.append(cur)

        degree_dim = 0
        for (i, j), plist in sorted(cur.items()):
            index = {p: c for c, p in enumerate(plist)}
            vecs = _consequence_vectors(graph, rels, paths_by_len, i, j, n)
            rows = []
            for items in vecs:
                row = [field.zero] * len(plist)
                for p, coef in items:
                    row[index[p]] = field.of_int(coef)
                rows.append(row)
            if rows:
                red, piv = linalg.rref(Mat(field, len(rows), len(plist), rows))
            else:
                red, piv = None, ()
            pset = set(piv)
            free = [c for c in range(len(plist)) if c not in pset]
            free_elts = {}
            blk = []
            for c in free:
                p = plist[c]
                elt = BasisElement(i, j, n, p, _name_path(p))
                free_elts[c] = elt
                blk.append(elt)
            if blk:
                basis[(i, j, n)] = tuple(sorted(blk, key=lambda e: e.path))
                degree_dim += len(blk)
            for c, p in enumerate(plist):
                if c in pset:
                    r = piv.index(c)
                    combo = []
                    for fc in free:
                        coef = red.rows[r][fc]
                        if coef:
                            combo.append((field.neg(coef), free_elts[fc]))
                    nf[p] = tuple(combo)
                else:
                    nf[p] = ((field.one, free_elts[c]),)
        if degree_dim == 0:
            finite_from = n
            break

    mult = {}
    keys = sorted(basis, key=lambda k: (k[2], k[0], k[1]))
    for k1 in keys:
        i, j, n1 = k1
        for k2 in keys:
            j2, l, n2 = k2
            if j2 != j or n1 + n2 > cap:
                continue
            for g in basis[k1]:
                for f in basis[k2]:
                    combo = nf.get(g.path + f.path[1:], ())
                    if combo:
                        mult[(g.path, f.path)] = combo

    return PathCategory(graph, field, mode, cap, basis, nf, mult,
                        finite_from, rels)


def _combo_key(combo):
    return tuple(sorted((e.path, c) for c, e in combo))


def verify_category(c):
    """Structural self-check; returns a report dict with any failures."""
    g = c.graph
    field = c.field
    failures = []
    notes = []

    for i in g.vertices:
        for j in g.vertices:
            if c.dim(i, j, 0) != (1 if i == j else 0):
                failures.append(f"degree-0 dimension wrong at ({i},{j})")
            if c.dim(i, j, 1) != (1 if g.has_edge(i, j) else 0):
                failures.append(f"degree-1 dimension wrong at ({i},{j})")
            if c.cap >= 2 and c.dim(i, j, 2) != (1 if i == j else 0):
                failures.append(f"degree-2 dimension wrong at ({i},{j})")

    if c.mode == "truncate2":
        want = 2 * len(g.vertices) + 2 * len(g.edges)
        if c.total_dim() != want:
            failures.append(f"total dimension {c.total_dim()} != {want}")

    for key in c.blocks():
        i, j, n = key
        for e in c.basis[key]:
            if e.source != i or e.target != j or e.degree != n:
                failures.append(f"basis element {e.name} filed under wrong block")
            if e.path[0] != i or e.path[-1] != j or len(e.path) != n + 1:
                failures.append(f"basis element {e.name} has inconsistent path")

    elts = c.elements()
    for f in elts:
        lhs = c.compose(f, c.identity(f.source))
        if _combo_key(lhs) != _combo_key(((field.one, f),)):
            failures.append(f"right identity fails for {f.name}")
        lhs = c.compose(c.identity(f.target), f)
        if _combo_key(lhs) != _combo_key(((field.one, f),)):
            failures.append(f"left identity fails for {f.name}")

    for h in elts:
        for gg in elts:
            if gg.target != h.source or gg.degree + h.degree > c.cap:
                continue
            for ff in elts:
                if ff.target != gg.source:
                    continue
                if h.degree + gg.degree + ff.degree > c.cap:
                    continue
                left = {}
                for coef, e in c.compose(h, gg):
                    for coef2, e2 in c.compose(e, ff):
                        k = e2.path
                        left[k] = field.add(left.get(k, field.zero),
                                            field.mul(coef, coef2))
                right = {}
                for coef, e in c.compose(gg, ff):
                    for coef2, e2 in c.compose(h, e):
                        k = e2.path
                        right[k] = field.add(right.get(k, field.zero),
                                             field.mul(coef, coef2))
                left = {k: v for k, v in left.items() if v}
                right = {k: v for k, v in right.items() if v}
                if left != right:
                    failures.append(
                        f"associativity fails on ({h.name},{gg.name},{ff.name})")

    truncation_active = False
    if c.mode == "truncate2":
        lit = build_category(g, field, mode="literal", cap=3)
        deg3 = sum(len(b) for (i, j, n), b in lit.basis.items() if n == 3)
        if deg3:
            if len(g.vertices) > 2:
                failures.append("degree-3 component survives on |V| > 2 graph")
            else:
                truncation_active = True
                notes.append("hypothesis-violating graph: truncation active")
        for key, blk in lit.basis.items():
            if key[2] <= 2 and len(blk) != c.dim(*key):
                failures.append(f"literal/truncate2 dimension mismatch at {key}")

    return {
        "failures": failures,
        "notes": notes,
        "mode": c.mode,
        "cap": c.cap,
        "field": c.field.name,
        "infinite_walk": has_infinite_walk(g),
        "truncation_active": truncation_active,
        "total_dim": c.total_dim(),
        "dims_by_degree": c.dims_by_degree(),
        "finite_from": c.finite_from,
        "ok": not failures,
    }


def _apply_reversal(c, combo_or_elt):
    """Image of a basis combination under path reversal, as a dict."""
    out = {}
    field = c.field
    items = combo_or_elt
    for coef, e in items:
        for coef2, e2 in c.nf[tuple(reversed(e.path))]:
            k = e2
            out[k] = field.add(out.get(k, field.zero), field.mul(coef, coef2))
    return {k: v for k, v in out.items() if v}


def op_dual(c):
    """The opposite category, after verifying path reversal is an
    anti-automorphism (so the category is self-dual under arrow reversal)."""
    field = c.field
    for (i, j, n) in c.blocks():
        if c.dim(i, j, n) != c.dim(j, i, n):
            raise VerificationError(f"asymmetric dimensions at ({i},{j},{n})")
        blk = c.basis[(i, j, n)]
        target = c.basis[(j, i, n)]
        tindex = {e: k for k, e in enumerate(target)}
        cols = []
        for e in blk:
            col = [field.zero] * len(target)
            for coef, e2 in c.nf[tuple(reversed(e.path))]:
                col[tindex[e2]] = coef
            cols.append(col)
        m = Mat.from_cols(field, cols, len(target))
        if linalg.rank(m) != len(blk):
            raise VerificationError(f"reversal not bijective on block ({i},{j},{n})")

    elts = c.elements()
    for f in elts:
        for g in elts:
            if g.target != f.source or f.degree + g.degree > c.cap:
                continue
            lhs = _apply_reversal(c, c.compose(f, g))
            sf = _apply_reversal(c, ((field.one, f),))
            sg = _apply_reversal(c, ((field.one, g),))
            rhs = {}
            for eg, cg in sg.items():
                for ef, cf in sf.items():
                    for coef, e2 in c.mult.get((ef.path, eg.path), ()):
                        val = field.mul(field.mul(cg, cf), coef)
                        rhs[e2] = field.add(rhs.get(e2, field.zero), val)
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                raise VerificationError(
                    f"reversal not anti-multiplicative on ({f.name},{g.name})")

    basis_op = {}
    elt_op = {}
    for (i, j, n), blk in c.basis.items():
        out = []
        for e in blk:
            rp = tuple(reversed(e.path))
            oe = BasisElement(j, i, n, rp, _name_path(rp))
            elt_op[e] = oe
            out.append(oe)
        basis_op[(j, i, n)] = tuple(out)
    nf_op = {}
    for p, combo in c.nf.items():
        nf_op[tuple(reversed(p))] = tuple((coef, elt_op[e]) for coef, e in combo)
    mult_op = {}
    for (gp, fp), combo in c.mult.items():
        key = (tuple(reversed(fp)), tuple(reversed(gp)))
        mult_op[key] = tuple((coef, elt_op[e]) for coef, e in combo)
    return PathCategory(c.graph, field, c.mode, c.cap, basis_op, nf_op,
                        mult_op, c.finite_from, c.relations)

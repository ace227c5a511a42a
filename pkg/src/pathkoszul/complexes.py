"""Cochain complexes of graded modules in nonpositive positions.

A complex holds modules X^n for lo <= n <= 0 with differentials
d^n: X^n -> X^{n+1}, plus an optional augmentation X^0 -> T.  Positions
above 0 are zero by convention; positions below lo are not materialised
and raise Truncated.  All resolutions produced here keep free modules in
every position, so generator data stays available for lifting.

The mapping cone convention: Cone(f)^n = Src^{n+1} (+) Tgt^n with the
source summand listed first and differential (x, y) |->
(-d x, f(x) + d y).
"""

from __future__ import annotations

from . import linalg
from .errors import NotProjective, Truncated, VerificationError, ZeroModule
from .modules import (FreeModule, ModuleHom, direct_sum, free_module,
                      hom_from_generators, kernel, projective_cover,
                      zero_hom)


class Complex:
    """Bounded complex in positions lo..0 with optional augmentation."""

    __slots__ = ("cat", "modules", "diffs", "aug", "lo", "_zero")

    def __init__(self, cat, modules, diffs, aug, lo):
        assert lo <= 0
        assert sorted(modules) == list(range(lo, 1))
        assert sorted(diffs) == list(range(lo, 0))
        self.cat = cat
        self.modules = modules
        self.diffs = diffs
        self.aug = aug
        self.lo = lo
        self._zero = None
        for n, d in diffs.items():
            assert d.source == modules[n] and d.target == modules[n + 1]
        if aug is not None:
            assert aug.source == modules[0]

    def _zero_module(self):
        if self._zero is None:
            self._zero = free_module(self.cat, [])
        return self._zero

    def module(self, n):
        if n > 0:
            return self._zero_module()
        if n < self.lo:
            raise Truncated(f"position {n} below materialised bound {self.lo}")
        return self.modules[n]

    def diff(self, n):
        if n >= 0:
            return zero_hom(self.module(n), self.module(n + 1))
        if n < self.lo:
            raise Truncated(f"position {n} below materialised bound {self.lo}")
        return self.diffs[n]

    def shift_degree(self, s):
        """Apply the degree shift <s> to every module in place-by-place."""
        mods = {n: m.shift(s) for n, m in self.modules.items()}
        diffs = {}
        for n, d in self.diffs.items():
            blocks = {(v, dd - s): blk for (v, dd), blk in d.blocks.items()}
            diffs[n] = ModuleHom(mods[n], mods[n + 1], blocks)
        aug = None
        if self.aug is not None:
            blocks = {(v, dd - s): blk for (v, dd), blk in self.aug.blocks.items()}
            aug = ModuleHom(mods[0], self.aug.target.shift(s), blocks)
        return Complex(self.cat, mods, diffs, aug, self.lo)

    def validate(self):
        """Check d after d vanishes, and the augmentation kills d^{-1}."""
        for n in range(self.lo, -1):
            comp = self.diff(n + 1).compose(self.diff(n))
            if not comp.is_zero():
                raise VerificationError(f"d^{n + 1} after d^{n} is nonzero")
        if self.aug is not None and self.lo <= -1:
            if not self.aug.compose(self.diff(-1)).is_zero():
                raise VerificationError("augmentation does not kill d^{-1}")

    @staticmethod
    def concentrated(module, lo):
        """The complex with the given free module in position 0, zero
        elsewhere, augmented by the identity."""
        cat = module.cat
        mods = {n: free_module(cat, []) for n in range(lo, 0)}
        mods[0] = module
        diffs = {n: zero_hom(mods[n], mods[n + 1]) for n in range(lo, 0)}
        aug = ModuleHom(module, module,
                        {(v, d): linalg.Mat.identity(cat.field, k)
                         for (v, d), k in module.dims.items()})
        return Complex(cat, mods, diffs, aug, lo)


class ChainMap:
    """Position-wise hom between complexes commuting with differentials."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source, target, comps):
        self.source = source
        self.target = target
        self.comps = comps

    def comp(self, n):
        if n > 0:
            return zero_hom(self.source.module(n), self.target.module(n))
        return self.comps[n]

    def verify(self):
        lo = max(self.source.lo, self.target.lo)
        for n in range(lo, 0):
            lhs = self.comp(n + 1).compose(self.source.diff(n))
            rhs = self.target.diff(n).compose(self.comp(n))
            if not lhs.sub(rhs).is_zero():
                raise VerificationError(f"chain map square at {n} does not commute")


def minimal_resolution(m, positions):
    """Iterated projective covers of m, materialised to the given depth."""
    if m.is_zero():
        raise ZeroModule("cannot resolve the zero module")
    assert positions >= 0
    cat = m.cat
    cover, aug = projective_cover(m)
    modules = {0: cover}
    diffs = {}
    k, incl = kernel(aug)
    prev = cover
    for step in range(1, positions + 1):
        if k.is_zero():
            cov = free_module(cat, [])
            diffs[-step] = zero_hom(cov, prev)
        else:
            cov, q = projective_cover(k)
            diffs[-step] = incl.compose(q)
            k, incl = kernel(q)
        modules[-step] = cov
        prev = cov
    return Complex(cat, modules, diffs, aug, -positions)


def homology(x, n):
    """Graded dimensions of H^n; needs positions n-1 and n materialised.

    Assumes d after d vanishes (so image sits inside kernel)."""
    if n > 0:
        return {}
    if n - 1 < x.lo:
        raise Truncated(f"homology at {n} needs position {n - 1}")
    dn = x.diff(n)
    dprev = x.diff(n - 1)
    out = {}
    mod = x.module(n)
    for (v, d), dim in mod.dims.items():
        r1 = linalg.rank(dn.block(v, d)) if (v, d) in dn.blocks else 0
        r0 = linalg.rank(dprev.block(v, d)) if (v, d) in dprev.blocks else 0
        h = dim - r1 - r0
        assert h >= 0, "image escapes kernel; complex not validated"
        if h:
            out[(v, d)] = h
    return out


def is_exact_resolution(x, target):
    """Full verification that x is an exact resolution of target.

    Checks the augmentation target, d after d = 0, surjectivity onto the
    target, exactness at position 0 relative to the augmentation, and
    vanishing homology at every inner position.  Position lo itself
    cannot be certified (its incoming kernel is not materialised).
    Returns a list of failure strings, empty when everything holds.
    """
    failures = []
    if x.aug is None:
        return ["complex has no augmentation"]
    if not (x.aug.target == target):
        failures.append("augmentation target differs from the expected module")
    for n in range(x.lo, -1):
        if not x.diff(n + 1).compose(x.diff(n)).is_zero():
            failures.append(f"d after d nonzero at position {n}")
    if x.lo <= -1 and not x.aug.compose(x.diff(-1)).is_zero():
        failures.append("augmentation does not kill d^{-1}")
    if failures:
        return failures

    rank_tables = {}
    for n in range(x.lo, 0):
        rank_tables[n] = {k: linalg.rank(blk)
                          for k, blk in x.diff(n).blocks.items()}
    aug_ranks = {k: linalg.rank(blk) for k, blk in x.aug.blocks.items()}

    for (v, d), dim in target.dims.items():
        if aug_ranks.get((v, d), 0) != dim:
            failures.append(f"augmentation not surjective at {(v, d)}")
    x0 = x.module(0)
    for (v, d), dim in x0.dims.items():
        ker_dim = dim - aug_ranks.get((v, d), 0)
        im_dim = rank_tables.get(-1, {}).get((v, d), 0) if x.lo <= -1 else 0
        if ker_dim != im_dim:
            failures.append(f"not exact at position 0, piece {(v, d)}")
    for n in range(x.lo + 1, 0):
        mod = x.module(n)
        for (v, d), dim in mod.dims.items():
            ker_dim = dim - rank_tables[n].get((v, d), 0)
            im_dim = rank_tables[n - 1].get((v, d), 0)
            if ker_dim != im_dim:
                failures.append(f"not exact at position {n}, piece {(v, d)}")
    return failures


def lift_to_chain_map(f, p, q):
    """Lift a hom of resolved targets to a chain map p -> q.

    p must consist of free modules; q must be materialised at least as
    deep as p and be exact where the lift is solved for (this guarantees
    consistency of every linear solve)."""
    if q.lo > p.lo:
        raise Truncated("target resolution is too shallow to lift through")
    assert p.aug is not None and q.aug is not None
    comps = {}

    def solve_generators(src_free, amb, lhs, rhs_hom):
        """Images y per generator with lhs.block @ y = rhs_hom column."""
        if not isinstance(src_free, FreeModule):
            raise NotProjective("lift requires free source positions")
        images = []
        by_slot = {}
        for idx in range(len(src_free.summands)):
            v, d, pos = src_free.generator_position(idx)
            by_slot.setdefault((v, d), []).append((idx, pos))
            images.append(None)
        for (v, d), entries in sorted(by_slot.items()):
            a = lhs.block(v, d)
            rhs = rhs_hom.block(v, d)
            cols = linalg.Mat.from_cols(
                a.field, [rhs.col(pos) for _, pos in entries], rhs.nrows)
            sol = linalg.solve_many(a, cols)
            if sol is None:
                raise VerificationError("lift solve inconsistent; target not exact")
            for t, (idx, _) in enumerate(entries):
                images[idx] = sol.col(t)
        return hom_from_generators(src_free, amb, images)

    rhs0 = f.compose(p.aug)
    comps[0] = solve_generators(p.module(0), q.module(0), q.aug, rhs0)
    for n in range(-1, p.lo - 1, -1):
        rhs = comps[n + 1].compose(p.diff(n))
        comps[n] = solve_generators(p.module(n), q.module(n), q.diff(n), rhs)
    return ChainMap(p, q, comps)


def cone(f):
    """Mapping cone of a chain map; source summands listed first."""
    p, q = f.source, f.target
    lo = max(p.lo - 1, q.lo)
    mods = {}
    injs = {}
    projs = {}
    for n in range(lo, 1):
        total, inj, proj = direct_sum([p.module(n + 1), q.module(n)])
        mods[n] = total
        injs[n] = inj
        projs[n] = proj
    diffs = {}
    for n in range(lo, 0):
        to_p = injs[n + 1][0].compose(p.diff(n + 1).neg()).compose(projs[n][0])
        to_q_f = injs[n + 1][1].compose(f.comp(n + 1)).compose(projs[n][0])
        to_q_d = injs[n + 1][1].compose(q.diff(n)).compose(projs[n][1])
        diffs[n] = to_p.add(to_q_f).add(to_q_d)
    return Complex(p.cat, mods, diffs, None, lo), injs, projs


def direct_sum_complexes(parts):
    """Position-wise direct sum; augmentations combine onto the direct
    sum of the resolved targets (in the given part order)."""
    assert parts
    lo = parts[0].lo
    assert all(x.lo == lo for x in parts)
    cat = parts[0].cat
    mods = {}
    injs = {}
    projs = {}
    for n in range(lo, 1):
        total, inj, proj = direct_sum([x.module(n) for x in parts])
        mods[n] = total
        injs[n] = inj
        projs[n] = proj
    diffs = {}
    for n in range(lo, 0):
        acc = zero_hom(mods[n], mods[n + 1])
        for t, x in enumerate(parts):
            acc = acc.add(injs[n + 1][t].compose(x.diff(n)).compose(projs[n][t]))
        diffs[n] = acc
    aug = None
    if all(x.aug is not None for x in parts):
        tgt_total, tgt_inj, _ = direct_sum([x.aug.target for x in parts])
        acc = zero_hom(mods[0], tgt_total)
        for t, x in enumerate(parts):
            acc = acc.add(tgt_inj[t].compose(x.aug).compose(projs[0][t]))
        aug = acc
    return Complex(cat, mods, diffs, aug, lo)


def linearity_profile(x):
    """Map position -> sorted generation degrees of that free module."""
    out = {}
    for n in range(x.lo, 1):
        mod = x.module(n)
        if not isinstance(mod, FreeModule):
            if mod.is_zero():
                out[n] = ()
                continue
            raise NotProjective(f"position {n} carries no free-module structure")
        out[n] = tuple(sorted({d for (_, d) in mod.summands}))
    return out


def linear_up_to(x):
    """Largest m with every position -k, k <= m, generated purely in
    degree k (zero positions count as linear)."""
    profile = linearity_profile(x)
    best = -1
    for k in range(0, -x.lo + 1):
        degs = profile[-k]
        if all(d == k for d in degs):
            best = k
        else:
            break
    return best

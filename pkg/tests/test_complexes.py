import pytest

from pathkoszul import (
    Truncated,
    VerificationError,
    cone,
    direct_sum_complexes,
    hom_space,
    homology,
    is_exact_resolution,
    lift_to_chain_map,
    linear_up_to,
    linearity_profile,
    minimal_resolution,
    projective,
    simple,
    standard_mw,
)
from pathkoszul.complexes import ChainMap, Complex
from pathkoszul.modules import identity_hom, zero_hom


def test_minimal_resolution_of_simple(cat):
    c = cat("c3")
    res = minimal_resolution(simple(c, 1), 3)
    res.validate()
    assert is_exact_resolution(res, simple(c, 1)) == []
    # linear with one more summand per step
    for n in range(0, 4):
        mod = res.module(-n)
        assert len(mod.summands) == n + 1
        assert all(d == n for (_, d) in mod.summands), n
    assert linear_up_to(res) >= 3
    assert linearity_profile(res)[-2] == (2,)


def test_homology_of_resolution(cat):
    c = cat("c4")
    m = standard_mw(c, [2, 4], 1)
    res = minimal_resolution(m, 3)
    assert homology(res, 0) == dict(m.dims)
    for n in (-1, -2):
        assert homology(res, n) == {}
    with pytest.raises(Truncated):
        homology(res, -3)  # needs position -4


def test_concentrated_resolves_itself(cat):
    c = cat("c3")
    p = projective(c, 2, -1)
    x = Complex.concentrated(p, -2)
    x.validate()
    assert is_exact_resolution(x, p) == []
    assert x.module(-1).is_zero()
    assert x.module(5).is_zero()
    with pytest.raises(Truncated):
        x.module(-3)


def test_shift_degree(cat):
    c = cat("c3")
    res = minimal_resolution(simple(c, 1), 2)
    sh = res.shift_degree(-1)
    sh.validate()
    assert is_exact_resolution(sh, simple(c, 1, -1)) == []
    assert sh.module(0).summand_multiset() == ((1, -1),)


def test_cone_of_zero_map_adds_homology(cat):
    c = cat("c3")
    p = Complex.concentrated(projective(c, 1), -2)
    q = Complex.concentrated(projective(c, 2), -2)
    z = ChainMap(p, q, {n: zero_hom(p.module(n), q.module(n))
                        for n in range(-2, 1)})
    z.verify()
    mapping_cone, _, _ = cone(z)
    mapping_cone.validate()
    assert homology(mapping_cone, 0) == dict(projective(c, 2).dims)
    assert homology(mapping_cone, -1) == dict(projective(c, 1).dims)


def test_cone_of_identity_is_acyclic(cat):
    c = cat("c3")
    p = Complex.concentrated(projective(c, 1), -1)
    f = ChainMap(p, p, {n: identity_hom(p.module(n)) for n in range(-1, 1)})
    mapping_cone, _, _ = cone(f)
    mapping_cone.validate()
    assert homology(mapping_cone, 0) == {}


def test_cone_homology_bound(cat):
    """dim H^n(cone f) never exceeds dim H^{n+1}(src) + dim H^n(tgt)."""
    c = cat("tri_pendant")
    m = standard_mw(c, [1, 2], 3)
    p = minimal_resolution(m.shift(-1), 3)
    q = Complex.concentrated(projective(c, 3), -3)
    maps = hom_space(m.shift(-1), projective(c, 3))
    assert maps
    f = lift_to_chain_map(maps[0], p, q)
    f.verify()
    mapping_cone, _, _ = cone(f)
    mapping_cone.validate()
    for n in range(mapping_cone.lo + 1, 1):
        hc = sum(homology(mapping_cone, n).values())
        hp = sum(homology(p, n + 1).values()) if n + 1 <= 0 else 0
        hq = sum(homology(q, n).values())
        assert hc <= hp + hq, n


def test_lift_to_chain_map_commutes(cat):
    c = cat("c3")
    m = standard_mw(c, [2, 3], 1)
    sub = m.shift(-1)
    p1 = projective(c, 1)
    maps = hom_space(sub, p1)
    assert len(maps) == 1
    p = minimal_resolution(sub, 2)
    q = Complex.concentrated(p1, -2)
    lift = lift_to_chain_map(maps[0], p, q)
    lift.verify()
    # square with the augmentations commutes
    assert q.aug.compose(lift.comp(0)) == maps[0].compose(p.aug)
    with pytest.raises(Truncated):
        lift_to_chain_map(maps[0], p, Complex.concentrated(p1, -1))


def test_direct_sum_complexes(cat):
    c = cat("c3")
    a = minimal_resolution(simple(c, 1), 2)
    b = minimal_resolution(simple(c, 2), 2)
    total = direct_sum_complexes([a, b])
    total.validate()
    for n in range(-2, 1):
        assert total.module(n).total_dim() == (
            a.module(n).total_dim() + b.module(n).total_dim())
    assert total.aug.target.total_dim() == 2
    assert is_exact_resolution(total, total.aug.target) == []


def test_is_exact_resolution_detects_corruption(cat):
    c = cat("c3")
    res = minimal_resolution(simple(c, 1), 2)
    # wrong target
    assert is_exact_resolution(res, simple(c, 2)) != []
    # truncated augmentation: drop the last differential
    broken = Complex(
        c,
        {n: res.module(n) for n in range(-1, 1)},
        {-1: zero_hom(res.module(-1), res.module(0))},
        res.aug,
        -1,
    )
    fails = is_exact_resolution(broken, simple(c, 1))
    assert any("not exact" in f for f in fails)


def test_validate_rejects_bad_augmentation(cat):
    c = cat("c3")
    p = projective(c, 1)
    base = Complex.concentrated(p, -1)
    # a nonzero differential under an identity augmentation cannot validate
    bad = Complex(c, {0: p, -1: p}, {-1: identity_hom(p)}, base.aug, -1)
    with pytest.raises(VerificationError):
        bad.validate()

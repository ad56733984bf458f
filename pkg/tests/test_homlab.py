import random

import pytest

from bsskein.dmod import DMorphism, compose, identity_morphism, morphism_boundary
from bsskein.homlab import (
    MorComplex,
    build_equivalence,
    skein_equivalence,
    solve_boundary,
    verify_triangle,
)
from bsskein.models import K_ORDER, read_golden

KS = list(K_ORDER)

# dim Mor(B_src, B_tgt) and rank of its boundary, rows and columns in the order 1, infty, 0
MOR_DIMS = [[24, 54, 30], [50, 160, 110], [26, 106, 80]]
MOR_RANKS = [[11, 26, 14], [24, 79, 54], [12, 52, 39]]


@pytest.fixture(scope="module")
def mors(fx):
    return {(i, j): MorComplex(fx.bsd(a), fx.bsd(b)) for i, a in enumerate(KS) for j, b in enumerate(KS)}


@pytest.fixture(scope="module")
def maps(fx):
    return {k: fx.skein_map(k) for k in KS}, {k: fx.skein_homotopy(k) for k in KS}


def test_mor_dimensions(mors):
    for (i, j), c in mors.items():
        assert c.dim == MOR_DIMS[i][j]
        assert c.rank == MOR_RANKS[i][j]
        assert c.boundary_squared_zero()


def test_vector_roundtrip(fx, mors):
    c = mors[(1, 2)]
    f = fx.skein_map("infty")
    assert c.morphism(c.vector(f)) == f
    assert c.vector(morphism_boundary(f)) == c.apply(c.vector(f))


def test_vector_rejects_wrong_complex(fx, mors):
    with pytest.raises(ValueError):
        mors[(0, 0)].vector(fx.skein_map("infty"))


def test_solve_boundary_on_random_boundaries(mors):
    rng = random.Random(11)
    c = mors[(1, 1)]
    for _ in range(25):
        v = rng.getrandbits(c.dim)
        target = c.morphism(c.apply(v))
        sol = solve_boundary(c, target)
        assert sol.solvable
        assert morphism_boundary(sol.witness) == target


def test_identity_is_not_a_boundary(fx, mors):
    # B_1 has nonzero homology, so Id cannot be null-homotopic
    sol = solve_boundary(mors[(0, 0)], identity_morphism(fx.bsd("1")))
    assert not sol.solvable and sol.rank_augmented == sol.rank + 1


def test_triangle_holds(maps):
    fs, phis = maps
    rep = verify_triangle(fs, phis)
    assert rep.passed, rep.failed()
    assert len(rep.certificates) == 9


def test_zero_triangle_fails_only_cond3(fx):
    zf = {k: DMorphism(fx.bsd(k), fx.bsd(k.succ), {}) for k in KS}
    zphi = {k: DMorphism(fx.bsd(k), fx.bsd(k.succ.succ), {}) for k in KS}
    rep = verify_triangle(zf, zphi)
    assert rep.failed() == ["cond3.0", "cond3.1", "cond3.infty"]
    for c in rep.failed():
        assert any("null-homotopic: False" in w for w in rep.certificates[c].witness)


def test_dropping_homotopies_breaks_cond2(fx, maps):
    fs, _ = maps
    zphi = {k: DMorphism(fx.bsd(k), fx.bsd(k.succ.succ), {}) for k in KS}
    failed = verify_triangle(fs, zphi).failed()
    # phi_1 vanishes already, so only the other two squares need a homotopy
    assert "cond2.1" not in failed
    assert {"cond2.infty", "cond2.0"} <= set(failed)


def test_triangle_detects_cond2_corruption(fx, maps):
    fs, phis = maps
    bad = dict(phis)
    phi = phis[K_ORDER[1]]
    x, g, y = next(iter(phi.terms()))
    from bsskein.algebra import AlgebraElement

    bad[K_ORDER[1]] = phi + DMorphism(phi.source, phi.target, [(x, AlgebraElement(fx.bsd("1").diagram, [g]), y)])
    rep = verify_triangle(fs, bad)
    assert "cond2.infty" in rep.failed()


@pytest.mark.parametrize("k", KS, ids=str)
def test_equivalence(k, fx):
    eq = skein_equivalence(k, fx)
    assert eq.passed
    assert compose(eq.Psi, eq.G) == identity_morphism(fx.bsd(k))
    assert morphism_boundary(eq.H) == compose(eq.G, eq.Psi) + identity_morphism(eq.cone)


@pytest.mark.parametrize("k", KS, ids=str)
def test_equivalence_witness_is_golden(k, fx, maps):
    fs, phis = maps
    eq = build_equivalence(k, fs, phis)
    stored = read_golden(f"cone_homotopy_{k}.json")
    assert DMorphism.from_json(eq.cone, eq.cone, stored) == eq.H
    assert eq.cone.name == f"Cone(f{k.succ})"


def test_certificate_json(fx, maps):
    fs, phis = maps
    eq = build_equivalence(K_ORDER[0], fs, phis)
    blob = [c.to_json() for c in eq.certificates]
    assert [b["status"] for b in blob] == ["pass"] * 5
    assert "witness_morphism" in blob[-1]
    assert set(blob[0]) >= {"identity", "status", "witness"}

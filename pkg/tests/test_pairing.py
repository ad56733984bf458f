import pytest

from bsskein.algebra import enumerate_basis
from bsskein.dmod import mapping_cone
from bsskein.models import K_ORDER
from bsskein.pairing import (
    BoxComplex,
    ChainMap,
    box_morphism,
    box_tensor,
    chain_cone,
    cone_identification,
    regular_module,
    simple_module,
)

KS = list(K_ORDER)
BOX_SIZES = {"1": 82, "infty": 262, "0": 180}


@pytest.fixture(scope="module")
def reg():
    return regular_module()


@pytest.mark.parametrize("k", KS, ids=str)
def test_box_tensor_squares_to_zero(reg, fx, k):
    b = box_tensor(reg, fx.bsd(k))
    assert len(b) == BOX_SIZES[str(k)]
    assert b.squares_to_zero()


def test_regular_module_actions(reg, z):
    assert len(reg.generators) == len(enumerate_basis(z, 5))
    assert reg.max_arity == 2
    g = reg.generators[-1]
    assert reg.m(g, g, g) == frozenset()  # no m_3


@pytest.mark.parametrize("k", KS, ids=str)
def test_id_box_f_is_chain_map(reg, fx, k):
    phi = box_morphism(reg, fx.skein_map(k))
    assert phi.is_chain_map()


@pytest.mark.parametrize("k", KS, ids=str)
def test_cone_commutes_with_pairing(reg, fx, k):
    f = fx.skein_map(k)
    cone = mapping_cone(f)
    left = chain_cone(box_morphism(reg, f))
    right = box_tensor(reg, cone)
    ident = cone_identification(reg, f, cone)
    assert len(ident) == len(left) == len(right)
    assert set(ident.values()) == set(right.generators)
    for g in left.generators:
        assert frozenset(ident[h] for h in left.boundary[g]) == right.boundary[ident[g]]


def test_pairing_is_functorial(reg, fx):
    f, g = fx.skein_map("1"), fx.skein_map("infty")
    from bsskein.dmod import compose

    a = box_morphism(reg, f)
    b = box_morphism(reg, g, source=a.target)
    gf = box_morphism(reg, compose(g, f), source=a.source, target=b.target)
    assert b.compose_after(a) == gf


def test_simple_module_pairing(z, fx):
    # pairing with a simple module keeps the generators in that idempotent and the idempotent part of delta
    m = fx.bsd("infty")
    for idem in {m.idem[g] for g in m.generators}:
        s = simple_module(z, idem)
        b = box_tensor(s, m)
        assert {x for _, x in b.generators} == {g for g in m.generators if m.idem[g] == idem}
        assert b.squares_to_zero()


def test_box_complex_json():
    c = BoxComplex(("a", "b"), {"a": frozenset({"b"}), "b": frozenset()})
    doc = c.to_json()
    assert doc["generators"] == ["a", "b"] and doc["boundary"] == [[1, 0]]
    assert c.squares_to_zero()
    phi = ChainMap(c, c, {"a": frozenset({"a"}), "b": frozenset({"b"})})
    assert phi.is_chain_map()
    assert len(chain_cone(phi)) == 4

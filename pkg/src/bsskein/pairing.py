"""Right modules over the algebra and the box tensor product.

A ``TypeAStructure`` carries operations ``m_{1+j}(n, a_1, ..., a_j)`` for
``0 <= j < max_arity``.  The box tensor with a type-D structure ``M`` is
the chain complex on pairs ``n ⊗ x`` with matching idempotents and

    ∂(n ⊗ x) = Σ_j Σ m_{1+j}(n, a_1, ..., a_j) ⊗ y,

summed over the terms ``a_1 ⊗ ... ⊗ a_j ⊗ y`` of the j-fold iterate of
delta.  Only differential (arity <= 2) modules are built here, but the
formulas below handle any finite arity.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import Callable, Hashable, Iterator, Mapping, Sequence

from .algebra import (
    AlgebraElement,
    StrandsGenerator,
    diff,
    enumerate_basis,
    generator_text,
    mul,
    right_idem,
)
from .diagram import ArcDiagram, build_skein_arc_diagram
from .dmod import DMorphism, TypeDStructure

__all__ = [
    "TypeAStructure",
    "regular_module",
    "simple_module",
    "BoxComplex",
    "ChainMap",
    "box_tensor",
    "box_morphism",
    "chain_cone",
    "cone_identification",
]

Operation = Callable[[Hashable, Sequence[StrandsGenerator]], frozenset]


@dataclass(frozen=True)
class TypeAStructure:
    """Generators with right idempotents and operations m_1, ..., m_{max_arity}.

    ``op(n, algs)`` returns the set of generators in m_{1+len(algs)}(n, *algs).
    """

    diagram: ArcDiagram
    generators: tuple
    right_idem: Mapping[Hashable, frozenset]
    op: Operation
    max_arity: int
    label: Callable[[Hashable], str] = str

    def m(self, n, *algs: StrandsGenerator) -> frozenset:
        if 1 + len(algs) > self.max_arity:
            return frozenset()
        return self.op(n, tuple(algs))


def regular_module(d: ArcDiagram | None = None, k: int = 5) -> TypeAStructure:
    """A(d, k) as a right module over itself: m_1 = d, m_2 = multiplication."""
    return _regular(d or build_skein_arc_diagram(), k)


@cache
def _regular(d: ArcDiagram, k: int) -> TypeAStructure:
    basis = tuple(enumerate_basis(d, k))

    @cache
    def op(n, algs):
        if len(algs) == 0:
            return diff(AlgebraElement(d, [n])).terms
        if len(algs) == 1:
            return mul(AlgebraElement(d, [n]), AlgebraElement(d, [algs[0]])).terms
        return frozenset()

    return TypeAStructure(d, basis, {g: right_idem(d, g) for g in basis}, op, 2, generator_text)


def simple_module(d: ArcDiagram, idem: frozenset, name: str = "e") -> TypeAStructure:
    """One generator with right idempotent ``idem`` and only trivial actions."""

    def op(n, algs):
        if len(algs) == 1 and not algs[0].moving and frozenset(algs[0].occupied) == idem:
            return frozenset({n})
        return frozenset()

    return TypeAStructure(d, (name,), {name: frozenset(idem)}, op, 2)


# -- chain complexes -------------------------------------------------------------------

@dataclass
class BoxComplex:
    """An F2 chain complex on an ordered list of generators."""

    generators: tuple
    boundary: Mapping[Hashable, frozenset]
    label: Callable[[Hashable], str] = str

    def d(self, g) -> frozenset:
        return self.boundary[g]

    def apply(self, chain: frozenset) -> frozenset:
        out: set = set()
        for g in chain:
            out ^= self.boundary[g]
        return frozenset(out)

    def squares_to_zero(self) -> bool:
        return all(not self.apply(self.boundary[g]) for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def to_json(self) -> dict:
        index = {g: i for i, g in enumerate(self.generators)}
        entries = sorted([index[h], index[g]] for g in self.generators for h in self.boundary[g])
        return {
            "generators": [self.label(g) for g in self.generators],
            "boundary": entries,
            "note": "each [row, col] pair means generator row occurs in the boundary of generator col",
        }


@dataclass
class ChainMap:
    source: BoxComplex
    target: BoxComplex
    table: Mapping[Hashable, frozenset]

    def apply(self, chain: frozenset) -> frozenset:
        out: set = set()
        for g in chain:
            out ^= self.table[g]
        return frozenset(out)

    def is_chain_map(self) -> bool:
        return all(
            self.apply(self.source.boundary[g]) == self.target.apply(self.table[g])
            for g in self.source.generators
        )

    def compose_after(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        return ChainMap(other.source, self.target, {g: self.apply(other.table[g]) for g in other.source.generators})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return dict(self.table) == dict(other.table)

    __hash__ = None


def _delta_paths(m: TypeDStructure, x: str, j: int) -> Iterator[tuple[tuple[StrandsGenerator, ...], str]]:
    """Terms a_1 ⊗ ... ⊗ a_j ⊗ y of the j-fold iterate of delta at x."""
    if j == 0:
        yield (), x
        return
    for y, a in m.delta[x].items():
        for g in a:
            for rest, z in _delta_paths(m, y, j - 1):
                yield (g,) + rest, z


def _box_label(n_module: TypeAStructure):
    return lambda gx: f"{n_module.label(gx[0])}⊗{gx[1]}"


def box_tensor(n_module: TypeAStructure, m: TypeDStructure) -> BoxComplex:
    gens = tuple(
        (n, x) for n in n_module.generators for x in m.generators if n_module.right_idem[n] == m.idem[x]
    )
    boundary = {}
    for n, x in gens:
        acc: set = set()
        for j in range(n_module.max_arity):
            for algs, y in _delta_paths(m, x, j):
                for n2 in n_module.m(n, *algs):
                    acc ^= {(n2, y)}
        boundary[(n, x)] = frozenset(acc)
    return BoxComplex(gens, boundary, _box_label(n_module))


def box_morphism(n_module: TypeAStructure, f: DMorphism,
                 source: BoxComplex | None = None, target: BoxComplex | None = None) -> ChainMap:
    """Id ⊠ f: sums m_{1+j}(n, a_1, ..., a_j) ⊗ y over paths with exactly one f step."""
    source = source or box_tensor(n_module, f.source)
    target = target or box_tensor(n_module, f.target)
    table = {}
    for n, x in source.generators:
        acc: set = set()
        for j in range(1, n_module.max_arity):
            for i in range(j):  # i delta steps in the source, then f, then the rest in the target
                for pre, w in _delta_paths(f.source, x, i):
                    for y, a in f.table[w].items():
                        for g in a:
                            for post, z in _delta_paths(f.target, y, j - i - 1):
                                for n2 in n_module.m(n, *pre, g, *post):
                                    acc ^= {(n2, z)}
        table[(n, x)] = frozenset(acc)
    return ChainMap(source, target, table)


def chain_cone(phi: ChainMap, tag_source: str = "s", tag_target: str = "t") -> BoxComplex:
    """Cone of a chain map: ∂(c, d) = (∂c, φ(c) + ∂d), generators tagged by side."""
    gens = tuple((tag_source, g) for g in phi.source.generators) + tuple(
        (tag_target, g) for g in phi.target.generators
    )
    boundary = {}
    for g in phi.source.generators:
        boundary[(tag_source, g)] = frozenset((tag_source, h) for h in phi.source.boundary[g]) | frozenset(
            (tag_target, h) for h in phi.table[g]
        )
    for g in phi.target.generators:
        boundary[(tag_target, g)] = frozenset((tag_target, h) for h in phi.target.boundary[g])
    return BoxComplex(gens, boundary, lambda t: f"{t[0]}:{phi.source.label(t[1])}")


def cone_identification(n_module: TypeAStructure, f: DMorphism, cone: TypeDStructure) -> dict:
    """(side, (n, x)) in Cone(Id ⊠ f)  ->  (n, cone name of x) in N ⊠ Cone(f)."""
    sn, tn = cone.cone_names.source, cone.cone_names.target
    out = {}
    for n in n_module.generators:
        for x in f.source.generators:
            if n_module.right_idem[n] == f.source.idem[x]:
                out[("s", (n, x))] = (n, sn[x])
        for y in f.target.generators:
            if n_module.right_idem[n] == f.target.idem[y]:
                out[("t", (n, y))] = (n, tn[y])
    return out

"""F2 linear algebra on morphism complexes.

``Mor(M, N)`` is finite dimensional: its basis consists of elementary
morphisms sending one generator ``x`` of ``M`` to ``b ⊗ y`` for a basis
element ``b`` of the algebra with matching idempotents.  Vectors in this
basis are Python integers used as bit sets (bit ``i`` is basis element
``i``), so a column of the boundary matrix is a single integer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .algebra import AlgebraElement, StrandsGenerator, enumerate_basis, generator_text, left_idem, right_idem
from .dmod import (
    DMorphism,
    TypeDStructure,
    compose,
    identity_morphism,
    mapping_cone,
    morphism_boundary,
)

__all__ = [
    "MorComplex",
    "mor_basis",
    "BoundarySolution",
    "solve_boundary",
    "Certificate",
    "TriangleReport",
    "verify_triangle",
    "Equivalence",
    "skein_equivalence",
    "build_equivalence",
]


class MorComplex:
    """Mor(source, target) with its elementary basis and boundary matrix."""

    def __init__(self, source: TypeDStructure, target: TypeDStructure):
        self.source = source
        self.target = target
        d = source.diagram
        k = len(next(iter(source.idem.values()))) if source.idem else 0
        by_idems: dict[tuple, list[StrandsGenerator]] = {}
        for g in enumerate_basis(d, k):
            by_idems.setdefault((left_idem(d, g), right_idem(d, g)), []).append(g)
        basis = []
        for x in source.generators:
            for y in target.generators:
                for g in by_idems.get((source.idem[x], target.idem[y]), []):
                    basis.append((x, g, y))
        self.basis: tuple[tuple[str, StrandsGenerator, str], ...] = tuple(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vector(self, f: DMorphism) -> int:
        """Coordinates of ``f``; raises if ``f`` leaves the basis span."""
        if f.source != self.source or f.target != self.target:
            raise ValueError("morphism does not belong to this complex")
        v = 0
        for term in f.terms():
            i = self.index.get(term)
            if i is None:
                raise ValueError(f"term {term[0]} -> {generator_text(term[1])} ⊗ {term[2]} is outside the basis")
            v ^= 1 << i
        return v

    def morphism(self, v: int) -> DMorphism:
        entries = []
        i = 0
        while v:
            if v & 1:
                x, g, y = self.basis[i]
                entries.append((x, AlgebraElement(self.source.diagram, [g]), y))
            v >>= 1
            i += 1
        return DMorphism(self.source, self.target, entries)

    @cached_property
    def boundary_columns(self) -> tuple[int, ...]:
        cols = []
        for x, g, y in self.basis:
            e = DMorphism(self.source, self.target, [(x, AlgebraElement(self.source.diagram, [g]), y)])
            cols.append(self.vector(morphism_boundary(e)))
        return tuple(cols)

    def apply(self, v: int) -> int:
        out = 0
        cols = self.boundary_columns
        i = 0
        while v:
            if v & 1:
                out ^= cols[i]
            v >>= 1
            i += 1
        return out

    def boundary_squared_zero(self) -> bool:
        return all(self.apply(c) == 0 for c in self.boundary_columns)

    @cached_property
    def _echelon(self) -> dict[int, tuple[int, int]]:
        """Pivot bit -> (reduced column, combination of original columns)."""
        pivots: dict[int, tuple[int, int]] = {}
        for j, col in enumerate(self.boundary_columns):
            v, combo = col, 1 << j
            while v:
                low = v & -v
                hit = pivots.get(low)
                if hit is None:
                    pivots[low] = (v, combo)
                    break
                v ^= hit[0]
                combo ^= hit[1]
        return pivots

    @property
    def rank(self) -> int:
        return len(self._echelon)


def mor_basis(m: TypeDStructure, n: TypeDStructure) -> MorComplex:
    return MorComplex(m, n)


@dataclass
class BoundarySolution:
    """Outcome of solving ∂H = c; ``witness`` is None when no H exists."""

    witness: DMorphism | None
    rank: int
    rank_augmented: int

    @property
    def solvable(self) -> bool:
        return self.witness is not None


def solve_boundary(c_complex: MorComplex, c: DMorphism) -> BoundarySolution:
    """Gaussian elimination with lowest-index pivots; deterministic witnesses."""
    target = c_complex.vector(c)
    pivots = c_complex._echelon
    v, combo = target, 0
    while v:
        low = v & -v
        hit = pivots.get(low)
        if hit is None:
            rank = len(pivots)
            return BoundarySolution(None, rank, rank + 1)
        v ^= hit[0]
        combo ^= hit[1]
    h = c_complex.morphism(combo)
    if c_complex.apply(combo) != target:
        raise AssertionError("elimination produced a wrong witness")
    return BoundarySolution(h, len(pivots), len(pivots))


# -- certificates ---------------------------------------------------------------------

@dataclass
class Certificate:
    identity: str
    status: bool
    witness: list[str] = field(default_factory=list)
    morphism: DMorphism | None = None

    def to_json(self) -> dict:
        out = {"identity": self.identity, "status": "pass" if self.status else "fail", "witness": self.witness}
        if self.morphism is not None:
            out["witness_morphism"] = self.morphism.to_json()
        return out


def _zero_cert(label: str, f: DMorphism, extra: list[str] | None = None) -> Certificate:
    return Certificate(label, f.is_zero(), (f.describe() if f else []) + (extra or []))


@dataclass
class TriangleReport:
    certificates: dict[str, Certificate]

    @property
    def passed(self) -> bool:
        return all(c.status for c in self.certificates.values())

    def failed(self) -> list[str]:
        return sorted(k for k, c in self.certificates.items() if not c.status)


def verify_triangle(fs: Mapping, phis: Mapping, kappas: Mapping | None = None) -> TriangleReport:
    """Check, for every k in the cyclic order of ``fs``'s keys,

    (1) ∂f_k = 0, (2) f_{k+1} f_k + ∂φ_k = 0, (3) f_{k+2} φ_k + φ_{k+1} f_k + ∂κ_k = Id.

    Keys must support ``.succ``.  Failures of (3) record whether the residue
    is at least null-homotopic.
    """
    certs: dict[str, Certificate] = {}
    for k in fs:
        k1 = k.succ
        k2 = k1.succ
        f, phi = fs[k], phis[k]
        certs[f"cond1.{k}"] = _zero_cert(f"∂f_{k} = 0", morphism_boundary(f))
        c2 = compose(fs[k1], f) + morphism_boundary(phi)
        certs[f"cond2.{k}"] = _zero_cert(f"f_{k1} f_{k} + ∂φ_{k} = 0", c2)
        src = f.source
        c3 = compose(fs[k2], phi) + compose(phis[k1], f) + identity_morphism(src)
        if kappas is not None and kappas.get(k) is not None:
            c3 = c3 + morphism_boundary(kappas[k])
        extra = []
        if c3:
            sol = solve_boundary(MorComplex(src, src), c3)
            extra.append(f"residue null-homotopic: {sol.solvable} (rank {sol.rank} vs {sol.rank_augmented})")
        certs[f"cond3.{k}"] = _zero_cert(f"f_{k2} φ_{k} + φ_{k1} f_{k} + ∂κ_{k} = Id", c3, extra)
    return TriangleReport(certs)


@dataclass
class Equivalence:
    """Maps G: B_k -> Cone(f_{k+1}) and Ψ back, with their certificates."""

    k: object
    cone: TypeDStructure
    G: DMorphism
    Psi: DMorphism
    H: DMorphism | None
    certificates: list[Certificate]

    @property
    def passed(self) -> bool:
        return all(c.status for c in self.certificates)


def build_equivalence(k, fs: Mapping, phis: Mapping, kappas: Mapping | None = None) -> Equivalence:
    k1 = k.succ
    k2 = k1.succ
    f_next = fs[k1]
    cone = mapping_cone(f_next, check=False)
    sn, tn = cone.cone_names.source, cone.cone_names.target
    src = fs[k].source
    g_entries = []
    for w in src.generators:
        for y, a in fs[k].table[w].items():
            g_entries.append((w, a, sn[y]))
        for z, a in phis[k].table[w].items():
            g_entries.append((w, a, tn[z]))
    G = DMorphism(src, cone, g_entries, name=f"G_{k}")
    p_entries = []
    for u in f_next.source.generators:
        for w, a in phis[k1].table[u].items():
            p_entries.append((sn[u], a, w))
    for v in f_next.target.generators:
        for w, a in fs[k2].table[v].items():
            p_entries.append((tn[v], a, w))
    Psi = DMorphism(cone, src, p_entries, name=f"Psi_{k}")

    certs = [
        _zero_cert(f"∂f_{k1} = 0 (cone is a type-D structure)", morphism_boundary(f_next)),
        _zero_cert(f"∂G_{k} = 0", morphism_boundary(G)),
        _zero_cert(f"∂Ψ_{k} = 0", morphism_boundary(Psi)),
    ]
    pg = compose(Psi, G) + identity_morphism(src)
    if kappas is not None and kappas.get(k) is not None:
        pg = pg + morphism_boundary(kappas[k])
    certs.append(_zero_cert(f"Ψ_{k} G_{k} + Id + ∂κ_{k} = 0", pg))
    gp = compose(G, Psi) + identity_morphism(cone)
    sol = solve_boundary(MorComplex(cone, cone), gp)
    certs.append(Certificate(
        f"G_{k} Ψ_{k} + Id_Cone = ∂H",
        sol.solvable,
        [] if sol.solvable else [f"no solution: rank {sol.rank} < {sol.rank_augmented}"],
        sol.witness,
    ))
    return Equivalence(k, cone, G, Psi, sol.witness, certs)


def skein_equivalence(k, fixtures=None) -> Equivalence:
    """Certified equivalence B_k ≃ Cone(f_{k+1}) for the transcribed data."""
    from .models import SkeinIndex, transcribed_fixtures

    fx = fixtures or transcribed_fixtures()
    ks = list(SkeinIndex)
    fs = {kk: fx.skein_map(kk) for kk in ks}
    phis = {kk: fx.skein_homotopy(kk) for kk in ks}
    eq = build_equivalence(SkeinIndex.parse(k), fs, phis)
    bad = [c.identity for c in eq.certificates if not c.status]
    if bad:
        raise AssertionError(f"equivalence certificate failed: {bad[0]}")
    return eq

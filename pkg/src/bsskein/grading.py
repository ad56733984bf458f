"""Grading groups of an arc diagram and abelian coset arithmetic.

An element of Gr(Z) is a pair (m, alpha) of a half-integer Maslov
component and a chord class.  The group law is

    (m, a) * (n, b) = (m + n + L(a, b), a + b),   L(a, b) = m(boundary a, b),

with the central element lambda = (1, 0).  Maslov components are stored
doubled so that all arithmetic is exact integer arithmetic.

The refined subgroup (chord classes whose boundary vanishes on match
classes) is abelian for the skein diagram; ``RefinedBasis`` gives integer
coordinates on it with respect to lambda and a chosen set of generators.
"""
from __future__ import annotations

import itertools
import math
from functools import cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .algebra import (
    AlgebraElement,
    StrandsGenerator,
    crossings,
    left_idem,
    right_idem,
)
from .diagram import ArcDiagram, ChordClass, build_skein_arc_diagram

__all__ = [
    "GradingElement",
    "group_mul",
    "group_inv",
    "group_pow",
    "identity",
    "central",
    "l_pairing",
    "avg_multiplicity",
    "epsilon",
    "gr_generator",
    "gr_sections",
    "RefinementData",
    "refine",
    "RefinedBasis",
    "skein_basis",
    "skein_reduce",
    "domain_grading",
    "AbelianLattice",
    "quotient_invariants",
    "format_invariants",
    "format_half",
]


def format_half(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def avg_multiplicity(d: ArcDiagram, p: int, alpha: ChordClass) -> Fraction:
    return d.avg_multiplicity(p, alpha)


def l_pairing(d: ArcDiagram, alpha: ChordClass, beta: ChordClass) -> Fraction:
    """L(alpha, beta) = m(boundary alpha, beta)."""
    return sum(
        (c * d.avg_multiplicity(p, beta) for p, c in d.boundary(alpha).items()),
        Fraction(0),
    )


def epsilon(d: ArcDiagram, alpha: ChordClass) -> Fraction:
    """A quarter of the number of half-multiplicity points, modulo 1."""
    count = sum(1 for p in range(1, d.n + 1) if d.avg_multiplicity(p, alpha).denominator == 2)
    return Fraction(count, 4) % 1


@dataclass(frozen=True)
class GradingElement:
    """An element (maslov2 / 2, hclass) of Gr(Z); membership is checked."""

    maslov2: int
    hclass: ChordClass
    diagram: ArcDiagram = field(default_factory=build_skein_arc_diagram, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.hclass.dim != self.diagram.n_elementary:
            raise ValueError("chord class has the wrong dimension for this diagram")
        if (Fraction(self.maslov2, 2) - epsilon(self.diagram, self.hclass)).denominator != 1:
            raise ValueError(f"({format_half(Fraction(self.maslov2, 2))}, {self.hclass}) is not in Gr(Z)")

    @classmethod
    def make(cls, maslov: Fraction | int | str, hclass: ChordClass | Sequence[int],
             diagram: ArcDiagram | None = None) -> "GradingElement":
        d = diagram or build_skein_arc_diagram()
        m2 = Fraction(maslov) * 2
        if m2.denominator != 1:
            raise ValueError("Maslov components are half-integers")
        if not isinstance(hclass, ChordClass):
            hclass = ChordClass(tuple(hclass))
        return cls(int(m2), hclass, d)

    @property
    def maslov(self) -> Fraction:
        return Fraction(self.maslov2, 2)

    def __mul__(self, other: "GradingElement") -> "GradingElement":
        return group_mul(self, other)

    def __str__(self) -> str:
        return f"({format_half(self.maslov)}, {self.hclass})"

    def to_json(self) -> dict:
        return {"maslov2": self.maslov2, "h": list(self.hclass.coeffs)}

    @classmethod
    def from_json(cls, obj: Mapping, diagram: ArcDiagram | None = None) -> "GradingElement":
        d = diagram or build_skein_arc_diagram()
        return cls(int(obj["maslov2"]), ChordClass(tuple(int(x) for x in obj["h"])), d)


def identity(d: ArcDiagram | None = None) -> GradingElement:
    d = d or build_skein_arc_diagram()
    return GradingElement(0, ChordClass.zero(d.n_elementary), d)


def central(d: ArcDiagram | None = None) -> GradingElement:
    """The central element lambda = (1, 0)."""
    d = d or build_skein_arc_diagram()
    return GradingElement(2, ChordClass.zero(d.n_elementary), d)


def group_mul(g: GradingElement, h: GradingElement) -> GradingElement:
    if g.diagram != h.diagram:
        raise ValueError("grading elements of different diagrams")
    twist = 2 * l_pairing(g.diagram, g.hclass, h.hclass)
    return GradingElement(g.maslov2 + h.maslov2 + int(twist), g.hclass + h.hclass, g.diagram)


def group_inv(g: GradingElement) -> GradingElement:
    twist = 2 * l_pairing(g.diagram, g.hclass, g.hclass)
    return GradingElement(-g.maslov2 + int(twist), -g.hclass, g.diagram)


def group_pow(g: GradingElement, n: int) -> GradingElement:
    base = g if n >= 0 else group_inv(g)
    out = identity(g.diagram)
    for _ in range(abs(n)):
        out = group_mul(out, base)
    return out


# -- gradings of algebra generators -------------------------------------------

def gr_sections(d: ArcDiagram, g: StrandsGenerator) -> list[GradingElement]:
    """inv - m([S], [rho]) computed for every placement of the horizontal strands."""
    alpha = d.chord_class(g.moving)
    out = []
    for pick in itertools.product(*(d.classes[c] for c in g.occupied)):
        strands = list(g.moving) + [(p, p) for p in pick]
        starts = [s for s, _ in strands]
        m = sum((d.avg_multiplicity(p, alpha) for p in starts), Fraction(0))
        out.append(GradingElement(2 * crossings(strands) - int(2 * m), alpha, d))
    return out


@cache
def gr_generator(d: ArcDiagram, g: StrandsGenerator) -> GradingElement:
    """Unrefined grading; raises if the value depends on the chosen section."""
    values = gr_sections(d, g)
    if any(v != values[0] for v in values):
        raise AssertionError("grading depends on the placement of horizontal strands")
    return values[0]


@dataclass(frozen=True)
class RefinementData:
    """Per-idempotent correction elements r(I), with r(base) trivial."""

    base: frozenset[int]
    assignment: Mapping[frozenset[int], GradingElement]

    def __post_init__(self) -> None:
        base_val = self.assignment.get(self.base)
        if base_val is None or base_val != identity(base_val.diagram):
            raise ValueError("the base idempotent must carry the identity")

    def __call__(self, idem: Iterable[int]) -> GradingElement:
        return self.assignment[frozenset(idem)]

    def boundary_defects(self) -> list[frozenset[int]]:
        """Idempotents whose correction has the wrong class boundary."""
        bad = []
        for idem, g in self.assignment.items():
            want: dict[int, int] = {}
            for c in idem:
                want[c] = want.get(c, 0) + 1
            for c in self.base:
                want[c] = want.get(c, 0) - 1
            want = {k: v for k, v in want.items() if v}
            if g.diagram.class_boundary(g.hclass) != want:
                bad.append(idem)
        return bad

    def to_json(self) -> dict:
        rows = [
            {"idem": sorted(k), "grading": v.to_json()}
            for k, v in sorted(self.assignment.items(), key=lambda kv: sorted(kv[0]))
        ]
        return {"base": sorted(self.base), "assignment": rows}

    @classmethod
    def from_json(cls, obj: Mapping, diagram: ArcDiagram | None = None) -> "RefinementData":
        assignment = {
            frozenset(row["idem"]): GradingElement.from_json(row["grading"], diagram)
            for row in obj["assignment"]
        }
        return cls(frozenset(obj["base"]), assignment)


def refine(a: AlgebraElement | StrandsGenerator, r: RefinementData,
           d: ArcDiagram | None = None) -> GradingElement:
    """r(I_start) * gr(a) * r(I_end)^-1; all terms of ``a`` must agree."""
    if isinstance(a, StrandsGenerator):
        d = d or build_skein_arc_diagram()
        terms = [a]
    else:
        d = a.diagram
        terms = list(a)
    if not terms:
        raise ValueError("the zero element has no grading")
    values = set()
    for g in terms:
        raw = gr_generator(d, g)
        val = group_mul(group_mul(r(left_idem(d, g)), raw), group_inv(r(right_idem(d, g))))
        values.add(val)
    if len(values) != 1:
        raise ValueError("element is not homogeneous")
    (out,) = values
    if d.class_boundary(out.hclass):
        raise AssertionError("refined grading left the refined subgroup")
    return out


# -- coordinates on the refined subgroup ------------------------------------------

class RefinedBasis:
    """Integer coordinates (lambda, A_1, ..., A_r) on the refined subgroup.

    The A_i must have chord classes with pairwise disjoint supports.
    """

    def __init__(self, generators: Sequence[GradingElement], names: Sequence[str] | None = None):
        self.generators = tuple(generators)
        self.names = tuple(names or (f"A{i}" for i in range(1, len(generators) + 1)))
        self.diagram = self.generators[0].diagram
        supports = [
            {i for i, c in enumerate(g.hclass.coeffs) if c} for g in self.generators
        ]
        for i in range(len(supports)):
            for j in range(i + 1, len(supports)):
                if supports[i] & supports[j]:
                    raise ValueError("basis classes must have disjoint supports")
        self._lead = [min(s) for s in supports]

    @property
    def rank(self) -> int:
        return 1 + len(self.generators)

    def coordinates(self, g: GradingElement) -> tuple[int, ...]:
        coeffs = []
        rest = g.hclass
        for a, lead in zip(self.generators, self._lead):
            q = Fraction(g.hclass.coeffs[lead], a.hclass.coeffs[lead])
            if q.denominator != 1:
                raise ValueError(f"{g} is not in the refined subgroup")
            coeffs.append(int(q))
            rest = rest - a.hclass * int(q)
        if rest:
            raise ValueError(f"{g} is not in the refined subgroup")
        product = identity(self.diagram)
        for a, c in zip(self.generators, coeffs):
            product = group_mul(product, group_pow(a, c))
        diff = group_mul(g, group_inv(product))
        if diff.maslov2 % 2:
            raise ValueError(f"{g} has a non-integral lambda coordinate")
        return (diff.maslov2 // 2, *coeffs)

    def element(self, coords: Sequence[int]) -> GradingElement:
        out = group_pow(central(self.diagram), coords[0])
        for a, c in zip(self.generators, coords[1:]):
            out = group_mul(out, group_pow(a, c))
        return out

    def format(self, coords: Sequence[int]) -> str:
        parts = []
        for name, c in zip(("λ",) + self.names, coords):
            if c:
                parts.append(f"{c}{name}" if abs(c) != 1 else ("-" if c < 0 else "") + name)
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def skein_basis() -> RefinedBasis:
    """lambda, A1 = (-1/2, [rho123]), A2 = (-1/2, [rho456]), A3 = (-3/2, [rho78])."""
    d = build_skein_arc_diagram()
    a1 = GradingElement.make(Fraction(-1, 2), d.chord_class([d.chord("123")]), d)
    a2 = GradingElement.make(Fraction(-1, 2), d.chord_class([d.chord("456")]), d)
    a3 = GradingElement.make(Fraction(-3, 2), d.chord_class([d.chord("78")]), d)
    return RefinedBasis([a1, a2, a3])


def skein_reduce(g: GradingElement, basis: RefinedBasis | None = None) -> int:
    """Image in the quotient by A1, A2, A3, identified with Z via lambda -> 1."""
    return (basis or skein_basis()).coordinates(g)[0]


def domain_grading(e: Fraction, n1: Fraction, n2: Fraction, bdry: ChordClass,
                   d: ArcDiagram | None = None) -> GradingElement:
    """Grading (-e - n1 - n2, bdry) of a domain; raises on inconsistent data."""
    m = -Fraction(e) - Fraction(n1) - Fraction(n2)
    return GradingElement.make(m, bdry, d)


# -- lattices -------------------------------------------------------------------

class AbelianLattice:
    """A subgroup of Z^r given by integer generator vectors."""

    def __init__(self, generators: Iterable[Sequence[int]], rank: int = 4):
        self.rank_ambient = rank
        self.generators = tuple(tuple(int(x) for x in v) for v in generators)
        if any(len(v) != rank for v in self.generators):
            raise ValueError("generator of the wrong length")

    @classmethod
    def from_elements(cls, elements: Iterable[GradingElement], basis: RefinedBasis) -> "AbelianLattice":
        return cls([basis.coordinates(g) for g in elements], basis.rank)

    @classmethod
    def full(cls, rank: int = 4) -> "AbelianLattice":
        return cls([tuple(int(i == j) for j in range(rank)) for i in range(rank)], rank)

    def _matrix(self, extra: Sequence[Sequence[int]] = ()) -> Matrix:
        rows = [list(v) for v in self.generators] + [list(v) for v in extra]
        if not rows:
            return Matrix.zeros(1, self.rank_ambient)
        return Matrix(rows)

    def _invariants(self, extra=()) -> list[int]:
        m = self._matrix(extra)
        if not any(m):
            return []
        return [int(x) for x in invariant_factors(m, domain=ZZ) if x != 0]

    def contains(self, v: Sequence[int]) -> bool:
        """v lies in the lattice iff adjoining it changes neither rank nor index."""
        v = tuple(int(x) for x in v)
        if not any(v):
            return True
        base = self._invariants()
        ext = self._invariants([v])
        return len(ext) == len(base) and math.prod(ext) == math.prod(base)

    def contains_lattice(self, other: "AbelianLattice") -> bool:
        return all(self.contains(v) for v in other.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbelianLattice):
            return NotImplemented
        return self.contains_lattice(other) and other.contains_lattice(self)

    def __hash__(self) -> int:  # lattices are compared by value; hash coarsely
        return hash(self.rank_ambient)

    def __add__(self, other: "AbelianLattice") -> "AbelianLattice":
        return AbelianLattice(self.generators + other.generators, self.rank_ambient)

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.generators]


def quotient_invariants(numerator: AbelianLattice, relators: AbelianLattice) -> list[int]:
    """Invariant factors of numerator / relators: torsion orders, then 0 per free Z.

    Factors equal to 1 are dropped, so ``[2, 0]`` reads Z/2 + Z.
    """
    if not numerator.contains_lattice(relators):
        raise ValueError("relators must lie in the numerator lattice")
    num = Matrix([list(v) for v in numerator.generators])
    if num.rank() != len(numerator.generators):
        raise ValueError("numerator generators must be linearly independent")
    rows = []
    for v in relators.generators:
        # coordinates of v in the numerator basis: solve num^T x = v
        x, params = num.T.gauss_jordan_solve(Matrix(v))
        if params.shape[0] or any(c.q != 1 for c in x):
            raise ValueError("relator is not an integral combination of the numerator")
        rows.append([int(c) for c in x])
    k = len(numerator.generators)
    if not rows or not any(any(r) for r in rows):
        return [0] * k
    factors = [int(f) for f in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [f for f in factors if f != 0]
    torsion = sorted(abs(f) for f in nonzero if abs(f) != 1)
    return torsion + [0] * (k - len(nonzero))


def format_invariants(factors: Sequence[int]) -> str:
    if not factors:
        return "0"
    return " ⊕ ".join("ℤ" if f == 0 else f"ℤ/{f}" for f in factors)

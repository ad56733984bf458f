"""Type-D structures over a strands algebra, their morphisms and cones.

A tensor in A ⊗ M is stored as a dict ``{generator name: AlgebraElement}``;
a structure map sends each generator to such a tensor.  A term ``a ⊗ y`` of
``delta(x)`` must satisfy ``idem(x) a idem(y) = a``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import (
    AlgebraElement,
    StrandsGenerator,
    diff,
    generator_text,
    idempotent,
    left_idem,
    mul,
    right_idem,
)
from .diagram import ArcDiagram
from .grading import (
    AbelianLattice,
    GradingElement,
    RefinedBasis,
    RefinementData,
    refine,
    skein_basis,
)

__all__ = [
    "Tensor",
    "TypeDStructure",
    "DMorphism",
    "CheckReport",
    "structure_check",
    "morphism_boundary",
    "compose",
    "identity_morphism",
    "zero_morphism",
    "mapping_cone",
    "GradedAssignment",
    "graded_check",
    "term_shifts",
    "morphism_shift",
    "propagate_gradings",
]

Tensor = dict  # name -> AlgebraElement


def _add_into(acc: dict, name: str, a: AlgebraElement) -> None:
    if not a:
        return
    cur = acc.get(name)
    new = a if cur is None else cur + a
    if new:
        acc[name] = new
    else:
        acc.pop(name, None)


def _tensor_sum(*ts: Mapping[str, AlgebraElement]) -> dict:
    out: dict = {}
    for t in ts:
        for k, v in t.items():
            _add_into(out, k, v)
    return out


def _entries_to_table(diagram, entries) -> dict:
    table: dict[str, dict] = {}
    for src, coef, tgt in entries:
        if not isinstance(coef, AlgebraElement):
            coef = AlgebraElement(diagram, coef)
        _add_into(table.setdefault(src, {}), tgt, coef)
    return table


class TypeDStructure:
    """Finitely generated type-D structure with named generators."""

    def __init__(self, diagram: ArcDiagram, generators: Sequence[tuple[str, Iterable[int]]],
                 delta: Iterable[tuple[str, AlgebraElement, str]] = (), name: str = ""):
        self.diagram = diagram
        self.name = name
        self.generators = tuple(g for g, _ in generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be unique")
        self.idem = {g: frozenset(i) for g, i in generators}
        table = _entries_to_table(diagram, delta)
        for src, row in table.items():
            if src not in self.idem or any(t not in self.idem for t in row):
                raise ValueError("delta mentions an unknown generator")
        self.delta = {g: table.get(g, {}) for g in self.generators}

    def __repr__(self) -> str:
        return f"TypeDStructure({self.name or '?'}: {', '.join(self.generators)})"

    def idem_element(self, g: str) -> AlgebraElement:
        return idempotent(self.diagram, self.idem[g])

    def terms(self) -> Iterator[tuple[str, StrandsGenerator, str]]:
        for x in self.generators:
            for y, a in sorted(self.delta[x].items()):
                for g in a:
                    yield x, g, y

    def apply_delta(self, t: Mapping[str, AlgebraElement]) -> dict:
        """(mu ⊗ id)(id ⊗ delta) on a tensor."""
        out: dict = {}
        for y, a in t.items():
            for z, b in self.delta[y].items():
                _add_into(out, z, mul(a, b))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TypeDStructure):
            return NotImplemented
        return self.idem == other.idem and self.delta == other.delta and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": [{"name": g, "idem": sorted(self.idem[g])} for g in self.generators],
            "delta": [
                {"from": x, "coef": [g.to_json()], "to": y} for x, g, y in self.terms()
            ],
        }

    @classmethod
    def from_json(cls, diagram: ArcDiagram, obj: Mapping) -> "TypeDStructure":
        gens = [(g["name"], g["idem"]) for g in obj["generators"]]
        delta = [
            (e["from"], AlgebraElement.from_json(diagram, e["coef"]), e["to"]) for e in obj["delta"]
        ]
        return cls(diagram, gens, delta, obj.get("name", ""))


class DMorphism:
    """A map f: M -> A ⊗ N given by a table of tensors."""

    def __init__(self, source: TypeDStructure, target: TypeDStructure,
                 table: Iterable[tuple[str, AlgebraElement, str]] | Mapping = (), name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        if isinstance(table, Mapping):
            tab = {x: _tensor_sum(row) for x, row in table.items()}
        else:
            tab = _entries_to_table(source.diagram, table)
        for x, row in tab.items():
            if x not in source.idem or any(y not in target.idem for y in row):
                raise ValueError("morphism table mentions an unknown generator")
        self.table = {x: tab.get(x, {}) for x in source.generators}

    def __call__(self, x: str) -> dict:
        return self.table[x]

    def terms(self) -> Iterator[tuple[str, StrandsGenerator, str]]:
        for x in self.source.generators:
            for y, a in sorted(self.table[x].items()):
                for g in a:
                    yield x, g, y

    def _check(self, other: "DMorphism") -> None:
        if other.source != self.source or other.target != self.target:
            raise ValueError("morphisms between different structures")

    def __add__(self, other: "DMorphism") -> "DMorphism":
        self._check(other)
        return DMorphism(
            self.source, self.target,
            {x: _tensor_sum(self.table[x], other.table[x]) for x in self.source.generators},
        )

    def __bool__(self) -> bool:
        return any(self.table.values())

    def is_zero(self) -> bool:
        return not bool(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.source.generators, self.target.generators))

    def __repr__(self) -> str:
        return f"DMorphism({self.name or '?'}: {len(list(self.terms()))} terms)"

    def describe(self, limit: int = 6) -> list[str]:
        out = [f"{x} -> {generator_text(g)} ⊗ {y}" for x, g, y in self.terms()]
        return out[:limit] + ([f"... {len(out) - limit} more"] if len(out) > limit else [])

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "source": self.source.name,
            "target": self.target.name,
            "table": [{"from": x, "coef": [g.to_json()], "to": y} for x, g, y in self.terms()],
        }

    @classmethod
    def from_json(cls, source: TypeDStructure, target: TypeDStructure, obj: Mapping) -> "DMorphism":
        entries = [
            (e["from"], AlgebraElement.from_json(source.diagram, e["coef"]), e["to"])
            for e in obj["table"]
        ]
        return cls(source, target, entries, obj.get("name", ""))


# -- reports -------------------------------------------------------------------

@dataclass
class CheckReport:
    passed: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def _idem_violations(diagram, idem_src, idem_tgt, terms, label) -> list[str]:
    out = []
    for x, g, y in terms:
        if left_idem(diagram, g) != idem_src[x] or right_idem(diagram, g) != idem_tgt[y]:
            out.append(f"{label}: term {generator_text(g)} ⊗ {y} of {x} has mismatched idempotents")
    return out


def structure_check(m: TypeDStructure) -> CheckReport:
    """Idempotent compatibility and (mu ⊗ id)(id ⊗ delta)delta + (d ⊗ id)delta = 0."""
    bad = _idem_violations(m.diagram, m.idem, m.idem, m.terms(), "idempotent")
    for x in m.generators:
        dx = m.delta[x]
        total = _tensor_sum(m.apply_delta(dx), {y: diff(a) for y, a in dx.items()})
        for y, a in sorted(total.items()):
            bad.append(f"structure equation at {x}: residue {a!r} ⊗ {y}")
    return CheckReport(not bad, bad)


def compose(g: DMorphism, f: DMorphism) -> DMorphism:
    """(mu ⊗ id)(id ⊗ g) f: first f, then g."""
    if f.target != g.source:
        raise ValueError("cannot compose: target of f differs from source of g")
    table = {}
    for x in f.source.generators:
        acc: dict = {}
        for y, a in f.table[x].items():
            for z, b in g.table[y].items():
                _add_into(acc, z, mul(a, b))
        table[x] = acc
    return DMorphism(f.source, g.target, table)


def morphism_boundary(f: DMorphism) -> DMorphism:
    """∂f = (mu⊗id)(id⊗delta_N) f + (mu⊗id)(id⊗f) delta_M + (d⊗id) f."""
    table = {}
    for x in f.source.generators:
        fx = f.table[x]
        acc = f.target.apply_delta(fx)
        for w, a in f.source.delta[x].items():
            for z, b in f.table[w].items():
                _add_into(acc, z, mul(a, b))
        for y, a in fx.items():
            _add_into(acc, y, diff(a))
        table[x] = acc
    return DMorphism(f.source, f.target, table)


def identity_morphism(m: TypeDStructure) -> DMorphism:
    return DMorphism(m, m, [(x, m.idem_element(x), x) for x in m.generators], name=f"Id_{m.name}")


def zero_morphism(m: TypeDStructure, n: TypeDStructure) -> DMorphism:
    return DMorphism(m, n, {})


def morphism_idem_violations(f: DMorphism) -> list[str]:
    return _idem_violations(f.source.diagram, f.source.idem, f.target.idem, f.terms(), "idempotent")


@dataclass(frozen=True)
class ConeNames:
    """Where the generators of source and target sit inside a cone."""

    source: Mapping[str, str]
    target: Mapping[str, str]


def mapping_cone(f: DMorphism, check: bool = True) -> TypeDStructure:
    """Cone(f) with delta(u, v) = (delta u, f(u) + delta v).

    Generator names are kept when source and target names are disjoint and
    prefixed with ``s.`` and ``t.`` otherwise; the placement is recorded in
    the ``cone_names`` attribute of the result.
    """
    if check and morphism_boundary(f):
        raise ValueError("mapping cone requires a cycle (∂f = 0)")
    m, n = f.source, f.target
    clash = set(m.generators) & set(n.generators)
    sn = {g: (f"s.{g}" if clash else g) for g in m.generators}
    tn = {g: (f"t.{g}" if clash else g) for g in n.generators}
    gens = [(sn[g], m.idem[g]) for g in m.generators] + [(tn[g], n.idem[g]) for g in n.generators]
    entries = []
    for x in m.generators:
        for y, a in m.delta[x].items():
            entries.append((sn[x], a, sn[y]))
        for y, a in f.table[x].items():
            entries.append((sn[x], a, tn[y]))
    for x in n.generators:
        for y, a in n.delta[x].items():
            entries.append((tn[x], a, tn[y]))
    cone = TypeDStructure(m.diagram, gens, entries, name=f"Cone({f.name or 'f'})")
    cone.cone_names = ConeNames(sn, tn)
    return cone


# -- gradings --------------------------------------------------------------------

@dataclass
class GradedAssignment:
    """Stabilizer lattice plus one coset representative per generator.

    Representatives are integer coordinates with respect to ``basis``.
    """

    stabilizer: AbelianLattice
    cosets: Mapping[str, tuple[int, ...]]
    basis: RefinedBasis = field(default_factory=skein_basis)

    def element(self, g: str) -> GradingElement:
        return self.basis.element(self.cosets[g])

    def same_coset(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.stabilizer.contains([a - b for a, b in zip(u, v)])


def _lam(rank: int) -> tuple[int, ...]:
    return (1,) + (0,) * (rank - 1)


def graded_check(m: TypeDStructure, ga: GradedAssignment, r: RefinementData) -> CheckReport:
    """Each term a ⊗ y of delta(x) satisfies gr(a) + gr(y) = gr(x) - lambda mod P."""
    bad = []
    lam = _lam(ga.basis.rank)
    for x, g, y in m.terms():
        ga_coords = ga.basis.coordinates(refine(g, r, m.diagram))
        lhs = [a + b for a, b in zip(ga_coords, ga.cosets[y])]
        rhs = [a - b for a, b in zip(ga.cosets[x], lam)]
        if not ga.same_coset(lhs, rhs):
            bad.append(f"term {generator_text(g)} ⊗ {y} of delta({x}) has grading {lhs}, expected {rhs} mod P")
    return CheckReport(not bad, bad)


def term_shifts(f: DMorphism, src: GradedAssignment, tgt: GradedAssignment,
                r: RefinementData) -> dict[tuple[str, StrandsGenerator, str], int]:
    """Skein-reduced shift of every term a ⊗ y of f(x)."""
    basis = src.basis
    out = {}
    for x, g, y in f.terms():
        a = basis.coordinates(refine(g, r, f.source.diagram))[0]
        out[(x, g, y)] = a + tgt.cosets[y][0] - src.cosets[x][0]
    return out


def morphism_shift(f: DMorphism, src: GradedAssignment, tgt: GradedAssignment,
                   r: RefinementData) -> int | None:
    """Common skein-reduced shift of all terms; ``None`` for the zero map."""
    shifts = set(term_shifts(f, src, tgt, r).values())
    if not shifts:
        return None
    if len(shifts) > 1:
        raise ValueError(f"morphism is not homogeneous: shifts {sorted(shifts)}")
    return shifts.pop()


def propagate_gradings(m: TypeDStructure, base: str, r: RefinementData,
                       basis: RefinedBasis | None = None):
    """Spread gradings from ``base`` along delta; return (cosets, loop elements).

    Every delta term not used by the spanning tree yields a loop element
    that must lie in the stabilizer of the base generator.
    """
    basis = basis or skein_basis()
    lam = _lam(basis.rank)
    coords: dict[str, tuple[int, ...]] = {base: (0,) * basis.rank}
    edges = []
    for x, g, y in m.terms():
        edges.append((x, basis.coordinates(refine(g, r, m.diagram)), y))
    loops = []
    used = set()
    changed = True
    while changed:
        changed = False
        for i, (x, a, y) in enumerate(edges):
            if i in used:
                continue
            if x in coords and y not in coords:
                coords[y] = tuple(cx - l - ai for cx, l, ai in zip(coords[x], lam, a))
            elif y in coords and x not in coords:
                coords[x] = tuple(cy + l + ai for cy, l, ai in zip(coords[y], lam, a))
            else:
                continue
            used.add(i)
            changed = True
    for i, (x, a, y) in enumerate(edges):
        if i in used or x not in coords or y not in coords:
            continue
        loops.append(tuple(cx - l - ai - cy for cx, l, ai, cy in zip(coords[x], lam, a, coords[y])))
    return coords, loops

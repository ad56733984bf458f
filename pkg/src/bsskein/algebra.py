"""The strands algebra A(Z) of an arc diagram over F2.

A basis generator is a pair (occupied match classes, moving chords).  As a
strands diagram it stands for the sum over all ways of placing each
horizontal strand at one of the two points of its class.  Elements are
finite sets of generators; addition is symmetric difference.

Multiplication concatenates left to right (``a * b`` runs ``a`` first) and
kills any pair of strands that crosses twice.  The differential resolves
crossings one at a time, keeping only resolutions that lower the crossing
number by exactly one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from typing import Iterable, Iterator, Sequence

from . import kernels
from .diagram import ArcDiagram, build_skein_arc_diagram

__all__ = [
    "StrandsGenerator",
    "AlgebraElement",
    "mul",
    "diff",
    "idempotents",
    "idempotent",
    "identity_element",
    "associated_element",
    "chord_word",
    "enumerate_basis",
    "left_idem",
    "right_idem",
    "validate_generator",
    "generator_text",
    "crossings",
]


@dataclass(frozen=True, order=True)
class StrandsGenerator:
    """Canonical form: sorted occupied classes and sorted moving chords."""

    occupied: tuple[int, ...]
    moving: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "occupied", tuple(sorted(set(self.occupied))))
        object.__setattr__(self, "moving", tuple(sorted(tuple(m) for m in self.moving)))

    @property
    def k(self) -> int:
        return len(self.occupied) + len(self.moving)

    def to_json(self) -> dict:
        return {"occupied": list(self.occupied), "moving": [list(m) for m in self.moving]}

    @classmethod
    def from_json(cls, obj: dict) -> "StrandsGenerator":
        return cls(tuple(obj["occupied"]), tuple(tuple(m) for m in obj["moving"]))


def generator_text(g: StrandsGenerator) -> str:
    occ = ",".join(str(c) for c in g.occupied)
    mov = " ".join(f"{s}>{e}" for s, e in g.moving)
    return f"[{occ}|{mov}]"


def left_idem(d: ArcDiagram, g: StrandsGenerator) -> frozenset[int]:
    return frozenset(g.occupied) | {d.matching[s] for s, _ in g.moving}


def right_idem(d: ArcDiagram, g: StrandsGenerator) -> frozenset[int]:
    return frozenset(g.occupied) | {d.matching[e] for _, e in g.moving}


def validate_generator(d: ArcDiagram, g: StrandsGenerator) -> None:
    """Raise ``ValueError`` unless ``g`` is a strands generator of ``d``."""
    starts = [s for s, _ in g.moving]
    ends = [e for _, e in g.moving]
    for s, e in g.moving:
        if s not in d.matching or e not in d.matching:
            raise ValueError(f"chord ({s},{e}) uses an unknown point")
        if not (s < e and d.same_arc(s, e)):
            raise ValueError(f"chord ({s},{e}) is not an upward chord on one arc")
    for pts in (starts, ends):
        cls = [d.matching[p] for p in pts]
        if len(set(pts)) != len(pts) or len(set(cls)) != len(cls):
            raise ValueError("strand endpoints must be distinct and in distinct match classes")
    occ = set(g.occupied)
    if not occ <= set(d.classes):
        raise ValueError("unknown match class")
    moving_cls = {d.matching[p] for p in starts + ends}
    if occ & moving_cls:
        raise ValueError("an occupied class meets a moving strand endpoint")


class _Codec:
    """Integer packing of generators for the product kernel."""

    def __init__(self, d: ArcDiagram):
        self.d = d
        self.n = d.n
        self.cindex = {c: i for i, c in enumerate(d.class_ids)}
        self.cls = bytes(self.cindex[d.matching[p]] for p in range(1, d.n + 1))
        self.supported = d.n <= kernels.MAX_POINTS
        self._enc: dict[StrandsGenerator, int] = {}
        self._dec: dict[int, StrandsGenerator] = {}

    def encode(self, g: StrandsGenerator) -> int:
        code = self._enc.get(g)
        if code is None:
            code = 0
            for s, e in g.moving:
                code |= e << (4 * (s - 1))
            mask = 0
            for c in g.occupied:
                mask |= 1 << self.cindex[c]
            code |= mask << (4 * self.n)
            self._enc[g] = code
            self._dec[code] = g
        return code

    def decode(self, code: int) -> StrandsGenerator:
        g = self._dec.get(code)
        if g is None:
            shift = 4 * self.n
            mask = code >> shift
            occ = tuple(c for c, i in self.cindex.items() if mask >> i & 1)
            mov = []
            low = code & ((1 << shift) - 1)
            p = 1
            while low:
                if low & 15:
                    mov.append((p, low & 15))
                low >>= 4
                p += 1
            g = StrandsGenerator(occ, tuple(mov))
            self._dec[code] = g
            self._enc[g] = code
        return g


@cache
def _codec(d: ArcDiagram) -> _Codec:
    return _Codec(d)


@cache
def _mul_generators(d: ArcDiagram, a: StrandsGenerator, b: StrandsGenerator) -> StrandsGenerator | None:
    codec = _codec(d)
    kern = kernels if codec.supported else kernels.python_kernel
    r = kern.mul_code(codec.encode(a), codec.encode(b), codec.cls, codec.n)
    return None if r < 0 else codec.decode(r)


class AlgebraElement:
    """An F2 linear combination of strands generators on a fixed diagram."""

    __slots__ = ("diagram", "terms")

    def __init__(self, diagram: ArcDiagram, terms: Iterable[StrandsGenerator] = ()):
        acc: set[StrandsGenerator] = set()
        for t in terms:
            acc ^= {t}
        self.diagram = diagram
        self.terms = frozenset(acc)

    @classmethod
    def _raw(cls, diagram: ArcDiagram, terms: frozenset) -> "AlgebraElement":
        obj = cls.__new__(cls)
        obj.diagram = diagram
        obj.terms = terms
        return obj

    def _same(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError("expected an AlgebraElement")
        if other.diagram is not self.diagram and other.diagram != self.diagram:
            raise ValueError("algebra elements live on different arc diagrams")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement._raw(self.diagram, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms and self.diagram == other.diagram

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[StrandsGenerator]:
        return iter(sorted(self.terms))

    def __repr__(self) -> str:
        if not self.terms:
            return "AlgebraElement(0)"
        return "AlgebraElement(" + " + ".join(generator_text(g) for g in self) + ")"

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> list[dict]:
        return [g.to_json() for g in self]

    @classmethod
    def from_json(cls, diagram: ArcDiagram, obj: Sequence[dict]) -> "AlgebraElement":
        gens = [StrandsGenerator.from_json(o) for o in obj]
        for g in gens:
            validate_generator(diagram, g)
        return cls(diagram, gens)


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product ``a * b`` (concatenate ``a`` then ``b``), extended bilinearly."""
    a._same(b)
    d = a.diagram
    out: set[StrandsGenerator] = set()
    for g in a.terms:
        for h in b.terms:
            r = _mul_generators(d, g, h)
            if r is not None:
                out ^= {r}
    return AlgebraElement._raw(d, frozenset(out))


# -- differential -----------------------------------------------------------

def crossings(strands: Sequence[tuple[int, int]]) -> int:
    """Number of crossing pairs among strands drawn as straight segments."""
    inv = 0
    for i in range(len(strands)):
        x1, y1 = strands[i]
        for j in range(i + 1, len(strands)):
            x2, y2 = strands[j]
            if (x1 - x2) * (y1 - y2) < 0:
                inv += 1
    return inv


def _sections(d: ArcDiagram, g: StrandsGenerator) -> Iterator[tuple[tuple[int, int], ...]]:
    choices = [d.classes[c] for c in g.occupied]
    for pick in itertools.product(*choices):
        yield tuple(sorted(list(g.moving) + [(p, p) for p in pick]))


def _regroup(d: ArcDiagram, diagrams: set) -> set[StrandsGenerator]:
    """Collapse a set of point-level diagrams back to generators.

    Every surviving generator must appear with all of its sections.
    """
    grouped: dict[StrandsGenerator, set] = {}
    for strands in diagrams:
        mov = tuple(s for s in strands if s[0] != s[1])
        occ = tuple(d.matching[s[0]] for s in strands if s[0] == s[1])
        if len(set(occ)) != len(occ):
            raise AssertionError("a class is occupied twice after regrouping")
        g = StrandsGenerator(occ, mov)
        grouped.setdefault(g, set()).add(strands)
    out = set()
    for g, secs in grouped.items():
        if len(secs) != 2 ** len(g.occupied):
            raise AssertionError(f"incomplete section family for {generator_text(g)}")
        validate_generator(d, g)
        out.add(g)
    return out


@cache
def _diff_generator(d: ArcDiagram, g: StrandsGenerator) -> frozenset[StrandsGenerator]:
    acc: set = set()
    for strands in _sections(d, g):
        inv = crossings(strands)
        if inv == 0:
            continue
        for i in range(len(strands)):
            x1, y1 = strands[i]
            for j in range(i + 1, len(strands)):
                x2, y2 = strands[j]
                if (x1 - x2) * (y1 - y2) >= 0:
                    continue
                new = list(strands)
                new[i] = (x1, y2)
                new[j] = (x2, y1)
                new_t = tuple(sorted(new))
                if crossings(new_t) == inv - 1:
                    acc ^= {new_t}
    return frozenset(_regroup(d, acc))


def diff(a: AlgebraElement) -> AlgebraElement:
    out: set[StrandsGenerator] = set()
    for g in a.terms:
        out ^= _diff_generator(a.diagram, g)
    return AlgebraElement._raw(a.diagram, frozenset(out))


# -- distinguished elements ---------------------------------------------------

def idempotent(d: ArcDiagram, classes: Iterable[int]) -> AlgebraElement:
    g = StrandsGenerator(tuple(classes), ())
    validate_generator(d, g)
    return AlgebraElement(d, [g])


def idempotents(d: ArcDiagram, k: int) -> list[AlgebraElement]:
    """The idempotents of A(d, k), one per k-subset of match classes."""
    return [idempotent(d, s) for s in itertools.combinations(d.class_ids, k)]


def identity_element(d: ArcDiagram, k: int) -> AlgebraElement:
    """The sum of all idempotents of A(d, k)."""
    return AlgebraElement(d, [StrandsGenerator(s, ()) for s in itertools.combinations(d.class_ids, k)])


def associated_element(d: ArcDiagram, chords: Iterable[tuple[int, int]], p: int) -> AlgebraElement:
    """Sum of all p-strand completions of a set of Reeb chords."""
    chords = tuple(sorted(set(tuple(c) for c in chords)))
    try:
        validate_generator(d, StrandsGenerator((), chords))
    except ValueError:
        return AlgebraElement(d)
    used = {d.matching[q] for c in chords for q in c}
    free = [c for c in d.class_ids if c not in used]
    need = p - len(chords)
    if need < 0:
        return AlgebraElement(d)
    return AlgebraElement(d, [StrandsGenerator(s, chords) for s in itertools.combinations(free, need)])


def chord_word(indices: Sequence[str], d: ArcDiagram | None = None, p: int = 5) -> AlgebraElement:
    """Product of single-chord elements, e.g. ``chord_word(["4", "6", "7"])``.

    The empty word is the identity of A(d, p).
    """
    d = d or build_skein_arc_diagram()
    out = identity_element(d, p)
    for j in indices:
        out = mul(out, associated_element(d, [d.chord(str(j))], p))
    return out


def enumerate_basis(d: ArcDiagram, k: int) -> list[StrandsGenerator]:
    """All generators of A(d, k) in a deterministic order."""
    return list(_basis(d, k))


@cache
def _basis(d: ArcDiagram, k: int) -> tuple[StrandsGenerator, ...]:
    chords = sorted(d.reeb_chords.values())
    out: list[StrandsGenerator] = []
    for r in range(0, min(k, len(d.classes)) + 1):
        for mov in itertools.combinations(chords, r):
            g0 = StrandsGenerator((), mov)
            try:
                validate_generator(d, g0)
            except ValueError:
                continue
            used = {d.matching[q] for c in mov for q in c}
            free = [c for c in d.class_ids if c not in used]
            for occ in itertools.combinations(free, k - r):
                out.append(StrandsGenerator(occ, mov))
    return tuple(out)

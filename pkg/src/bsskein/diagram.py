"""Arc diagrams and homology classes of chord collections.

An arc diagram is a list of oriented arcs carrying marked points, together
with a matching that pairs the points into match classes.  Points carry
global indices ``1..n`` that increase along each arc and from one arc to the
next; match classes are labelled ``1..C``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property
from typing import Iterable, Mapping, Sequence

__all__ = ["ArcDiagram", "ChordClass", "build_skein_arc_diagram"]


@dataclass(frozen=True)
class ChordClass:
    """Integer combination of elementary chords, i.e. a class in H1(Z, a)."""

    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, dim: int) -> "ChordClass":
        return cls((0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "ChordClass") -> None:
        if len(other.coeffs) != len(self.coeffs):
            raise ValueError("chord classes of different diagrams")

    def __add__(self, other: "ChordClass") -> "ChordClass":
        self._check(other)
        return ChordClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ChordClass") -> "ChordClass":
        self._check(other)
        return ChordClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ChordClass":
        return ChordClass(tuple(-a for a in self.coeffs))

    def __mul__(self, n: int) -> "ChordClass":
        return ChordClass(tuple(n * a for a in self.coeffs))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            parts.append((sign, f"{mag}[ρ{i}]"))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


class ArcDiagram:
    """An arc diagram with a pairing of its marked points.

    ``arcs`` lists, for each arc, its points in increasing order; the union
    of all arcs must be exactly ``1..n``.  ``matching`` sends every point to
    its match class.
    """

    def __init__(self, arcs: Sequence[Sequence[int]], matching: Mapping[int, int]):
        arcs_t = tuple(tuple(a) for a in arcs)
        points = [p for a in arcs_t for p in a]
        n = len(points)
        if sorted(points) != list(range(1, n + 1)) or points != sorted(points):
            raise ValueError("arc points must be 1..n, increasing along and across arcs")
        if set(matching) != set(points):
            raise ValueError("matching must be defined on every point")
        classes: dict[int, list[int]] = {}
        for p in points:
            classes.setdefault(matching[p], []).append(p)
        if any(len(v) != 2 for v in classes.values()):
            raise ValueError("every match class must contain exactly two points")
        self.arcs = arcs_t
        self.n = n
        self.matching = {p: matching[p] for p in points}
        self.classes = {c: tuple(v) for c, v in sorted(classes.items())}
        self.class_ids = tuple(sorted(self.classes))
        self.arc_of = {p: i for i, a in enumerate(arcs_t) for p in a}
        elementary = []
        for a in arcs_t:
            elementary.extend(zip(a, a[1:]))
        self.elementary = tuple(elementary)
        self._elem_index = {pq: i for i, pq in enumerate(elementary)}

    # -- identity ----------------------------------------------------------
    @cached_property
    def _key(self):
        return (self.arcs, tuple(sorted(self.matching.items())))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ArcDiagram) and (self is other or self._key == other._key)

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"ArcDiagram(points={self.n}, arcs={len(self.arcs)}, classes={len(self.classes)})"

    # -- chords -------------------------------------------------------------
    @property
    def n_elementary(self) -> int:
        return len(self.elementary)

    def same_arc(self, p: int, q: int) -> bool:
        return self.arc_of[p] == self.arc_of[q]

    @cached_property
    def reeb_chords(self) -> dict[str, tuple[int, int]]:
        """All upward chords, keyed by the concatenated elementary labels."""
        out: dict[str, tuple[int, int]] = {}
        for a in self.arcs:
            for i in range(len(a)):
                for j in range(i + 1, len(a)):
                    labels = [self._elem_index[(a[t], a[t + 1])] + 1 for t in range(i, j)]
                    out["".join(str(x) for x in labels)] = (a[i], a[j])
        return out

    def chord(self, label: str) -> tuple[int, int]:
        try:
            return self.reeb_chords[label]
        except KeyError:
            raise ValueError(f"no Reeb chord labelled {label!r}") from None

    def chord_class(self, chords: Iterable[tuple[int, int]]) -> ChordClass:
        """Homology class of a collection of upward chords."""
        coeffs = [0] * self.n_elementary
        for p, q in chords:
            if not (p < q and self.same_arc(p, q)):
                raise ValueError(f"({p},{q}) is not an upward chord")
            for t in range(p, q):
                coeffs[self._elem_index[(t, t + 1)]] += 1
        return ChordClass(tuple(coeffs))

    def elementary_class(self, i: int) -> ChordClass:
        """Class of the ``i``-th elementary chord (1-based)."""
        coeffs = [0] * self.n_elementary
        coeffs[i - 1] = 1
        return ChordClass(tuple(coeffs))

    # -- multiplicities -------------------------------------------------------
    def avg_multiplicity(self, p: int, alpha: ChordClass) -> Fraction:
        """Average of the multiplicities of ``alpha`` just below and above ``p``."""
        below = self._elem_index.get((p - 1, p))
        above = self._elem_index.get((p, p + 1))
        tot = 0
        if below is not None:
            tot += alpha.coeffs[below]
        if above is not None:
            tot += alpha.coeffs[above]
        return Fraction(tot, 2)

    def boundary(self, alpha: ChordClass) -> dict[int, int]:
        """Signed boundary: end points count +1, start points -1."""
        out: dict[int, int] = {}
        for (p, q), c in zip(self.elementary, alpha.coeffs):
            if c:
                out[q] = out.get(q, 0) + c
                out[p] = out.get(p, 0) - c
        return {k: v for k, v in out.items() if v}

    def class_boundary(self, alpha: ChordClass) -> dict[int, int]:
        """Boundary pushed forward to match classes."""
        out: dict[int, int] = {}
        for p, c in self.boundary(alpha).items():
            m = self.matching[p]
            out[m] = out.get(m, 0) + c
        return {k: v for k, v in out.items() if v}


@cache
def build_skein_arc_diagram() -> ArcDiagram:
    """The four-arc diagram with twelve points and six match classes.

    Arc 1 carries a single point; the remaining arcs carry 4, 4 and 3
    points, giving elementary chords rho1..rho8.
    """
    arcs = [(1,), (2, 3, 4, 5), (6, 7, 8, 9), (10, 11, 12)]
    pairs = {1: (1, 3), 2: (2, 5), 3: (4, 7), 4: (6, 9), 5: (8, 11), 6: (10, 12)}
    matching = {p: c for c, pq in pairs.items() for p in pq}
    return ArcDiagram(arcs, matching)

"""Exact half-planes ``a0 + a1*b + a2*c >= 0`` over the weight quadrant.

Every region here lives inside the closed quadrant b >= 0, c >= 0.  Unbounded
regions are handled by clipping to a box large enough to contain every vertex
of the line arrangement, which makes containment and emptiness tests exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class HalfPlane:
    a0: Fraction
    a1: Fraction
    a2: Fraction
    provenance: str = field(default="", compare=False)

    def __init__(self, a0, a1, a2, provenance: str = ""):
        object.__setattr__(self, "a0", Fraction(a0))
        object.__setattr__(self, "a1", Fraction(a1))
        object.__setattr__(self, "a2", Fraction(a2))
        object.__setattr__(self, "provenance", provenance)

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a0, self.a1, self.a2)

    def value(self, b, c):
        return self.a0 + self.a1 * b + self.a2 * c

    def contains(self, b, c) -> bool:
        return self.value(b, c) >= 0

    def is_trivial(self) -> bool:
        """True when the half-plane holds on the whole quadrant."""
        return self.a0 >= 0 and self.a1 >= 0 and self.a2 >= 0

    def normalized(self) -> "HalfPlane":
        """Positive rescaling to coprime integer coefficients."""
        coeffs = self.coeffs
        if not any(coeffs):
            return self
        lcm = 1
        for x in coeffs:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        ints = [int(x * lcm) for x in coeffs]
        g = math.gcd(*ints)
        return HalfPlane(*(Fraction(i, g) for i in ints), provenance=self.provenance)

    def dominates(self, other: "HalfPlane") -> bool:
        """On the quadrant, ``self >= 0`` implies ``other >= 0`` coefficient-wise."""
        return self.a0 <= other.a0 and self.a1 <= other.a1 and self.a2 <= other.a2

    def format(self) -> str:
        text = f"{self.a0} + {self.a1}*b + {self.a2}*c >= 0"
        if self.provenance:
            text += f" # {self.provenance}"
        return text

    @classmethod
    def parse(cls, line: str) -> "HalfPlane":
        body, _, provenance = line.partition("#")
        lhs, sep, rhs = body.partition(">=")
        if not sep or rhs.strip() != "0":
            raise ValueError(f"not a half-plane: {line!r}")
        terms = [t.strip() for t in lhs.split(" + ")]
        if len(terms) != 3 or not terms[1].endswith("*b") or not terms[2].endswith("*c"):
            raise ValueError(f"not a half-plane: {line!r}")
        return cls(Fraction(terms[0]), Fraction(terms[1][:-2]), Fraction(terms[2][:-2]),
                   provenance.strip())


QUADRANT = (HalfPlane(0, 1, 0, "b >= 0"), HalfPlane(0, 0, 1, "c >= 0"))


def _intersection(h: HalfPlane, g: HalfPlane) -> Point | None:
    det = h.a1 * g.a2 - h.a2 * g.a1
    if det == 0:
        return None
    b = (-h.a0 * g.a2 + h.a2 * g.a0) / det
    c = (-h.a1 * g.a0 + h.a0 * g.a1) / det
    return b, c


def _box_size(halfplanes: Iterable[HalfPlane]) -> Fraction:
    lines = [h for h in halfplanes if h.a1 or h.a2] + list(QUADRANT)
    size = Fraction(1)
    for h, g in combinations(lines, 2):
        p = _intersection(h, g)
        if p is not None:
            size = max(size, abs(p[0]) + 1, abs(p[1]) + 1)
    return size


def _clip(polygon: list[Point], h: HalfPlane) -> list[Point]:
    if not polygon:
        return []
    out: list[Point] = []
    k = len(polygon)
    for i in range(k):
        p, q = polygon[i], polygon[(i + 1) % k]
        vp, vq = h.value(*p), h.value(*q)
        if vp >= 0:
            out.append(p)
        if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    cleaned: list[Point] = []
    for p in out:
        if not cleaned or cleaned[-1] != p:
            cleaned.append(p)
    while len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
        cleaned.pop()
    return cleaned


def _drop_collinear(polygon: list[Point]) -> list[Point]:
    if len(polygon) < 3:
        return polygon
    out = []
    k = len(polygon)
    for i in range(k):
        a, p, q = polygon[i - 1], polygon[i], polygon[(i + 1) % k]
        cross = (p[0] - a[0]) * (q[1] - p[1]) - (p[1] - a[1]) * (q[0] - p[0])
        if cross != 0:
            out.append(p)
    if not out:
        # degenerate segment: keep its two extreme points
        return [min(polygon), max(polygon)]
    return out


def polygon(halfplanes: Sequence[HalfPlane],
            window: tuple[Fraction, Fraction, Fraction, Fraction] | None = None) -> list[Point]:
    """Vertices (counter-clockwise) of the region clipped to ``window``.

    ``window`` is ``(b_min, b_max, c_min, c_max)``; by default a box large
    enough that clipping does not change which half-planes are active.
    Returns ``[]`` for an empty region; a point or segment comes back as one
    or two vertices.
    """
    if window is None:
        size = _box_size(halfplanes)
        window = (Fraction(0), size, Fraction(0), size)
    b0, b1, c0, c1 = (Fraction(x) for x in window)
    poly: list[Point] = [(b0, c0), (b1, c0), (b1, c1), (b0, c1)]
    for h in (*QUADRANT, *halfplanes):
        poly = _clip(poly, h)
        if not poly:
            return []
    return _drop_collinear(poly)


def implies(halfplanes: Sequence[HalfPlane], h: HalfPlane) -> bool:
    """Whether every point of the region also satisfies ``h``."""
    size = _box_size([*halfplanes, h])
    window = (Fraction(0), size, Fraction(0), size)
    return all(h.contains(*p) for p in polygon(halfplanes, window))


def is_empty(halfplanes: Sequence[HalfPlane]) -> bool:
    """No feasible point with c > 0 (the closeness weight is strictly positive)."""
    return all(p[1] == 0 for p in polygon(halfplanes))


def same_region(first: Sequence[HalfPlane], second: Sequence[HalfPlane]) -> bool:
    """Exact set equality of two regions on the quadrant with c > 0."""
    if is_empty(first) or is_empty(second):
        return is_empty(first) and is_empty(second)
    return (all(implies(first, h) for h in second)
            and all(implies(second, h) for h in first))


def prune(halfplanes: Iterable[HalfPlane]) -> list[HalfPlane]:
    """Drop duplicates and redundant constraints; the region is unchanged.

    Order of the survivors follows first appearance.
    """
    seen: dict[tuple, HalfPlane] = {}
    for h in halfplanes:
        if h.is_trivial():
            continue
        key = h.normalized().coeffs
        seen.setdefault(key, h.normalized())
    candidates = list(seen.values())
    kept = [h for h in candidates
            if not any(g is not h and g.dominates(h) and g.coeffs != h.coeffs
                       for g in candidates)]
    i = 0
    while i < len(kept):
        rest = kept[:i] + kept[i + 1:]
        if implies(rest, kept[i]):
            kept.pop(i)
        else:
            i += 1
    return kept

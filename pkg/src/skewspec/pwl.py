"""Continuous piecewise-linear self-maps of [0, 1] with rational nodes.

A map is given by its "connect the dots" nodes ``(a_0, b_0), ..., (a_n, b_n)``
with ``0 = a_0 < ... < a_n = 1``. Everything here (evaluation, interval
images, preimages, compositions) is exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import kernel
from .errors import InvalidMap, NotLeoWithinCap, OutOfDomain, PreconditionError
from .numeric import ONE, ZERO, UnitInterval, as_rational, format_rational

Node = Tuple[Fraction, Fraction]

DEFAULT_LEO_CAP = 256


@dataclass(frozen=True)
class LapDecomposition:
    laps: Tuple[UnitInterval, ...]
    critical_points: Tuple[Fraction, ...]


class PwlMap:
    """Continuous piecewise-linear map of [0, 1] into itself.

    Interior nodes joining two collinear segments are dropped, so two maps
    compare equal exactly when they are the same function. Constant pieces
    are rejected.
    """

    __slots__ = ("nodes", "name", "_table", "_laps")

    def __init__(self, nodes: Iterable[Tuple[object, object]], name: Optional[str] = None):
        pts = [(as_rational(a), as_rational(b)) for a, b in nodes]
        if len(pts) < 2:
            raise InvalidMap("a map needs at least two nodes")
        if pts[0][0] != 0 or pts[-1][0] != 1:
            raise InvalidMap("first node must sit at x=0 and last at x=1")
        for (a0, _), (a1, _) in zip(pts, pts[1:]):
            if not a0 < a1:
                raise InvalidMap("node abscissae must be strictly increasing")
        for _, b in pts:
            if not 0 <= b <= 1:
                raise InvalidMap(f"node value {b} lies outside [0, 1]")
        for (a0, b0), (a1, b1) in zip(pts, pts[1:]):
            if b0 == b1:
                raise InvalidMap(f"constant piece on [{a0}, {a1}]")
        kept = [pts[0]]
        for k in range(1, len(pts) - 1):
            (a0, b0), (a1, b1), (a2, b2) = kept[-1], pts[k], pts[k + 1]
            if (b1 - b0) * (a2 - a1) != (b2 - b1) * (a1 - a0):
                kept.append(pts[k])
        kept.append(pts[-1])
        self.nodes: Tuple[Node, ...] = tuple(kept)
        self.name = name
        self._table = None
        self._laps = None

    # -- basic structure --------------------------------------------------

    @property
    def xs(self) -> Tuple[Fraction, ...]:
        return tuple(a for a, _ in self.nodes)

    @property
    def ys(self) -> Tuple[Fraction, ...]:
        return tuple(b for _, b in self.nodes)

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        return tuple(
            (b1 - b0) / (a1 - a0)
            for (a0, b0), (a1, b1) in zip(self.nodes, self.nodes[1:])
        )

    @property
    def table(self):
        """Kernel table: node coordinates, slopes and intercepts as int pairs."""
        if self._table is None:
            xn, xd, yn, yd, sn, sd, cn, cd = ([] for _ in range(8))
            for a, b in self.nodes:
                xn.append(a.numerator)
                xd.append(a.denominator)
                yn.append(b.numerator)
                yd.append(b.denominator)
            for (a0, b0), s in zip(self.nodes, self.slopes):
                c = b0 - s * a0
                sn.append(s.numerator)
                sd.append(s.denominator)
                cn.append(c.numerator)
                cd.append(c.denominator)
            self._table = (xn, xd, yn, yd, sn, sd, cn, cd)
        return self._table

    def __eq__(self, other):
        if not isinstance(other, PwlMap):
            return NotImplemented
        return self.nodes == other.nodes

    def __hash__(self):
        return hash(self.nodes)

    def __repr__(self):
        if self.name:
            return f"PwlMap<{self.name}>"
        return f"PwlMap({self.literal()})"

    def literal(self) -> str:
        return "[" + ",".join(
            f"({format_rational(a)},{format_rational(b)})" for a, b in self.nodes
        ) + "]"

    def to_json(self):
        return [[format_rational(a), format_rational(b)] for a, b in self.nodes]

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    # -- laps ---------------------------------------------------------------

    def laps(self) -> LapDecomposition:
        if self._laps is None:
            slopes = self.slopes
            crit = [ZERO]
            for k in range(1, len(self.nodes) - 1):
                if (slopes[k - 1] > 0) != (slopes[k] > 0):
                    crit.append(self.nodes[k][0])
            crit.append(ONE)
            laps = tuple(UnitInterval(u, v) for u, v in zip(crit, crit[1:]))
            self._laps = LapDecomposition(laps, tuple(crit))
        return self._laps

    @property
    def critical_points(self) -> Tuple[Fraction, ...]:
        return self.laps().critical_points

    def pieces(self) -> List[Tuple[UnitInterval, Fraction]]:
        """Maximal linear pieces with their slopes."""
        return [
            (UnitInterval(a0, a1), s)
            for (a0, _), (a1, _), s in zip(self.nodes, self.nodes[1:], self.slopes)
        ]


# -- constructors for the maps used throughout ---------------------------------

def tent() -> PwlMap:
    return PwlMap([(0, 0), (Fraction(1, 2), 1), (1, 0)], name="tent")


def valley() -> PwlMap:
    return PwlMap([(0, 1), (Fraction(1, 2), 0), (1, 1)], name="valley")


def zigzag3() -> PwlMap:
    return PwlMap([(0, 0), (Fraction(1, 3), 1), (Fraction(2, 3), 0), (1, 1)], name="zigzag3")


def identity_map() -> PwlMap:
    return PwlMap([(0, 0), (1, 1)], name="identity")


NAMED_MAPS = {
    "tent": tent,
    "valley": valley,
    "zigzag3": zigzag3,
    "identity": identity_map,
}


# -- operations ---------------------------------------------------------------

def evaluate(T: PwlMap, x) -> Fraction:
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise OutOfDomain(f"{x} is outside [0, 1]")
    n, d = kernel.eval_point(T.table, x.numerator, x.denominator)
    return Fraction(n, d)


def image_interval(T: PwlMap, J: UnitInterval) -> UnitInterval:
    """Exact image ``T(J)``; degenerate ``J`` gives a degenerate image."""
    mn, md, Mn, Md = kernel.image(T.table, J.lo.numerator, J.lo.denominator,
                                  J.hi.numerator, J.hi.denominator)
    return UnitInterval(Fraction(mn, md), Fraction(Mn, Md))


def iterate_image(T: PwlMap, J: UnitInterval, times: int) -> UnitInterval:
    for _ in range(times):
        J = image_interval(T, J)
    return J


def preimage_components(T: PwlMap, J: UnitInterval) -> List[UnitInterval]:
    """Maximal closed intervals whose union is ``T^{-1}(J)``, sorted, disjoint."""
    parts = []
    for (a0, b0), (a1, b1) in zip(T.nodes, T.nodes[1:]):
        lo_v, hi_v = (b0, b1) if b0 < b1 else (b1, b0)
        lo = max(lo_v, J.lo)
        hi = min(hi_v, J.hi)
        if lo > hi:
            continue
        s = (b1 - b0) / (a1 - a0)
        x_lo = a0 + (lo - b0) / s
        x_hi = a0 + (hi - b0) / s
        if x_lo > x_hi:
            x_lo, x_hi = x_hi, x_lo
        parts.append((x_lo, x_hi))
    parts.sort()
    merged: List[List[Fraction]] = []
    for lo, hi in parts:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [UnitInterval(lo, hi) for lo, hi in merged]


def component_containing(parts: Sequence[UnitInterval], x: Fraction) -> Optional[UnitInterval]:
    for C in parts:
        if x in C:
            return C
    return None


def preimage_points(T: PwlMap, y: Fraction, within: Optional[UnitInterval] = None) -> List[Fraction]:
    """Sorted distinct solutions of ``T(x) = y`` (restricted to ``within``)."""
    out = set()
    for (a0, b0), (a1, b1) in zip(T.nodes, T.nodes[1:]):
        if min(b0, b1) <= y <= max(b0, b1):
            x = a0 + (y - b0) * (a1 - a0) / (b1 - b0)
            if within is None or x in within:
                out.add(x)
    return sorted(out)


def expansion_rate(T: PwlMap) -> Fraction:
    """Minimum absolute slope; the map is expanding iff this exceeds 1."""
    return min(abs(s) for s in T.slopes)


def is_expanding(T: PwlMap) -> bool:
    return expansion_rate(T) > 1


def is_surjective(T: PwlMap) -> bool:
    ys = T.ys
    return min(ys) == 0 and max(ys) == 1


def compose(maps: Sequence[PwlMap]) -> PwlMap:
    """The map ``maps[-1] o ... o maps[0]`` (``maps[0]`` is applied first)."""
    if not maps:
        return identity_map()
    acc = maps[0]
    for nxt in maps[1:]:
        xs = set(acc.xs)
        for c in nxt.xs[1:-1]:
            xs.update(preimage_points(acc, c))
        acc = PwlMap([(x, evaluate(nxt, evaluate(acc, x))) for x in sorted(xs)])
    return acc


def _reaches_unit(T: PwlMap, J: UnitInterval, cap: int) -> Optional[int]:
    """Least ``i <= cap`` with ``T^i(J) = [0, 1]``, else None."""
    for i in range(cap + 1):
        if J.is_unit:
            return i
        J = image_interval(T, J)
    return None


def mixing_partition(T: PwlMap) -> List[UnitInterval]:
    """Laps of ``T`` each split into equal parts of length below 1/8."""
    out = []
    for lap in T.laps().laps:
        parts = int(lap.length * 8) + 1
        step = lap.length / parts
        out.extend(UnitInterval(lap.lo + k * step, lap.lo + (k + 1) * step) for k in range(parts))
    return out


def is_mixing(T: PwlMap, cap: int = 64) -> bool:
    """Semi-decision for mixing (equivalently, locally eventually onto).

    ``True`` means every piece of :func:`mixing_partition` was seen to cover
    [0, 1] within ``cap`` iterations. ``False`` means this was not
    established, not that the map is proven non-mixing.
    """
    if cap < 1:
        raise PreconditionError("cap must be >= 1")
    return all(_reaches_unit(T, P, cap) is not None for P in mixing_partition(T))


def leo_exponent(T: PwlMap, gamma, cap: int = DEFAULT_LEO_CAP) -> int:
    """An ``m`` with ``T^m(U) = [0, 1]`` for every interval ``|U| >= gamma``.

    Splits [0, 1] into ``N`` equal pieces shorter than ``gamma / 2``; any
    interval of length ``gamma`` contains one of them, so the largest
    per-piece covering time works for all (``T`` being onto once it is
    mixing). Every ``N`` from the coarsest admissible one up to twice that
    is tried and the best bound kept. Sound but usually not minimal.
    """
    gamma = as_rational(gamma)
    if not 0 < gamma <= 1:
        raise PreconditionError("gamma must lie in (0, 1]")
    if gamma == 1:
        return 0
    coarsest = int(2 / gamma) + 1
    best = None
    for count in range(coarsest, 2 * coarsest + 1):
        m = _partition_bound(T, count, cap if best is None else min(cap, best))
        if m is not None and (best is None or m < best):
            best = m
    if best is None:
        raise NotLeoWithinCap(f"some piece of [0, 1] does not cover it within {cap} iterations")
    return best


def _partition_bound(T: PwlMap, count: int, cap: int) -> Optional[int]:
    m = 0
    for k in range(count):
        mk = _reaches_unit(T, UnitInterval(Fraction(k, count), Fraction(k + 1, count)), cap)
        if mk is None:
            return None
        m = max(m, mk)
    return m

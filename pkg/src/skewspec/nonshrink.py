"""Lower bounds on interval lengths along finite nonautonomous systems.

For a finite family of expanding piecewise-linear maps, :func:`gamma_bound`
produces ``gamma(eps) > 0`` such that every composition along any word
keeps every interval of length ``>= eps`` at length ``>= gamma``. The
certificate carries all intermediate constants so it can be rechecked.

:func:`shrinking_system` builds the adaptive counterexample showing that
slopes merely ``>= 1`` are not enough.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import kernel
from .errors import NoTrigger, NotExpanding, PreconditionError
from .numeric import HALF, UnitInterval, as_rational, format_rational
from .pwl import PwlMap, expansion_rate, image_interval, preimage_points
from .subshift import Word, format_word


@dataclass(frozen=True)
class ExpandingFamily:
    maps: Tuple[PwlMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.maps:
            raise PreconditionError("empty family")
        for k, T in enumerate(self.maps, 1):
            if expansion_rate(T) <= 1:
                raise NotExpanding(f"map {k} ({T!r}) has expansion rate {expansion_rate(T)}")

    @property
    def tables(self) -> list:
        return [None] + [T.table for T in self.maps]


@dataclass
class GammaCertificate:
    eps: Fraction
    alpha: Fraction
    m: int
    beta: Fraction
    gamma: Fraction
    per_tuple: List[Tuple[str, Fraction]] = field(default_factory=list)

    def to_json(self):
        return {
            "eps": format_rational(self.eps),
            "alpha": format_rational(self.alpha),
            "m": self.m,
            "beta": format_rational(self.beta),
            "gamma": format_rational(self.gamma),
            "per_tuple": [[w, format_rational(b)] for w, b in self.per_tuple],
        }


def _side_bound(delta: Sequence[PwlMap], c: Fraction, direction: int) -> Optional[Fraction]:
    """Largest admissible length of ``[c, c+d]`` (direction +1) or ``[c-d, c]``.

    None when no length that fits in [0, 1] is ever violated.
    """
    D = (1 - c) if direction > 0 else c
    violated = False
    for j, H in enumerate(delta):
        U = UnitInterval(c, c + D) if direction > 0 else UnitInterval(c - D, c)
        chain = [U]
        for G in delta[:j]:
            chain.append(image_interval(G, chain[-1]))
        I = chain[-1]
        fixed = c
        for G in delta[:j]:
            fixed = G(fixed)
        inside = [q for q in H.critical_points if I.contains_interior(q)]
        if not inside:
            continue
        target = min(inside, key=lambda q: abs(q - fixed))
        # the moving end of G_{j-1}(U) reaches `target` first at a unique point,
        # every map being strictly monotone on its piece of the chain
        y = target
        for t in range(j, 0, -1):
            (y,) = preimage_points(delta[t - 1], y, within=chain[t - 1])
        D = abs(y - c)
        violated = True
    return D if violated else None


def beta_delta(delta: Sequence[PwlMap]) -> Fraction:
    """Largest ``beta`` such that short intervals anchored at critical points stay lap-clean.

    Every interval ``U`` of length ``<= beta`` with a critical point of
    ``delta[0]`` as an endpoint has ``G_{j-1}(U)`` free of critical points of
    ``delta[j-1]`` in its interior, where ``G_i`` composes the first ``i``
    maps. Computed exactly by following each anchored interval's moving
    endpoint until it first runs into a critical point.
    """
    if not delta:
        raise PreconditionError("need at least one map")
    best: Optional[Fraction] = None
    for c in delta[0].critical_points:
        for direction in (1, -1):
            if (direction > 0 and c == 1) or (direction < 0 and c == 0):
                continue
            b = _side_bound(delta, c, direction)
            if b is not None and (best is None or b < best):
                best = b
    return Fraction(1) if best is None else best


def min_power_exceeding_two(alpha: Fraction) -> int:
    m = 1
    while alpha ** m <= 2:
        m += 1
    return m


def gamma_bound(fam: Union[ExpandingFamily, Sequence[PwlMap]], eps) -> GammaCertificate:
    if not isinstance(fam, ExpandingFamily):
        fam = ExpandingFamily(tuple(fam))
    eps = as_rational(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    alpha = min(expansion_rate(T) for T in fam.maps)
    m = min_power_exceeding_two(alpha)
    per_tuple = []
    for idx in itertools.product(range(len(fam.maps)), repeat=m):
        b = beta_delta([fam.maps[i] for i in idx])
        per_tuple.append((format_word(i + 1 for i in idx), b))
    beta = min(b for _, b in per_tuple)
    return GammaCertificate(eps=eps, alpha=alpha, m=m, beta=beta,
                            gamma=min(eps / 2, beta), per_tuple=per_tuple)


def verify_nonshrink(
    fam: Union[ExpandingFamily, Sequence[PwlMap]],
    word: Sequence[int],
    U: UnitInterval,
    gamma,
) -> Tuple[bool, Fraction]:
    """Iterate ``U`` along ``word`` (1-based map indices).

    Returns whether every length, ``|U|`` included, stays ``>= gamma`` and
    the least length seen. Non-expanding families are accepted here so the
    counterexample can be replayed.
    """
    maps = fam.maps if isinstance(fam, ExpandingFamily) else tuple(fam)
    tables = [None] + [T.table for T in maps]
    n, d = kernel.min_chain_length(tables, list(word), U.lo.numerator, U.lo.denominator,
                                   U.hi.numerator, U.hi.denominator)
    least = Fraction(n, d)
    return least >= as_rational(gamma), least


# -- the shrinking counterexample ----------------------------------------------

def shrink_maps(xi) -> Tuple[PwlMap, PwlMap, PwlMap]:
    """The three maps ``(phi, f, g)`` of the counterexample; all slopes have modulus >= 1."""
    xi = as_rational(xi)
    phi = PwlMap([(0, xi), (1 - xi, 1), (1, 0)], name="phi")
    f = PwlMap([(0, 1), (1 - 2 * xi, 0), (1, 2 * xi)], name="f")
    g = PwlMap([(0, 1), (Fraction(1, 4), Fraction(1, 4)), (HALF, 0), (1, HALF)], name="g")
    return phi, f, g


@dataclass(frozen=True)
class ShrinkStep:
    step: int
    map: str
    interval: UnitInterval


@dataclass
class ShrinkTrace:
    xi: Fraction
    schedule: List[Tuple[int, str]]
    lengths: List[Fraction]
    steps: List[ShrinkStep]

    @property
    def g_events(self) -> int:
        return sum(1 for _, psi in self.schedule if psi == "g")

    @property
    def word(self) -> Word:
        """Map indices (1 = phi, 2 = f, 3 = g) in application order."""
        code = {"phi": 1, "f": 2, "g": 3}
        return tuple(code[s.map] for s in self.steps)

    def csv_rows(self):
        yield ("step", "map", "interval_lo", "interval_hi", "length")
        for s in self.steps:
            J = s.interval
            yield (s.step, s.map, format_rational(J.lo), format_rational(J.hi),
                   format_rational(J.length))


def _middle_third_holds_half(J: UnitInterval) -> bool:
    third = J.length / 3
    return J.lo + third <= HALF <= J.lo + 2 * third


def shrinking_system(xi, steps: int) -> ShrinkTrace:
    """Run the adaptive schedule ``phi^{k_1} psi_1 phi^{k_2} psi_2 ...`` on ``[0, xi]``.

    Before each map application the current interval is tested: if its
    closed middle third contains 1/2, ``g`` is applied; else if it meets
    ``[1 - xi, 1]``, ``f`` is applied; otherwise ``phi``.
    """
    xi = as_rational(xi)
    if not 0 < xi < Fraction(1, 4):
        raise PreconditionError("xi must lie in (0, 1/4)")
    if steps < 1:
        raise PreconditionError("steps must be >= 1")
    phi, f, g = shrink_maps(xi)
    # pure translation by xi reaches [1 - xi, 1] within this many steps
    bound = int(1 / xi) + 2
    J = UnitInterval(0, xi)
    lengths = [J.length]
    schedule: List[Tuple[int, str]] = []
    records: List[ShrinkStep] = []
    k = 0
    for t in range(1, steps + 1):
        if _middle_third_holds_half(J):
            name, T = "g", g
        elif J.hi >= 1 - xi:
            name, T = "f", f
        else:
            name, T = "phi", phi
        J = image_interval(T, J)
        if name == "phi":
            k += 1
            if k > bound:
                raise NoTrigger(f"no trigger after {k} applications of phi")
        else:
            schedule.append((k, name))
            k = 0
        lengths.append(J.length)
        records.append(ShrinkStep(t, name, J))
    return ShrinkTrace(xi=xi, schedule=schedule, lengths=lengths, steps=records)

"""Constructive specification witnesses for step skew products.

Given orbit segments ``(omega_j, x_j, n_j)`` and ``eps``, :func:`witness`
builds a point ``(eta, z)`` with ``F^{r_k}(eta, z) = (eta, z)`` that
eps-traces every segment, with every gap equal to ``M(eps)``:

1. ``M = m p + 2K`` from the non-shrinking bound ``gamma``, the covering
   exponent ``m`` of a mixing anchor of period ``p``, and the base gap ``K``;
2. a periodic base point ``eta`` copying each ``omega_j`` and carrying the
   anchor block ``alpha^m`` at offset ``n_j + K`` inside every gap;
3. the tracing intervals ``J_j`` around each ``x_j``;
4. nested intervals ``K_j`` with ``f_0^{r_j}(K_j) = J_{j+1}``;
5. an exact periodic point ``z`` of ``f_0^{r_k}`` inside the last ``K``.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence

from .errors import (
    InternalContradiction,
    NoAnchorFound,
    PreconditionError,
    TargetNotCovered,
)
from .nonshrink import gamma_bound
from .numeric import UnitInterval, as_rational, format_rational
from .pwl import (
    PwlMap,
    component_containing,
    compose,
    is_mixing,
    is_surjective,
    leo_exponent,
    preimage_components,
    preimage_points,
)
from .skew import (
    OrbitSegmentSpec,
    SkewPoint,
    SkewSystem,
    TracingAudit,
    fibre_orbit,
    nonaut_compose,
    nonaut_image,
    nonaut_image_chain,
    return_times,
    symbols,
    verify_tracing,
)
from .subshift import (
    BasePoint,
    Word,
    base_gap_length,
    construct_base_witness,
    format_word,
    is_word,
)


@dataclass(frozen=True)
class MixingAnchor:
    """A periodic base point whose fibre composite over one period is mixing."""

    alpha: BasePoint
    composite: PwlMap

    @property
    def p(self) -> int:
        return len(self.alpha.period)

    def to_json(self):
        return {"alpha": format_word(self.alpha.period), "p": self.p,
                "composite": self.composite.to_json()}


def _is_proper_power(w: Word) -> bool:
    n = len(w)
    return any(n % d == 0 and w == w[:d] * (n // d) for d in range(1, n))


def anchor_from_word(sys: SkewSystem, word: Sequence[int], cap: int = 64) -> MixingAnchor:
    w = tuple(word)
    if not w or not is_word(sys.base, w) or not sys.base.allows(w[-1], w[0]):
        raise PreconditionError(f"{format_word(w)} is not a cyclic word of the base subshift")
    composite = compose([sys.fibre(a) for a in w])
    if not is_mixing(composite, cap):
        raise NoAnchorFound(f"composite over {format_word(w)} is not seen to be mixing")
    return MixingAnchor(BasePoint.periodic(w), composite)


def find_mixing_anchor(sys: SkewSystem, max_period: int = 4, cap: int = 64) -> MixingAnchor:
    """First cyclic word (by length, then lexicographically) with a mixing composite."""
    if max_period < 1:
        raise PreconditionError("max_period must be >= 1")
    for p in range(1, max_period + 1):
        for w in itertools.product(sys.base.symbols, repeat=p):
            if _is_proper_power(w):
                continue
            if not is_word(sys.base, w) or not sys.base.allows(w[-1], w[0]):
                continue
            composite = compose([sys.fibre(a) for a in w])
            if is_mixing(composite, cap):
                return MixingAnchor(BasePoint.periodic(w), composite)
    raise NoAnchorFound(f"no periodic word of length <= {max_period} has a mixing composite")


class GapLength(NamedTuple):
    M: int
    K: int
    gamma: Fraction
    m: int


def _check_eps(eps) -> Fraction:
    eps = as_rational(eps)
    if not 0 < eps < 1:
        raise PreconditionError("eps must lie in (0, 1)")
    return eps


def gap_length_M(sys: SkewSystem, eps, anchor: MixingAnchor) -> GapLength:
    """``M = m p + 2K``; depends on the system, ``eps`` and the anchor only."""
    eps = _check_eps(eps)
    if not all(sys.surjective):
        raise PreconditionError("every fibre map must be surjective")
    gamma = gamma_bound(sys.fibres, eps).gamma
    m = leo_exponent(anchor.composite, gamma)
    K = base_gap_length(sys.base, eps)
    return GapLength(M=m * anchor.p + 2 * K, K=K, gamma=gamma, m=m)


def tracing_component(sys: SkewSystem, eta: BasePoint, start: int, x, n: int, eps) -> UnitInterval:
    """Component containing ``x`` of ``{y : |f^i(x) - f^i(y)| <= eps, 0 <= i < n}``.

    Maps are ``f_{start}, f_{start+1}, ...`` read off ``eta``.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    x = as_rational(x)
    eps = as_rational(eps)
    seq = symbols(eta, start, n - 1)
    xs = fibre_orbit(sys, eta, start, n - 1, x)
    C = UnitInterval.around(x, eps)
    for i in range(1, n):
        E = UnitInterval.around(xs[i], eps)
        for t in range(i - 1, -1, -1):
            E = component_containing(preimage_components(sys.fibre(seq[t]), E), xs[t])
        C = UnitInterval(max(C.lo, E.lo), min(C.hi, E.hi))
    return C


def _minimal_cover(T: PwlMap, W: UnitInterval, V: UnitInterval) -> UnitInterval:
    """Leftmost minimal subinterval of ``W`` that ``T`` maps exactly onto ``V``."""
    lows = preimage_points(T, V.lo, within=W)
    if V.is_degenerate:
        if not lows:
            raise TargetNotCovered(f"{V} is not hit from {W}")
        return UnitInterval(lows[0], lows[0])
    highs = preimage_points(T, V.hi, within=W)
    marks = sorted([(u, 0) for u in lows] + [(v, 1) for v in highs])
    # consecutive marks of opposite kind bound an interval mapped onto V
    for (u, a), (v, b) in zip(marks, marks[1:]):
        if a != b:
            return UnitInterval(u, v)
    raise TargetNotCovered(f"{V} is not covered by the image of {W}")


def pullback_onto(
    sys: SkewSystem,
    eta: BasePoint,
    start: int,
    length: int,
    source: UnitInterval,
    target: UnitInterval,
) -> UnitInterval:
    """A subinterval ``V`` of ``source`` with ``f_start^length(V) = target`` exactly."""
    chain = nonaut_image_chain(sys, eta, start, length, source)
    if not target.issubset(chain[-1]):
        raise TargetNotCovered(f"{target} is not inside {chain[-1]}")
    seq = symbols(eta, start, length)
    V = target
    for t in range(length, 0, -1):
        V = _minimal_cover(sys.fibre(seq[t - 1]), chain[t - 1], V)
    return V


def _affine_pieces(sys: SkewSystem, seq: Sequence[int], C: UnitInterval, cap: int):
    """Split ``C`` so that the composition along ``seq`` is affine on each part.

    Returns ``[(domain, a, b)]`` with ``f(x) = a x + b`` on ``domain``, or
    None once more than ``cap`` parts would be needed.
    """
    parts = [(C, Fraction(1), Fraction(0))]
    for q in seq:
        T = sys.fibre(q)
        nxt = []
        for D, a, b in parts:
            ends = sorted((a * D.lo + b, a * D.hi + b))
            cuts = [ends[0]] + [c for c in T.xs if ends[0] < c < ends[1]] + [ends[1]]
            for y0, y1 in zip(cuts, cuts[1:]):
                x0, x1 = sorted(((y0 - b) / a, (y1 - b) / a))
                mid = (y0 + y1) / 2
                for (P, s) in T.pieces():
                    if P.lo <= mid <= P.hi:
                        break
                c = T.nodes[T.xs.index(P.lo)][1] - s * P.lo
                nxt.append((UnitInterval(x0, x1), s * a, s * b + c))
        if len(nxt) > cap:
            return None
        parts = nxt
    return parts


def periodic_point_in(
    sys: SkewSystem,
    eta: BasePoint,
    period: int,
    K: UnitInterval,
    piece_cap: int = 8,
    max_rounds: int = 200,
) -> Fraction:
    """Exact ``z`` in ``K`` with ``f_0^period(z) = z``.

    Requires ``f_0^period(K) ⊇ K``. Each round replaces the candidate
    interval by a subinterval mapped onto it, until the composition is affine
    on a few pieces; then the fixed-point equation is solved exactly on each
    piece and the leftmost solution is returned.
    """
    if period < 1:
        raise PreconditionError("period must be >= 1")
    if not K.issubset(nonaut_image(sys, eta, 0, period, K)):
        raise PreconditionError(f"the image of {K} does not cover it")
    seq = symbols(eta, 0, period)
    C = K
    for _ in range(max_rounds):
        pieces = _affine_pieces(sys, seq, C, piece_cap)
        if pieces is not None:
            found = []
            for D, a, b in pieces:
                if a != 1:
                    z = b / (1 - a)
                    if z in D:
                        found.append(z)
            for z in sorted(found):
                if nonaut_compose(sys, eta, 0, period, z) == z:
                    return z
        C = pullback_onto(sys, eta, 0, period, C, C)
    raise InternalContradiction(f"no periodic point isolated after {max_rounds} rounds")


@dataclass
class WitnessReport:
    eps: Fraction
    M: int
    K: int
    gamma: Fraction
    m: int
    anchor: MixingAnchor
    eta: BasePoint
    z: Fraction
    r: List[int]
    J: List[UnitInterval]
    Knested: List[UnitInterval]
    audit: TracingAudit
    system: SkewSystem
    segments: List[OrbitSegmentSpec]
    gaps: List[int] = field(default_factory=list)

    @property
    def point(self) -> SkewPoint:
        return SkewPoint(self.eta, self.z)

    def to_json(self):
        return {
            "eps": format_rational(self.eps),
            "M": self.M,
            "K": self.K,
            "gamma": format_rational(self.gamma),
            "m": self.m,
            "anchor": self.anchor.to_json(),
            "eta": str(self.eta),
            "z": format_rational(self.z),
            "r": list(self.r),
            "gaps": list(self.gaps),
            "J": [J.to_json() for J in self.J],
            "Knested": [Kn.to_json() for Kn in self.Knested],
            "audit": self.audit.to_json(),
            "system": self.system.to_json(),
            "segments": [
                {"base": str(s.point.base), "x": format_rational(s.point.fibre), "length": s.length}
                for s in self.segments
            ],
        }


def witness(
    sys: SkewSystem,
    segments: Sequence[OrbitSegmentSpec],
    eps,
    anchor: Optional[MixingAnchor] = None,
    max_period: int = 4,
    gaps: Optional[Sequence[int]] = None,
) -> WitnessReport:
    """Build and audit a periodic point eps-tracing ``segments`` with gaps ``M(eps)``.

    ``gaps`` (each ``>= M``) switches to prescribed longer gaps: segment ``j``
    is then stretched by ``gaps[j] - M`` and traced with gap ``M``, which
    traces the original segments with the requested gaps.

    Raises InternalContradiction if any step of the construction fails a
    check that the argument guarantees.
    """
    eps = _check_eps(eps)
    segments = list(segments)
    if not segments:
        raise PreconditionError("at least one segment is required")
    if anchor is None:
        anchor = find_mixing_anchor(sys, max_period)
    gd = gap_length_M(sys, eps, anchor)
    M, K, m = gd.M, gd.K, gd.m
    if gaps is None:
        gaps = [M] * len(segments)
    else:
        gaps = list(gaps)
        if len(gaps) != len(segments) or any(g < M for g in gaps):
            raise PreconditionError(f"need one gap per segment, each at least M={M}")
    lengths = [s.length + g - M for s, g in zip(segments, gaps)]

    block = anchor.alpha.period * m
    mp = len(block)
    eta = construct_base_witness(
        sys.base,
        [(s.point.base, n, block or None) for s, n in zip(segments, lengths)],
        eps, K, M,
    )
    r = return_times(lengths, [M] * len(segments))
    for j, n in enumerate(lengths):
        at = r[j] + n + K
        if eta.shift_by(at).prefix(mp) != block:
            raise InternalContradiction(f"anchor block missing at position {at}")

    J = [tracing_component(sys, eta, r[j], s.point.fibre, n, eps)
         for j, (s, n) in enumerate(zip(segments, lengths))]
    for j, n in enumerate(lengths):
        if not nonaut_image(sys, eta, r[j], n + K + mp, J[j]).is_unit:
            raise InternalContradiction(f"J_{j + 1} does not cover [0, 1] by the end of its anchor block")

    Knested: List[UnitInterval] = []
    cur = J[0]
    for j in range(1, len(segments)):
        cur = pullback_onto(sys, eta, 0, r[j], cur, J[j])
        Knested.append(cur)
    z = periodic_point_in(sys, eta, r[-1], cur)

    audit = verify_tracing(sys, segments, M, SkewPoint(eta, z), gaps)
    if not audit.passes(eps):
        raise InternalContradiction(f"audit defect {audit.max_defect} exceeds eps {eps}")
    return WitnessReport(eps=eps, M=M, K=K, gamma=gd.gamma, m=m, anchor=anchor, eta=eta,
                         z=z, r=r, J=J, Knested=Knested, audit=audit, system=sys,
                         segments=segments, gaps=gaps)

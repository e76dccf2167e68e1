"""Step skew products ``F(omega, x) = (S omega, T_{omega_0}(x))`` and the tracing audit.

The audit in :func:`verify_tracing` only evaluates orbits and distances; it
shares no code with the witness construction and serves as its oracle.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import kernel
from .errors import NotPeriodic, PreconditionError
from .numeric import UnitInterval, as_rational, format_rational, parse_rational
from .pwl import PwlMap, is_expanding, is_surjective
from .subshift import BasePoint, Sft, in_sft, rho, symbol_at


@dataclass(frozen=True)
class SkewSystem:
    base: Sft
    fibres: Tuple[PwlMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "fibres", tuple(self.fibres))
        if len(self.fibres) != self.base.alphabet_size:
            raise PreconditionError(
                f"{len(self.fibres)} fibre maps for an alphabet of size {self.base.alphabet_size}"
            )

    def fibre(self, q: int) -> PwlMap:
        return self.fibres[q - 1]

    @property
    def tables(self) -> list:
        # indexed by symbol, so slot 0 is unused
        return [None] + [T.table for T in self.fibres]

    @property
    def expanding(self) -> Tuple[bool, ...]:
        return tuple(is_expanding(T) for T in self.fibres)

    @property
    def surjective(self) -> Tuple[bool, ...]:
        return tuple(is_surjective(T) for T in self.fibres)

    def to_json(self):
        return {
            "base": self.base.to_json(),
            "fibres": [T.to_json() for T in self.fibres],
        }


@dataclass(frozen=True)
class SkewPoint:
    base: BasePoint
    fibre: Fraction

    def __post_init__(self):
        x = as_rational(self.fibre)
        if not 0 <= x <= 1:
            raise PreconditionError(f"fibre coordinate {x} outside [0, 1]")
        object.__setattr__(self, "fibre", x)


@dataclass(frozen=True)
class OrbitSegmentSpec:
    point: SkewPoint
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise PreconditionError("segment length must be >= 1")


def step(sys: SkewSystem, p: SkewPoint) -> SkewPoint:
    q = symbol_at(p.base, 0)
    return SkewPoint(p.base.shift_by(1), sys.fibre(q)(p.fibre))


def orbit(sys: SkewSystem, p: SkewPoint, n: int) -> List[SkewPoint]:
    out = [p]
    for _ in range(n):
        p = step(sys, p)
        out.append(p)
    return out


def symbols(eta: BasePoint, j: int, i: int) -> List[int]:
    """The symbols ``eta_j, ..., eta_{j+i-1}`` selecting ``f_j, ..., f_{j+i-1}``."""
    return list(eta.shift_by(j).prefix(i))


def nonaut_compose(sys: SkewSystem, eta: BasePoint, j: int, i: int, x) -> Fraction:
    """``f_j^i(x)`` for the nonautonomous system read off ``eta``."""
    if i < 0 or j < 0:
        raise PreconditionError("i and j must be >= 0")
    x = as_rational(x)
    n, d = kernel.orbit_point(sys.tables, symbols(eta, j, i), x.numerator, x.denominator)
    return Fraction(n, d)


def fibre_orbit(sys: SkewSystem, eta: BasePoint, j: int, n: int, x) -> List[Fraction]:
    """``[f_j^0(x), f_j^1(x), ..., f_j^n(x)]``."""
    x = as_rational(x)
    trace = kernel.orbit_trace(sys.tables, symbols(eta, j, n), x.numerator, x.denominator)
    return [Fraction(a, b) for a, b in trace]


def nonaut_image_chain(sys: SkewSystem, eta: BasePoint, j: int, i: int, J: UnitInterval) -> List[UnitInterval]:
    """``[J, f_j(J), f_j^2(J), ..., f_j^i(J)]`` computed exactly."""
    chain = kernel.image_chain(sys.tables, symbols(eta, j, i),
                               J.lo.numerator, J.lo.denominator, J.hi.numerator, J.hi.denominator)
    return [UnitInterval(Fraction(a, b), Fraction(c, d)) for a, b, c, d in chain]


def nonaut_image(sys: SkewSystem, eta: BasePoint, j: int, i: int, J: UnitInterval) -> UnitInterval:
    return nonaut_image_chain(sys, eta, j, i, J)[-1]


def product_metric(p: SkewPoint, q: SkewPoint) -> Fraction:
    return max(rho(p.base, q.base), abs(p.fibre - q.fibre))


@dataclass
class TracingAudit:
    """Outcome of checking a candidate periodic point against orbit segments."""

    r: List[int]
    gaps: List[int]
    periodic: bool
    max_defect: Fraction
    segment_defects: List[Fraction] = field(default_factory=list)

    def passes(self, eps) -> bool:
        return self.periodic and self.max_defect <= as_rational(eps)

    def to_json(self):
        return {
            "r": list(self.r),
            "gaps": list(self.gaps),
            "periodic": self.periodic,
            "max_defect": format_rational(self.max_defect),
            "segment_defects": [format_rational(d) for d in self.segment_defects],
        }

    @classmethod
    def from_json(cls, data) -> "TracingAudit":
        return cls(
            r=list(data["r"]),
            gaps=list(data["gaps"]),
            periodic=bool(data["periodic"]),
            max_defect=parse_rational(data["max_defect"]),
            segment_defects=[parse_rational(d) for d in data["segment_defects"]],
        )


def return_times(lengths: Sequence[int], gaps: Sequence[int]) -> List[int]:
    """``r_0 = 0`` and ``r_j = r_{j-1} + n_j + gap_j``."""
    r = [0]
    for n, g in zip(lengths, gaps):
        r.append(r[-1] + n + g)
    return r


def verify_tracing(
    sys: SkewSystem,
    segments: Sequence[OrbitSegmentSpec],
    M: int,
    witness: SkewPoint,
    gaps: Optional[Sequence[int]] = None,
) -> TracingAudit:
    """Check ``F^{r_k}(witness) == witness`` exactly and measure the tracing defect.

    With ``gaps`` omitted every gap equals ``M``. Passing ``gaps`` (each at
    least ``M``) audits the variant of the definition where gaps are only
    bounded below.

    Raises NotPeriodic when the witness does not return exactly.
    """
    if not witness.base.is_periodic:
        raise PreconditionError("witness base point must be purely periodic")
    if not segments:
        raise PreconditionError("no segments to trace")
    if gaps is None:
        gaps = [M] * len(segments)
    else:
        gaps = list(gaps)
        if len(gaps) != len(segments) or any(g < M for g in gaps):
            raise PreconditionError("need one gap per segment, each at least M")
    lengths = [s.length for s in segments]
    r = return_times(lengths, gaps)
    eta, z = witness.base, witness.fibre
    wz = fibre_orbit(sys, eta, 0, r[-1], z)
    if eta.shift_by(r[-1]) != eta or wz[-1] != z:
        raise NotPeriodic(f"F^{r[-1]} does not fix the witness")

    defects = []
    for j, seg in enumerate(segments):
        omega, x = seg.point.base, seg.point.fibre
        if not in_sft(sys.base, omega):
            raise PreconditionError(f"segment base point {omega} is not in the subshift")
        xs = fibre_orbit(sys, omega, 0, seg.length - 1, x)
        worst = Fraction(0)
        for i in range(seg.length):
            d = max(rho(omega.shift_by(i), eta.shift_by(r[j] + i)), abs(xs[i] - wz[r[j] + i]))
            worst = max(worst, d)
        defects.append(worst)
    return TracingAudit(r=r, gaps=gaps, periodic=True, max_defect=max(defects),
                        segment_defects=defects)

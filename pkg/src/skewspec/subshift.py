"""Subshifts of finite type, eventually periodic base points, and base witnesses.

Symbols are the integers ``1..n``. The metric on sequences is
``rho(x, y) = 2**-j`` where ``j`` is the first index at which they differ,
so ``rho < 1`` forces equal first symbols and ``rho <= eps`` is the same as
agreeing on the first ``agreement_depth(eps)`` symbols.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import BudgetTooSmall, InvalidSft, NoPath, NotPrimitive, PreconditionError
from .numeric import as_rational

Word = Tuple[int, ...]


def parse_word(text: str) -> Word:
    s = text.strip()
    if not s.isdigit() or "0" in s:
        raise ValueError(f"a word is a string over the digits 1-9, got {text!r}")
    return tuple(int(c) for c in s)


def format_word(w: Sequence[int]) -> str:
    return "".join(str(a) for a in w)


@dataclass(frozen=True)
class Sft:
    """Subshift of finite type given by its 0/1 transition matrix."""

    alphabet_size: int
    allowed: Tuple[Tuple[bool, ...], ...]

    def __post_init__(self):
        n = self.alphabet_size
        if not 1 <= n <= 9:
            raise InvalidSft("alphabet size must be between 1 and 9")
        rows = tuple(tuple(bool(v) for v in row) for row in self.allowed)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise InvalidSft(f"transition matrix must be {n}x{n}")
        for a in range(n):
            if not any(rows[a]):
                raise InvalidSft(f"symbol {a + 1} has no allowed successor")
            if not any(rows[b][a] for b in range(n)):
                raise InvalidSft(f"symbol {a + 1} has no allowed predecessor")
        object.__setattr__(self, "allowed", rows)

    @classmethod
    def full(cls, n: int) -> "Sft":
        return cls(n, tuple((True,) * n for _ in range(n)))

    @classmethod
    def from_forbidden(cls, n: int, forbidden: Iterable[str]) -> "Sft":
        rows = [[True] * n for _ in range(n)]
        for pair in forbidden:
            w = parse_word(pair)
            if len(w) != 2 or max(w) > n:
                raise InvalidSft(f"forbidden word {pair!r} is not a pair over 1..{n}")
            rows[w[0] - 1][w[1] - 1] = False
        return cls(n, tuple(tuple(r) for r in rows))

    @classmethod
    def golden_mean(cls) -> "Sft":
        return cls.from_forbidden(2, ["22"])

    def allows(self, a: int, b: int) -> bool:
        return self.allowed[a - 1][b - 1]

    @property
    def symbols(self) -> range:
        return range(1, self.alphabet_size + 1)

    def to_json(self):
        return {
            "alphabet": self.alphabet_size,
            "matrix": [[int(v) for v in row] for row in self.allowed],
        }


@dataclass(frozen=True, eq=False)
class BasePoint:
    """The eventually periodic sequence ``preperiod + period + period + ...``.

    Equality is equality of the represented sequences, decided on the
    canonical (shortest) representation.
    """

    preperiod: Word
    period: Word

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period word must be nonempty")
        if any(s < 1 for s in self.preperiod + self.period):
            raise ValueError("symbols are positive integers")

    @classmethod
    def parse(cls, text: str) -> "BasePoint":
        """``"12|3"`` means 12333...; a bare word ``"12"`` means (12)^inf."""
        pre, sep, per = text.strip().partition("|")
        if not sep:
            pre, per = "", pre
        return cls(parse_word(pre) if pre else (), parse_word(per))

    @classmethod
    def periodic(cls, word: Sequence[int]) -> "BasePoint":
        return cls((), tuple(word))

    def __str__(self) -> str:
        return f"{format_word(self.preperiod)}|{format_word(self.period)}"

    def __repr__(self) -> str:
        return f"BasePoint({str(self)!r})"

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    def canonical(self) -> "BasePoint":
        per = self.period
        p = len(per)
        for d in range(1, p + 1):
            if p % d == 0 and per == per[:d] * (p // d):
                per = per[:d]
                break
        pre = self.preperiod
        while pre and pre[-1] == per[-1]:
            per = (pre[-1],) + per[:-1]
            pre = pre[:-1]
        return BasePoint(pre, per)

    def __eq__(self, other):
        if not isinstance(other, BasePoint):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.preperiod == b.preperiod and a.period == b.period

    def __hash__(self):
        c = self.canonical()
        return hash((c.preperiod, c.period))

    def symbol_at(self, i: int) -> int:
        return symbol_at(self, i)

    def prefix(self, n: int) -> Word:
        k = len(self.preperiod)
        if n <= k:
            return self.preperiod[:n]
        p = len(self.period)
        reps = (n - k) // p + 1
        return (self.preperiod + self.period * reps)[:n]

    def shift_by(self, i: int) -> "BasePoint":
        k = len(self.preperiod)
        if i <= k:
            return BasePoint(self.preperiod[i:], self.period)
        r = (i - k) % len(self.period)
        return BasePoint((), self.period[r:] + self.period[:r])


def symbol_at(x: BasePoint, i: int) -> int:
    if i < 0:
        raise PreconditionError("index must be >= 0")
    k = len(x.preperiod)
    if i < k:
        return x.preperiod[i]
    return x.period[(i - k) % len(x.period)]


def shift(x: BasePoint) -> BasePoint:
    return x.shift_by(1)


def _agreement_horizon(x: BasePoint, y: BasePoint) -> int:
    # two eventually periodic sequences that agree this far agree forever
    px, py = len(x.period), len(y.period)
    return max(len(x.preperiod), len(y.preperiod)) + px * py // gcd(px, py)


def first_disagreement(x: BasePoint, y: BasePoint) -> Optional[int]:
    for j in range(_agreement_horizon(x, y)):
        if symbol_at(x, j) != symbol_at(y, j):
            return j
    return None


def rho(x: BasePoint, y: BasePoint) -> Fraction:
    """``2**-j`` for the first disagreement index ``j``; 0 when ``x == y``."""
    j = first_disagreement(x, y)
    if j is None:
        return Fraction(0)
    return Fraction(1, 2 ** j)


def agreement_depth(eps) -> int:
    """Least ``h`` with ``2**-h <= eps``: rho <= eps iff the first h symbols agree."""
    eps = as_rational(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    h = 0
    while eps * 2 ** h < 1:
        h += 1
    return h


def is_word(B: Sft, w: Sequence[int]) -> bool:
    if any(not 1 <= a <= B.alphabet_size for a in w):
        return False
    return all(B.allows(a, b) for a, b in zip(w, w[1:]))


def in_sft(B: Sft, x: BasePoint) -> bool:
    """Whether the whole infinite sequence avoids forbidden pairs, seams included."""
    return is_word(B, x.preperiod + x.period) and B.allows(x.period[-1], x.period[0])


def _bool_matmul(A, C):
    n = len(A)
    return tuple(
        tuple(any(A[i][k] and C[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def primitivity_exponent(B: Sft) -> int:
    """Connector length that works between any two symbols from then on.

    0 when every transition is allowed; otherwise the least ``t`` with
    ``A^t > 0``. Since no symbol is stranded, ``A^t > 0`` implies
    ``A^(t+1) > 0``, so connecting words of every length ``>= t`` exist.
    """
    A = B.allowed
    if all(all(row) for row in A):
        return 0
    n = B.alphabet_size
    P = A
    for t in range(1, (n - 1) ** 2 + 2):
        if all(all(row) for row in P):
            return t
        P = _bool_matmul(P, A)
    raise NotPrimitive("transition matrix is not primitive; the subshift is not mixing")


def connecting_word(B: Sft, a: int, b: int, t: int) -> Word:
    """Lexicographically least word ``w`` of length ``t`` making ``a w b`` a B-word."""
    if t < 0:
        raise PreconditionError("length must be >= 0")
    # reach[s]: symbols with an s-step path to b
    reach = [{b}]
    for _ in range(t):
        prev = reach[-1]
        reach.append({c for c in B.symbols if any(B.allows(c, d) for d in prev)})
    if t == 0:
        if B.allows(a, b):
            return ()
        raise NoPath(f"{a}{b} is not allowed")
    w = []
    cur = a
    for i in range(t):
        need = reach[t - i]
        for s in B.symbols:
            if B.allows(cur, s) and s in need:
                w.append(s)
                cur = s
                break
        else:
            raise NoPath(f"no word of length {t} joins {a} to {b}")
    return tuple(w)


def base_gap_length(B: Sft, eps) -> int:
    eps = as_rational(eps)
    if not 0 < eps < 1:
        raise PreconditionError("eps must lie in (0, 1)")
    return agreement_depth(eps) + primitivity_exponent(B)


BaseSegment = Tuple[BasePoint, int, Optional[Word]]


def construct_base_witness(
    B: Sft,
    segments: Sequence[BaseSegment],
    eps,
    K: int,
    gap: int,
) -> BasePoint:
    """Periodic base point of period ``sum(n_j) + k * gap`` tracing the segments.

    Segment ``j`` is ``(omega, n, block)``. The witness copies the first
    ``n + h`` symbols of ``omega`` at ``r_{j-1}``; when ``block`` is given it
    also carries ``block`` (continued cyclically for ``h`` extra symbols) at
    offset ``n + K``. The remaining stretches are filled with connecting
    words, the last one closing the period.
    """
    eps = as_rational(eps)
    if not 0 < eps < 1:
        raise PreconditionError("eps must lie in (0, 1)")
    if not segments:
        raise PreconditionError("at least one segment is required")
    h = agreement_depth(eps)
    P = primitivity_exponent(B)
    if K < h + P:
        raise BudgetTooSmall(f"K={K} is below h + P = {h + P}")

    fixed: List[Tuple[int, Word]] = []
    r = 0
    for omega, n, block in segments:
        if n < 1:
            raise PreconditionError("segment lengths must be >= 1")
        if not in_sft(B, omega):
            raise PreconditionError(f"base point {omega} is not in the subshift")
        fixed.append((r, omega.prefix(n + h)))
        if block:
            if not is_word(B, block) or not B.allows(block[-1], block[0]):
                raise PreconditionError("inserted block must be a cyclic B-word")
            ext = BasePoint.periodic(block).prefix(len(block) + h)
            fixed.append((r + n + K, ext))
        r += n + gap
    period = r

    word: List[Optional[int]] = [None] * period
    for idx, (start, symbols) in enumerate(fixed):
        nxt_start = fixed[idx + 1][0] if idx + 1 < len(fixed) else fixed[0][0] + period
        if start + len(symbols) > nxt_start:
            raise BudgetTooSmall("fixed blocks overlap; the gap is too short")
        for i, s in enumerate(symbols):
            word[start + i] = s
    for idx, (start, symbols) in enumerate(fixed):
        end = start + len(symbols)
        if idx + 1 < len(fixed):
            nxt_start, nxt_sym = fixed[idx + 1][0], fixed[idx + 1][1][0]
        else:
            nxt_start, nxt_sym = fixed[0][0] + period, fixed[0][1][0]
        try:
            link = connecting_word(B, symbols[-1], nxt_sym, nxt_start - end)
        except NoPath as exc:
            raise BudgetTooSmall(str(exc)) from exc
        for i, s in enumerate(link):
            word[(end + i) % period] = s
    return BasePoint.periodic(word)


def verify_base_tracing(
    points: Sequence[BasePoint],
    lengths: Sequence[int],
    gaps: Sequence[int],
    eta: BasePoint,
) -> Tuple[bool, Fraction]:
    """Audit of the base alone: ``(S^{r_k} eta == eta, worst rho defect)``."""
    r = 0
    worst = Fraction(0)
    for omega, n, g in zip(points, lengths, gaps):
        for i in range(n):
            worst = max(worst, rho(omega.shift_by(i), eta.shift_by(r + i)))
        r += n + g
    return eta.shift_by(r) == eta, worst

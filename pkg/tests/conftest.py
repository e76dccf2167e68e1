import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from skewspec.numeric import UnitInterval
from skewspec.pwl import PwlMap, tent, valley, zigzag3
from skewspec.skew import SkewSystem
from skewspec.subshift import BasePoint, Sft, connecting_word, primitivity_exponent

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def tent_map():
    return tent()


@pytest.fixture
def full2():
    return Sft.full(2)


@pytest.fixture
def golden():
    return Sft.golden_mean()


@pytest.fixture
def tent_valley(full2):
    return SkewSystem(full2, (tent(), valley()))


FIBRES = {"tent": tent, "valley": valley, "zigzag3": zigzag3}


# -- hypothesis strategies -----------------------------------------------------

def unit_rationals(max_den=64):
    return st.builds(
        lambda q, p: Fraction(p % (q + 1), q),
        st.integers(1, max_den),
        st.integers(0, 10 ** 6),
    )


@st.composite
def unit_intervals(draw, max_den=64, nondegenerate=True):
    a = draw(unit_rationals(max_den))
    b = draw(unit_rationals(max_den))
    if nondegenerate:
        from hypothesis import assume
        assume(a != b)
    return UnitInterval(min(a, b), max(a, b))


@st.composite
def pwl_maps(draw, max_nodes=6, max_den=12):
    """Random surjective-or-not piecewise-linear maps without constant pieces."""
    k = draw(st.integers(1, max_nodes - 1))
    xs = sorted(set(draw(st.lists(st.integers(1, max_den - 1), min_size=k - 1, max_size=k - 1))))
    xs = [Fraction(0)] + [Fraction(x, max_den) for x in xs] + [Fraction(1)]
    ys = [draw(unit_rationals(max_den)) for _ in xs]
    for i in range(1, len(ys)):
        if ys[i] == ys[i - 1]:
            ys[i] = ys[i] + Fraction(1, 2 * max_den) if ys[i] < 1 else ys[i] - Fraction(1, 2 * max_den)
    return PwlMap(list(zip(xs, ys)))


@st.composite
def base_points(draw, sft, max_pre=3, max_per=4):
    """Random eventually periodic points lying in ``sft``."""
    n = sft.alphabet_size
    pre_len = draw(st.integers(0, max_pre))
    per_len = draw(st.integers(1, max_per))
    choices = draw(st.lists(st.integers(0, 10 ** 6), min_size=pre_len + per_len + 1,
                            max_size=pre_len + per_len + 1))
    rng = random.Random(choices[0])
    return random_base_point(sft, rng, pre_len, per_len)


def random_base_point(sft, rng, pre_len=None, per_len=None):
    """Random walk preperiod, then a random walk closed into a cycle by a connector."""
    if pre_len is None:
        pre_len = rng.randint(0, 3)
    if per_len is None:
        per_len = rng.randint(1, 4)
    P = primitivity_exponent(sft)

    def walk(start, length):
        w = [start]
        while len(w) < length:
            w.append(rng.choice([b for b in sft.symbols if sft.allows(w[-1], b)]))
        return w

    first = rng.choice(list(sft.symbols))
    pre = walk(first, pre_len) if pre_len else []
    start = rng.choice([b for b in sft.symbols if sft.allows(pre[-1], b)]) if pre else first
    cyc = walk(start, per_len)
    if not sft.allows(cyc[-1], cyc[0]):
        cyc = cyc + list(connecting_word(sft, cyc[-1], cyc[0], P))
    return BasePoint(tuple(pre), tuple(cyc))


def random_rational(rng, max_den=64):
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(0, q), q)


# -- independent oracles -------------------------------------------------------

def naive_eval(T: PwlMap, x: Fraction) -> Fraction:
    """Linear interpolation straight from the node list."""
    for (a0, b0), (a1, b1) in zip(T.nodes, T.nodes[1:]):
        if a0 <= x <= a1:
            return b0 + (b1 - b0) * (x - a0) / (a1 - a0)
    raise ValueError(x)


def naive_image(T: PwlMap, lo: Fraction, hi: Fraction):
    vals = [naive_eval(T, lo), naive_eval(T, hi)] + [b for a, b in T.nodes if lo < a < hi]
    return min(vals), max(vals)

"""Both kernel backends must agree bit for bit."""

import importlib
import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from skewspec import _pykernel, kernel
from skewspec.pwl import tent, valley, zigzag3

from conftest import pwl_maps, unit_intervals, unit_rationals

try:
    from skewspec import _ckernel
except ImportError:  # extension not built
    _ckernel = None

needs_c = pytest.mark.skipif(_ckernel is None, reason="compiled kernel not built")

TABLES = [None, tent().table, valley().table, zigzag3().table]
words = st.lists(st.integers(1, 3), max_size=40)


def test_backend_name():
    assert kernel.BACKEND in ("cython", "python")
    forced = os.environ.get("SKEWSPEC_PURE_PYTHON", "") not in ("", "0")
    if _ckernel is not None:
        assert kernel.BACKEND == ("python" if forced else "cython")


def test_env_forces_fallback():
    env = dict(os.environ, SKEWSPEC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import skewspec; print(skewspec.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_c
@given(pwl_maps(), unit_rationals(max_den=1000))
def test_eval_agrees(T, x):
    assert _ckernel.eval_point(T.table, x.numerator, x.denominator) == \
        _pykernel.eval_point(T.table, x.numerator, x.denominator)


@needs_c
@given(pwl_maps(), unit_intervals(nondegenerate=False))
def test_image_agrees(T, J):
    args = (T.table, J.lo.numerator, J.lo.denominator, J.hi.numerator, J.hi.denominator)
    assert _ckernel.image(*args) == _pykernel.image(*args)


@needs_c
@given(words, unit_rationals(max_den=97))
def test_orbits_agree(seq, x):
    a = (TABLES, seq, x.numerator, x.denominator)
    assert _ckernel.orbit_trace(*a) == _pykernel.orbit_trace(*a)
    assert _ckernel.orbit_point(*a) == _pykernel.orbit_point(*a)
    assert _pykernel.orbit_trace(*a)[-1] == _pykernel.orbit_point(*a)


@needs_c
@given(words, unit_intervals(max_den=97, nondegenerate=False))
def test_chains_agree(seq, J):
    a = (TABLES, seq, J.lo.numerator, J.lo.denominator, J.hi.numerator, J.hi.denominator)
    assert _ckernel.image_chain(*a) == _pykernel.image_chain(*a)
    assert _ckernel.min_chain_length(*a) == _pykernel.min_chain_length(*a)


@given(words, unit_intervals(max_den=97, nondegenerate=False))
def test_min_chain_length_is_min_of_chain(seq, J):
    a = (TABLES, seq, J.lo.numerator, J.lo.denominator, J.hi.numerator, J.hi.denominator)
    chain = _pykernel.image_chain(*a)
    least = min(Fraction(c, d) - Fraction(l, m) for l, m, c, d in chain)
    assert Fraction(*_pykernel.min_chain_length(*a)) == least


def test_results_are_reduced():
    n, d = _pykernel.eval_point(tent().table, 1, 4)
    assert (n, d) == (1, 2)
    if _ckernel is not None:
        assert _ckernel.eval_point(tent().table, 2, 8) == (1, 2)

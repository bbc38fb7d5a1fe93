import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from qbundle import _kernel, _rewrite_py

compiled_only = pytest.mark.skipif(not _kernel.COMPILED, reason="compiled kernel not built")


@compiled_only
@given(st.integers(2, 3).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n * n - 1), max_size=7).map(tuple))))
def test_compiled_matches_pure(case):
    n, word = case
    assert _kernel.Rewriter(n).normal_form(word) == _rewrite_py.Rewriter(n).normal_form(word)


@compiled_only
def test_compiled_interface():
    rw = _kernel.Rewriter(3)
    ref = _rewrite_py.Rewriter(3)
    assert rw.rule(5, 1) == ref.rule(5, 1)
    assert rw.insert((0, 4), 2) == ref.insert((0, 4), 2)
    assert rw.product((4, 8), (0, 2)) == ref.product((4, 8), (0, 2))
    assert rw.cache_size() > 0


def test_pair_rule_shapes():
    # t[2,2] t[1,1] at n=2: one commuted term plus the (q - q^-1) correction
    rule = _rewrite_py.pair_rule(3, 0, 2)
    assert rule == ((((0, 1),), (0, 3)), (((-1, 1), (1, -1)), (1, 2)))
    assert _rewrite_py.pair_rule(1, 0, 2) == ((((-1, 1),), (0, 1)),)
    assert _rewrite_py.pair_rule(2, 1, 2) == ((((0, 1),), (1, 2)),)


def test_pure_fallback_selected_by_environment():
    env = dict(os.environ, QBUNDLE_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import qbundle; print(qbundle.COMPILED)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "False"


def test_suites_agree_across_kernels():
    code = ("from qbundle.suites import Config, run_suite;"
            "print([r.pattern() for r in run_suite(Config(n=2, suites=['diamond','laplace','thm9']))])")
    res = []
    for flag in ("1", "0"):
        env = dict(os.environ, QBUNDLE_PURE=flag)
        res.append(subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                                  env=env, check=True).stdout)
    assert res[0] == res[1]

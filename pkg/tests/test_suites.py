from fractions import Fraction

import pytest

from qbundle import get_algebra
from qbundle.gaussbundle import Permutation, gauss_decompose, u_stability_check
from qbundle.report import FAIL, INCONCLUSIVE, SuiteReport
from qbundle.suites import SUITES, Config, UnknownSuite, run_suite


def test_default_n2_all_pass():
    reports = run_suite(Config(n=2))
    assert reports and all(r.passed for r in reports)
    names = {r.suite for r in reports}
    for s in ("diamond", "laplace", "antipode", "quasidet", "ore", "thm9", "thm10", "thm11i", "thm11ii",
              "prop1", "cocycle", "compat", "nested"):
        assert s in names


def test_seed_recorded_and_respected():
    a = run_suite(Config(n=2, suites=["diamond"], seed=3))
    b = run_suite(Config(n=2, suites=["diamond"], seed=4))
    assert a[2].notes["seed"] == 3
    assert a[2].pattern() != b[2].pattern()


@pytest.mark.parametrize("q", [Fraction(2), Fraction(3, 2)])
def test_specialized_pattern_matches_symbolic_n2(q):
    sym = run_suite(Config(n=2))
    spec = run_suite(Config(n=2, q=q))
    assert [r.pattern() for r in sym] == [r.pattern() for r in spec]


def test_config_validation():
    with pytest.raises(ValueError):
        Config(n=4)
    with pytest.raises(ValueError):
        Config(q=0)
    with pytest.raises(ValueError):
        Config(n=2, sigmas=["231"])
    with pytest.raises(UnknownSuite):
        run_suite(Config(suites=["nope"]))
    assert Config(n=3, sigmas=["id", "w0"]).permutations() == [Permutation.identity(3), Permutation.reversal(3)]


def test_both_quasidet_conventions_reported():
    reps = run_suite(Config(n=2, suites=["quasidet"], quasidet_convention="both"))
    assert [r.suite for r in reps] == ["quasidet", "quasidet-printed"]
    assert reps[0].passed
    assert len(reps[1].failed) == 2


def test_uncovered_permutations_never_fail():
    alg = get_algebra(3)
    for sigma in Permutation.all(3):
        rep = u_stability_check(gauss_decompose(alg, sigma), bound=0)
        covered = sigma.is_identity() or sigma.is_reversal()
        if not covered:
            assert not rep.failed
    # with too small a bound a covered permutation does fail
    rep = u_stability_check(gauss_decompose(alg, Permutation.reversal(3)), bound=0)
    assert rep.failed and not rep.inconclusive
    rep = u_stability_check(gauss_decompose(alg, Permutation.parse("231")), bound=0)
    assert rep.inconclusive


def test_report_counts_and_dict():
    rep = SuiteReport("x")
    rep.add("a", True)
    rep.add("b", False, "1", "2")
    rep.add("c", INCONCLUSIVE, witness="bound")
    assert rep.counts() == {"pass": 1, "fail": 1, "inconclusive": 1}
    d = rep.as_dict(timing=False)
    assert d["cases"][1]["status"] == FAIL and d["cases"][1]["witness"] == "lhs != rhs"
    assert all(c["ms"] == 0 for c in d["cases"])


def test_suite_names_are_stable():
    assert SUITES == ("diamond", "laplace", "antipode", "quasidet", "ore", "thm9", "thm10", "thm11",
                      "prop1", "cocycle", "compat", "nested")

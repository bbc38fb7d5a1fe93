"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; the lines are printed in
the pytest terminal summary (see conftest.py) and also when this file is
run directly with ``python3 tests/test_acceptance.py``.
"""
import io
import json
import random
import time
from fractions import Fraction

from qbundle import get_algebra
from qbundle.borel import BLoc
from qbundle.cli import main
from qbundle.expr import parse, print_expr, random_ast
from qbundle.gaussbundle import (
    Comodule, Permutation, default_prop1_samples, flag_ore_set, gamma_hom_check, gauss_decompose, gauss_verify,
    matmul, prop1_check, transition_matrix, u_coinvariance_check, u_stability_check, union_set,
)
from qbundle.orelocal import OreFraction, compat_check, fraction_equal, ore_solve, verify_witness
from qbundle.qalgebra import diamond_check
from qbundle.qminor import antipode_axiom_check, laplace_check, quasidet_identity_check, subsets
from qbundle.suites import SUITES, Config, run_suite

VERDICTS = {}


def record(num, ok, detail):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    VERDICTS[num] = line
    print(line)
    return ok


def test_01_confluence():
    t0 = time.perf_counter()
    reps = [diamond_check(2), diamond_check(3), diamond_check(2, borel=True), diamond_check(3, borel=True)]
    dt = time.perf_counter() - t0
    counts = [len(r.cases) for r in reps]
    ok = all(r.passed for r in reps) and counts == [64, 729, 27, 216] and dt < 10
    assert record(1, ok, f"triples {counts} all confluent in {dt:.2f}s")


def test_02_laplace():
    alg = get_algebra(3)
    t0 = time.perf_counter()
    cases = 0
    offdiag = 0
    ok = True
    for m in (1, 2):
        pairs = [(K, L) for K in subsets(3, m) for L in subsets(3, m)]
        assert len(pairs) == 9
        for K, L in pairs:
            rep = laplace_check(alg, K, L)
            cases += len(rep.cases)
            offdiag += K != L
            ok &= rep.passed
    dt = time.perf_counter() - t0
    ok = ok and cases == 72 and dt < 60
    assert record(2, ok, f"{cases} expansions ({offdiag} off-diagonal pairs) exact in {dt:.2f}s")


def test_03_antipode():
    rep = antipode_axiom_check(get_algebra(3))
    ok = rep.passed and len(rep.cases) == 18
    assert record(3, ok, f"{len(rep.cases)} cross-multiplied GL identities on 9 generator pairs")


def test_04_quasideterminant_as_stated():
    # Literal statement: |T|_ij * D[^i|^j] = (-q)^(j-i) D for all (i, j).
    bad = []
    total = 0
    for n in (2, 3):
        alg = get_algebra(n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                total += 1
                if not quasidet_identity_check(alg, i, j, "printed").passed:
                    bad.append((n, i, j))
    consistent = all(quasidet_identity_check(get_algebra(n), i, j, "antipode").passed
                     for n in (2, 3) for i in range(1, n + 1) for j in range(1, n + 1))
    detail = (f"{total - len(bad)}/{total} hold with exponent j-i; failing (n,i,j)={bad}; "
              f"exponent i-j holds everywhere: {consistent}")
    assert record(4, not bad, detail)


def test_05_ore_witnesses():
    alg = get_algebra(3)
    S = flag_ore_set(alg, Permutation.identity(3), bound=3)
    found = 0
    longest = 0
    ok = True
    for g in range(9):
        x = alg.gen(*alg.label(g))
        for k in range(len(S.gens)):
            for side in ("left", "right"):
                rp, sp = ore_solve(x, (k,), S, bound=3, side=side)
                # independent re-check by normal-form multiplication
                s, spp = S.product((k,)), S.product(sp)
                good = (rp * s == spp * x) if side == "left" else (s * rp == x * spp)
                ok &= good and verify_witness(x, (k,), rp, sp, S, side) and len(sp) <= 3
                found += 1
                longest = max(longest, len(sp))
    ok = ok and found == 9 * 3 * 2
    assert record(5, ok, f"{found} left/right witnesses re-verified, longest s' has length {longest}")


def test_06_gauss_decomposition():
    t0 = time.perf_counter()
    alg3 = get_algebra(3)
    compat = all(compat_check(flag_ore_set(alg3, s)).passed for s in Permutation.all(3))
    charts = [(2, s) for s in Permutation.all(2)] + [(3, s) for s in Permutation.all(3)]
    entries = 0
    ok = compat
    for n, s in charts:
        rep = gauss_verify(gauss_decompose(get_algebra(n), s))
        entries += len(rep.cases)
        ok &= rep.passed
    dt = time.perf_counter() - t0
    ok = ok and dt < 180
    assert record(6, ok, f"compat for 6 permutations; {entries} cleared entries over 8 charts in {dt:.2f}s")


def test_07_section_is_comodule_map():
    alg = get_algebra(3)
    cases = 0
    ok = True
    for s in Permutation.all(3):
        rep = gamma_hom_check(gauss_decompose(alg, s))
        cases += len(rep.cases)
        ok &= rep.passed
    assert record(7, ok, f"{cases} relation and coaction cases over 6 charts")


def test_08_u_coinvariance():
    alg = get_algebra(3)
    cases = 0
    ok = True
    for s in Permutation.all(3):
        rep = u_coinvariance_check(gauss_decompose(alg, s))
        cases += len(rep.cases)
        ok &= rep.passed
    assert record(8, ok, f"{cases} strictly upper entries coinvariant over 6 charts")


def test_09_u_stability():
    alg2, alg3 = get_algebra(2), get_algebra(3)
    ok = True
    multiples = 0
    total = 0
    for s in Permutation.all(2):
        rep = u_stability_check(gauss_decompose(alg2, s))
        ok &= rep.passed
        total += len(rep.cases)
        multiples += sum(" * u[" in c.rhs for c in rep.cases)
    diag = [(i, i) for i in range(1, 4)]
    rep = u_stability_check(gauss_decompose(alg3, Permutation.identity(3)), borel_gens=diag)
    ok &= rep.passed
    uncovered_fail = 0
    for s in Permutation.all(3):
        if not (s.is_identity() or s.is_reversal()):
            uncovered_fail += len(u_stability_check(gauss_decompose(alg3, s)).failed)
    ok = ok and uncovered_fail == 0
    assert record(9, ok, f"n=2: {total} actions stay in the u-algebra ({multiples} are scalar multiples of u; "
                         f"b[2,1] on chart 21 gives the constant q - q^-1); n=3 id diagonal: "
                         f"{len(rep.cases)} pass; uncovered failures: {uncovered_fail}")


def test_10_kappa_round_trip():
    alg = get_algebra(2)
    M = Comodule.fundamental(alg)
    cases = 0
    ok = True
    for s in Permutation.all(2):
        ch = gauss_decompose(alg, s)
        samples = default_prop1_samples(ch, powers=2)
        rep = prop1_check(ch, M, samples)
        cases += len(rep.cases)
        ok &= rep.passed and len(rep.cases) == 6
    assert record(10, ok, f"kappa-bar o kappa = id on {cases} samples over both charts")


def test_11_cocycle():
    alg = get_algebra(2)
    M = Comodule.fundamental(alg)
    a, w = gauss_decompose(alg, Permutation.identity(2)), gauss_decompose(alg, Permutation.parse("21"))
    U = union_set([a, w])
    one = OreFraction(U, (), alg.one)
    zero = OreFraction(U, (), alg.zero)

    def is_identity(entries):
        return all(fraction_equal(v, one if c == r else zero) for (c, r), v in entries.items())

    ok = True
    for ch in (a, w):
        ok &= is_identity(transition_matrix(ch, ch, M, U).entries)
    m_id_w = transition_matrix(w, a, M, U).entries
    m_w_id = transition_matrix(a, w, M, U).entries
    ok &= is_identity(matmul(m_id_w, m_w_id, 2, U))
    ok &= not is_identity(m_id_w)
    assert record(11, ok, f"M[l,l] = I for both charts and M[id,w] M[w,id] = I over {U.name}")


def test_12_specialization():
    detail = []
    ok = True
    suites = list(SUITES)
    for n in (2, 3):
        base = run_suite(Config(n=n, suites=suites, quasidet_convention="both"))
        for q in (Fraction(2), Fraction(3, 2)):
            spec = run_suite(Config(n=n, q=q, suites=suites, quasidet_convention="both"))
            same = [r.pattern() for r in base] == [r.pattern() for r in spec]
            ok &= same
            detail.append(f"n={n} q={q}: {'identical' if same else 'DIFFERENT'}")
        # everything the symbolic run establishes also holds after specializing
        ok &= all(r.passed for r in base if r.suite != "quasidet-printed")
    assert record(12, ok, "; ".join(detail))


def _cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_13_cli():
    a = _cli("report", "--n", "3", "--seed", "11", "--no-timing")
    b = _cli("report", "--n", "3", "--seed", "11", "--no-timing")
    deterministic = a == b and json.loads(a[1])["config"]["seed"] == 11
    rng = random.Random(13)
    fixed = 0
    for _ in range(1000):
        text = print_expr(random_ast(rng, 4))
        fixed += print_expr(parse(text)) == text
    t0 = time.perf_counter()
    code, _ = _cli("check", "--n", "3", "--json")
    dt = time.perf_counter() - t0
    ok = deterministic and fixed == 1000 and code == 0 and dt < 300
    assert record(13, ok, f"JSON identical across runs: {deterministic}; round-trip fixed points "
                          f"{fixed}/1000; full n=3 suite exit {code} in {dt:.1f}s")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass

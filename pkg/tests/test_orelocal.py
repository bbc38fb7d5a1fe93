import pytest
from hypothesis import given, strategies as st

from qbundle import get_algebra, qdet
from qbundle.borel import BLoc
from qbundle.gaussbundle import Permutation, flag_ore_set
from qbundle.orelocal import (
    OreFraction, OreNotFound, OreSet, coact_fraction, coinvariant_check, compat_check, fraction_equal,
    left_divide, nested_check, ore_solve, ore_solve_linear, reindex, right_divide, verify_witness,
)

from conftest import gens2

ALG2 = get_algebra(2)
S2 = flag_ore_set(ALG2, Permutation.identity(2))
compat_check(S2)
A, B, C, D_ = gens2(ALG2)
Q = ALG2.field.q
DIDX = S2.index_of(D_)


def test_flag_set_n2():
    assert S2.labels == ["t[2,2]", "D[1,2|1,2]"]
    assert S2.quasi_commutative


def test_left_witness_for_a_over_d():
    rp, sp = ore_solve(A, (DIDX,), S2)
    assert sp == (DIDX, DIDX)
    assert rp == A * D_ + B * C * (Q.inverse() ** 3 - Q)
    assert verify_witness(A, (DIDX,), rp, sp, S2)
    # cross-check with the graded linear solve
    assert ore_solve_linear(A, (DIDX,), sp, S2) == rp


def test_q_commuting_witness():
    rp, sp = ore_solve(C, (DIDX,), S2)
    assert sp == (DIDX,)
    assert rp == C.scale(Q.inverse())


def test_right_witness():
    rp, sp = ore_solve(A, (DIDX,), S2, side="right")
    assert verify_witness(A, (DIDX,), rp, sp, S2, "right")


def test_minimal_length_search_and_bound():
    with pytest.raises(OreNotFound):
        ore_solve(A, (DIDX,), S2, bound=1)


def test_central_generator_short_circuit():
    k = S2.index_of(qdet(ALG2))
    assert ore_solve(A, (k,), S2) == (A, (k,))


def test_divisions():
    assert right_divide(A * D_, D_) == A
    assert left_divide(D_ * A, D_) == A
    assert right_divide(A, D_) is None


def test_fraction_product_example():
    x = OreFraction.inv(S2, DIDX, B)
    y = OreFraction.inv(S2, DIDX, C)
    z = x * y
    assert z.word == (DIDX, DIDX)
    assert fraction_equal(z, OreFraction(S2, (DIDX, DIDX), (B * C).scale(Q.inverse())))


def test_fraction_equality_by_common_denominator():
    x = OreFraction.inv(S2, DIDX, B)
    y = OreFraction(S2, (DIDX, DIDX), D_ * B)
    assert fraction_equal(x, y)
    assert not fraction_equal(x, OreFraction.inv(S2, DIDX, C))


def test_simplify_cancels():
    x = OreFraction(S2, (DIDX,), D_ * A)
    assert x.simplify().word == ()
    assert x.simplify().num == A


@st.composite
def fractions2(draw):
    word = tuple(draw(st.lists(st.sampled_from([0, 1]), max_size=2)))
    gens = [A, B, C, D_]
    num = ALG2.zero
    for _ in range(draw(st.integers(1, 2))):
        g = draw(st.sampled_from(gens))
        num = num + g.scale(draw(st.integers(-2, 2)))
    return OreFraction(S2, word, num)


@given(fractions2(), fractions2(), fractions2())
def test_fraction_ring_laws(x, y, z):
    assert fraction_equal((x * y) * z, x * (y * z))
    assert fraction_equal(x * (y + z), x * y + x * z)
    assert fraction_equal(x + y, y + x)


@given(fractions2())
def test_fraction_representation_independence(x):
    bigger = OreFraction(S2, (DIDX,) + x.word, D_ * x.num)
    assert fraction_equal(x, bigger)


def test_coaction_examples():
    u = OreFraction.inv(S2, DIDX, B)
    assert coinvariant_check(u)
    assert not coinvariant_check(OreFraction.inv(S2, DIDX, A))
    co = coact_fraction(OreFraction.inv(S2, DIDX))
    assert set(co.terms) == {((0, -1), ())}
    assert co.terms[((0, -1), ())] == ALG2.one
    assert BLoc(ALG2, {((0, -1), ()): ALG2.field.one}).render() == "b[2,2]^-1"


def test_compat_rejects_non_group_like():
    S = OreSet(ALG2, [C], name="bad", labels=["c"])
    rep = compat_check(S)
    assert not rep.passed
    assert rep.failed[0].witness.startswith("off-flag legs")


def test_nested_and_reindex():
    Sd = OreSet(ALG2, [qdet(ALG2)], name="S_D", labels=["D"])
    compat_check(Sd)
    x = OreFraction(Sd, (0,), B * C)
    y = reindex(x, S2)
    assert y.word == (S2.index_of(qdet(ALG2)),)
    rep = nested_check(Sd, S2, [ALG2.one, x, OreFraction(Sd, (0,), qdet(ALG2))])
    assert rep.passed

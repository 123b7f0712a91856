"""Evaluation on the five top levels: tables, words, witnesses, ranks."""

from fractions import Fraction

import pytest

from orbifock.coeffs import LPoly
from orbifock.fock import FockVector, single
from orbifock.toplevel import (TopLevelAction, conformal_shift, disprove_equiv,
                               evaluate, evaluate_word, independence_rank,
                               parse_action)
from orbifock.zhu import e_t, e_u, hgen, jgen, lam, omega, s_pair, star

F = Fraction


def E(rank, a, b):
    return TopLevelAction.unit_matrix(rank, a, b)


def test_quadratic_ladder_on_all_columns():
    acts = {
        1: (E(2, 1, 2) + E(2, 2, 1), "l1*l2",
            E(2, 1, 2).scale(F(1, 2)) + E(2, 2, 1).scale(F(1, 2))),
        2: (E(2, 1, 2).scale(-2), "-l1*l2",
            E(2, 1, 2).scale(F(-3, 4)) + E(2, 2, 1).scale(F(-1, 4))),
        3: (E(2, 1, 2).scale(3), "l1*l2",
            E(2, 1, 2).scale(F(15, 16)) + E(2, 2, 1).scale(F(3, 16))),
        4: (E(2, 1, 2).scale(-4), "-l1*l2",
            E(2, 1, 2).scale(F(-35, 32)) + E(2, 2, 1).scale(F(-5, 32))),
        5: (E(2, 1, 2).scale(5), "l1*l2",
            E(2, 1, 2).scale(F(315, 256)) + E(2, 2, 1).scale(F(35, 256))),
    }
    for m, (hm, ml, tm) in acts.items():
        S = s_pair(2, 1, 1, 2, m)
        assert evaluate(S, "Hminus") == hm
        assert str(evaluate(S, "Mlambda")) == ml
        assert evaluate(S, "Tminus") == tm
        assert evaluate(S, "Hplus").is_zero()
        assert evaluate(S, "Tplus").is_zero()


def test_unit_and_center_rows():
    assert evaluate(e_u(2, 1, 2), "Hminus") == E(2, 1, 2)
    assert evaluate(e_u(2, 1, 2), "Mlambda").is_zero()
    assert evaluate(e_u(2, 1, 2), "Tminus").is_zero()
    assert evaluate(e_t(2, 1, 2), "Tminus") == E(2, 1, 2)
    assert evaluate(e_t(2, 1, 2), "Hminus").is_zero()
    assert str(evaluate(lam(2, 1, 2), "Mlambda")) == "l1*l2"
    assert evaluate(lam(2, 1, 2), "Hminus").is_zero()
    assert evaluate(lam(2, 1, 2), "Tminus").is_zero()


def test_singlet_rows():
    w1, J1 = omega(2, 1), jgen(2, 1)
    I = TopLevelAction.identity("Tminus", 2)
    assert evaluate(w1, "Hplus") == TopLevelAction.scalar(0)
    assert evaluate(w1, "Hminus") == E(2, 1, 1)
    assert str(evaluate(w1, "Mlambda")) == "1/2*l1^2"
    assert evaluate(w1, "Tplus") == TopLevelAction.scalar(F(1, 16))
    assert evaluate(w1, "Tminus") == I.scale(F(1, 16)) + E(2, 1, 1).scale(F(1, 2))
    assert evaluate(J1, "Hminus") == E(2, 1, 1).scale(-6)
    assert str(evaluate(J1, "Mlambda")) == "-1/2*l1^2 + l1^4"
    assert evaluate(J1, "Tplus") == TopLevelAction.scalar(F(3, 128))
    assert evaluate(J1, "Tminus") == I.scale(F(3, 128)) + E(2, 1, 1).scale(F(-3, 8))


def test_evaluate_rejects_odd_or_twisted():
    with pytest.raises(ValueError):
        evaluate(single(1, False, [(1, -1)]), "Hminus")
    with pytest.raises(ValueError):
        evaluate(single(1, True, [(1, F(-1, 2)), (1, F(-1, 2))]), "Hplus")


def test_word_products():
    assert evaluate_word([e_u(3, 1, 2), e_u(3, 2, 3)], "Hminus") == E(3, 1, 3)
    assert evaluate_word([hgen(2, 1)], "Hminus") == E(2, 1, 1).scale(-9)
    lhs = evaluate_word([lam(3, 1, 2), lam(3, 2, 3)], "Mlambda")
    rhs = (evaluate(2 * omega(3, 2), "Mlambda")
           * evaluate(lam(3, 1, 3), "Mlambda"))
    assert lhs == rhs
    assert str(lhs) == "l1*l2^2*l3"


def test_word_matches_star_fold():
    gens = [omega(2, 1), jgen(2, 2), s_pair(2, 1, 1, 2, 1), e_u(2, 1, 2)]
    fams = ("Hminus", "Mlambda", "Tminus", "Hplus", "Tplus")
    for u in gens:
        for v in gens:
            sv = star(u, v)
            for fam in fams:
                assert evaluate_word([u, v], fam) == evaluate(sv, fam)


def test_disprove_equiv_witnesses():
    w1 = omega(2, 1)
    w = disprove_equiv(w1, FockVector.zero(2))
    assert w is not None and w.family == "Hminus" and w.entry == (1, 1)
    assert (w.left, w.right) == (1, 0)
    w = disprove_equiv(s_pair(2, 1, 1, 2, 1), s_pair(2, 1, 1, 2, 3))
    assert w is not None and w.family == "Hminus"
    assert disprove_equiv(w1, w1) is None
    # Polynomial witness path.
    w = disprove_equiv(lam(2, 1, 2), FockVector.zero(2))
    assert w is not None and w.family == "Mlambda" and w.entry == (1, 1)


def test_independence_rank_examples():
    S = [s_pair(2, 1, 1, 2, m) for m in range(1, 6)]
    assert independence_rank(S) == 5
    assert independence_rank(S + [s_pair(2, 1, 1, 2, 6)]) == 5
    five = [e_u(2, 1, 2), e_u(2, 2, 1), e_t(2, 1, 2), e_t(2, 2, 1), lam(2, 1, 2)]
    assert independence_rank(five) == 5
    assert independence_rank([FockVector.zero(2)]) == 0
    assert independence_rank([]) == 0


def test_rank_invariance_under_scaling_and_permutation():
    S = [s_pair(2, 1, 1, 2, m) for m in range(1, 5)]
    assert independence_rank(S) == independence_rank(list(reversed(S)))
    scaled = [F(3, 7) * S[0], -2 * S[1], S[2], F(1, 9) * S[3]]
    assert independence_rank(scaled) == independence_rank(S)


def test_conformal_shifts():
    assert conformal_shift("Hplus", 3) == 0
    assert conformal_shift("Hminus", 3) == 1
    assert conformal_shift("Tplus", 3) == F(3, 16)
    assert conformal_shift("Tminus", 3) == F(3, 16) + F(1, 2)
    shift = conformal_shift("Mlambda", 2)
    assert isinstance(shift, LPoly)
    assert shift == F(1, 2) * (LPoly.unit(2, 1) * LPoly.unit(2, 1)) \
        + F(1, 2) * (LPoly.unit(2, 2) * LPoly.unit(2, 2))


def test_action_string_round_trip():
    for fam in ("Hminus", "Tminus"):
        act = evaluate(s_pair(2, 1, 1, 2, 4), fam)
        assert parse_action(act.to_string(), fam, 2) == act
    act = evaluate(jgen(2, 1), "Mlambda")
    assert parse_action(act.to_string(), "Mlambda", 2) == act
    act = evaluate(omega(2, 1), "Tplus")
    assert parse_action(act.to_string(), "Tplus", 2) == act


def test_matrix_arithmetic_guards():
    with pytest.raises(ValueError):
        TopLevelAction.scalar(1) + TopLevelAction.poly(LPoly.const(1, 1))

"""Term orders, reduction, critical pairs, saturation, localization."""

import json

import pytest

from z3calc import presets
from z3calc.freealg import GeneratorInfo, NCPolynomial, fa_str
from z3calc.rewrite import (BudgetExceeded, LocalizeError, OrientationError,
                            Presentation, TermOrder, localize, orient,
                            saturate)
from z3calc.scalars import J, ONE


def test_term_order_weight_dominates():
    order = TermOrder({"a": 1, "b": 2}, ["a", "b"])
    assert order.key(("b",)) > order.key(("a",))
    # total weight is compared first, so three a's outweigh one b
    assert order.key(("a", "a", "a")) > order.key(("b",))


def test_term_order_longer_word_smaller_at_equal_weight():
    order = TermOrder({"a": 1, "b": 2}, ["a", "b"])
    # both weight 2: the longer word is the smaller one
    assert order.key(("b",)) > order.key(("a", "a"))


def test_term_order_precedence_tiebreak():
    order = TermOrder({"a": 1, "b": 1}, ["a", "b"])
    assert order.key(("b", "a")) > order.key(("a", "b"))


def test_orient_rejects_unorientable():
    order = TermOrder({"a": 1, "b": 1}, ["a", "b"])
    with pytest.raises(OrientationError):
        # rhs strictly larger than lhs cannot be a rewrite step
        orient(("a", "b"), NCPolynomial.word(("b", "a")), order, "bad")


def test_normal_form_idempotent():
    P = presets.build("h_plane")
    p = NCPolynomial.word(("x", "th", "x", "th"))
    nf = P.normal_form(p)
    assert P.normal_form(nf) == nf


def test_normal_form_decides_ideal_membership():
    P = presets.build("h_plane")
    xth = NCPolynomial.word(("x", "th"))
    rel = xth - NCPolynomial.word(("th", "x")) - NCPolynomial.word(("h", "x", "x"))
    assert P.normal_form(rel).is_zero()
    assert not P.normal_form(xth).is_zero()


def test_reduction_respects_order():
    P = presets.build("h_plane")
    p = NCPolynomial.word(("x", "th"))
    nf = P.normal_form(p)
    key = P.order.key
    assert all(key(w) < key(("x", "th")) for w in nf.support())


def test_budget_exceeded():
    P = presets.build("h_plane")
    with pytest.raises(BudgetExceeded):
        P.nf_word(("x",) * 3 + ("th",) * 2, budget=2)


def test_critical_pairs_joinable_on_confluent_preset():
    P = presets.build("h_plane")
    pairs = P.critical_pairs()
    assert pairs, "overlaps must exist"
    assert all(cp["joinable"] for cp in pairs)


def test_pair_census_reports_unjoinable():
    census = presets.build("glhj").pair_census()
    assert census["pairs"] == 67
    assert census["joinable"] < census["pairs"]
    entry = census["unjoinable"][0]
    assert entry["word"] and entry["rules"] and entry["difference"] != "0"


def test_homogeneity_and_termination_checks():
    for name in presets.PRESETS:
        P = presets.build(name)
        assert P.check_homogeneity() == []
        assert P.check_termination() == []


def test_saturate_fixed_point_on_confluent_system():
    H = presets.build("h_plane")
    assert len(saturate(H).rules) == len(H.rules)


def test_saturate_closes_pairs():
    G = presets.build("glhj")
    S = saturate(G, skip=presets._gl_runaway)
    c0, c1 = G.pair_census(), S.pair_census()
    assert c1["joinable"] - c1["pairs"] > c0["joinable"] - c0["pairs"] or \
        c1["joinable"] > c0["joinable"]
    added = [r for r in S.rules[len(G.rules):]]
    assert added and all(r.ref.startswith("derived:") for r in added)


def test_saturate_rules_are_consequences():
    # every derived rule must already hold in the base system: reducing
    # lhs - rhs with the saturated rules of a sound run keeps soundness,
    # so spot check a known collapse against the base by multiply-out
    G = presets.build("glhj")
    S = saturate(G, skip=presets._gl_runaway)
    collapse = next(r for r in S.rules if r.ref == "derived:h.g.b.b")
    assert collapse.rhs.is_zero()
    # h*g*b*b arises from overlapping base rules, so both reduction paths
    # of the ambiguity that produced it agree once the rule is present
    assert S.nf_word(collapse.lhs).is_zero()


def test_localize_h_plane():
    L = localize(presets.build("h_plane"), "x", "xinv")
    one = NCPolynomial.unit()
    assert L.nf_word(("x", "xinv")) == one
    assert L.nf_word(("xinv", "x")) == one
    assert fa_str(L.nf_word(("xinv", "th")), L.order.key) == "th*xinv - h"


def test_localize_conjugation_consistency():
    L = localize(presets.build("h_plane"), "x", "xinv")
    th = NCPolynomial.gen("th")
    x = NCPolynomial.gen("x")
    xinv = NCPolynomial.gen("xinv")
    # x * (xinv th x) * xinv recovers th
    assert L.normal_form(x * (xinv * th * x) * xinv) == L.normal_form(th)


def test_localize_missing_passage_rule():
    order = TermOrder({"a": 1, "b": 1}, ["a", "b"])
    gens = [GeneratorInfo("a", 0, 1), GeneratorInfo("b", 0, 1)]
    P = Presentation("toy", gens, [], order)
    with pytest.raises(LocalizeError):
        localize(P, "a", "ainv")


def test_json_round_trip_all_presets():
    for name in presets.PRESETS:
        P = presets.build(name)
        R = Presentation.from_json(json.loads(P.dumps()))
        assert P.same_rules(R), name
        assert R.name == P.name


def test_specialize_binds_q():
    P = presets.build("qjh_calculus")
    P1 = P.specialize(1)
    assert P1.q == 1
    assert P1.same_rules(presets.build("hj_calculus"))

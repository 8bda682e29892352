from fractions import Fraction

import pytest

from truncvote import (
    DomainError,
    Profile,
    RuleParseError,
    TieBreak,
    TopKProfile,
    apply_rule,
    approval_vector,
    borda_vector,
    completion_score,
    copeland_scores,
    dominance_tally,
    harmonic_vector,
    majority_graph,
    maximin_scores,
    pairwise_tally,
    parse_rule,
    psr_scores,
    ranked_pairs_winner,
    scoring_vector,
    stv_winner,
    topk_psr_scores,
    truncate,
    winner_from_scores,
)

F = Fraction


def test_scoring_vectors():
    assert borda_vector(4) == (F(3), F(2), F(1), F(0))
    assert harmonic_vector(4) == (F(1), F(1, 2), F(1, 3), F(1, 4))
    assert approval_vector(4, 2) == (F(1), F(1), F(0), F(0))
    with pytest.raises(DomainError):
        approval_vector(4, 5)
    with pytest.raises(DomainError):
        borda_vector(1)


def test_completion_score():
    s = borda_vector(4)
    assert completion_score(s, 2, "zero") == 0
    assert completion_score(s, 2, "avg") == F(1, 2)
    assert completion_score(harmonic_vector(4), 1, "avg") == F(13, 36)
    with pytest.raises(DomainError):
        completion_score(s, 2, "median")
    with pytest.raises(DomainError):
        completion_score(s, 4, "zero")


def test_borda_scores_on_fixture(example1):
    assert psr_scores(example1, borda_vector(4)) == [F(77), F(45), F(119), F(131)]
    assert winner_from_scores(psr_scores(example1, borda_vector(4)), TieBreak.by_index(4)) == 3


def test_psr_scores_validation(example1):
    with pytest.raises(DomainError):
        psr_scores(example1, (F(3), F(2), F(1)))
    with pytest.raises(DomainError):
        psr_scores(example1, (F(1), F(2), F(3), F(4)))


def test_top1_borda_average_scores(example1):
    # head (3,), every unranked candidate gets the tail average 1
    t = truncate(example1, 1)
    scores = topk_psr_scores(t, (F(3),), F(1))
    assert scores == [F(102), F(82), F(92), F(96)]
    assert apply_rule(parse_rule("borda@k=1:avg"), example1) == 0


def test_topk_psr_short_ballots_get_s_star_for_unranked():
    t = TopKProfile.from_ballots(3, 2, [((0,), 1), ((1, 2), 1)])
    scores = topk_psr_scores(t, (F(2), F(1)), F(1, 2))
    assert scores == [F(2) + F(1, 2), F(1, 2) + F(2), F(1, 2) + F(1)]


def test_topk_psr_head_validation(example1):
    t = truncate(example1, 2)
    with pytest.raises(DomainError):
        topk_psr_scores(t, (F(3),), F(0))
    with pytest.raises(DomainError):
        topk_psr_scores(t, (F(1), F(2)), F(0))
    with pytest.raises(DomainError):
        topk_psr_scores(t, (F(1), F(1)), F(1))


def test_copeland_and_maximin_on_fixture(example1):
    tally = pairwise_tally(example1)
    assert copeland_scores(majority_graph(tally, "complete")) == [F(1), F(0), F(2), F(3)]
    assert maximin_scores(tally) == [F(20), F(10), F(25), F(37)]


def test_copeland_half_point_for_ties():
    p = Profile.from_ballots(2, [((0, 1), 1), ((1, 0), 1)])
    scores = copeland_scores(majority_graph(pairwise_tally(p), "complete"))
    assert scores == [F(1, 2), F(1, 2)]


def test_ranked_pairs_on_fixture(example1):
    assert ranked_pairs_winner(pairwise_tally(example1), TieBreak.by_index(4)) == 3


def test_ranked_pairs_skips_cycles():
    # 3-cycle a>b>c>a with margins 5, 4, 3: lock a>b and b>c, skip c>a
    p = Profile.from_ballots(
        3, [((0, 1, 2), 4), ((1, 2, 0), 3), ((2, 0, 1), 2)]
    )
    assert ranked_pairs_winner(pairwise_tally(p), TieBreak.by_index(3)) == 0


def test_stv_on_fixture(example1):
    # b out first (10), transfers to c; a out next (20 vs 25/17+20); c beats d
    assert apply_rule(parse_rule("stv"), example1) == 2


def test_stv_exhaustion():
    # both ballots ranking 0 exhaust once 0 is eliminated
    t = TopKProfile.from_ballots(3, 1, [((0,), 2), ((1,), 3), ((2,), 4)])
    assert stv_winner(t, TieBreak.by_index(3)) == 2


def test_winner_tie_breaking():
    scores = [F(5), F(5), F(2)]
    assert winner_from_scores(scores, TieBreak.by_index(3)) == 0
    assert winner_from_scores(scores, TieBreak((1, 0, 2))) == 1


def test_parse_rule_round_trips():
    for text in (
        "borda",
        "borda@k=2:avg",
        "harmonic:zero",
        "approval3",
        "copeland@k=2",
        "maximin",
        "rp@k=3",
        "stv@k=2",
    ):
        rule = parse_rule(text)
        assert parse_rule(str(rule)) == rule


def test_parse_rule_plurality_alias():
    assert parse_rule("plurality") == parse_rule("approval1")


def test_parse_rule_errors():
    for bad in ("bogus", "approval", "borda3", "copeland:avg", "rp2", "borda:median", ""):
        with pytest.raises(RuleParseError):
            parse_rule(bad)


def test_scoring_vector_dispatch():
    assert scoring_vector(parse_rule("borda"), 3) == borda_vector(3)
    assert scoring_vector(parse_rule("approval2"), 4) == approval_vector(4, 2)
    with pytest.raises(DomainError):
        scoring_vector(parse_rule("copeland"), 3)


def test_apply_rule_profile_kind_checks(example1):
    t = truncate(example1, 2)
    with pytest.raises(DomainError):
        apply_rule(parse_rule("borda"), t)  # complete rule, truncated profile
    with pytest.raises(DomainError):
        apply_rule(parse_rule("borda@k=3"), t)  # k mismatch
    with pytest.raises(DomainError):
        apply_rule(parse_rule("borda@k=4"), example1)  # k > m-1
    with pytest.raises(DomainError):
        apply_rule(parse_rule("borda"), example1, TieBreak.by_index(3))


def test_topk_rule_accepts_profile_or_truncation(example1):
    rule = parse_rule("copeland@k=2")
    assert apply_rule(rule, example1) == apply_rule(rule, truncate(example1, 2))


def test_fixture_winners_per_rule(example1):
    winners = {
        "borda": 3,
        "harmonic": 3,
        "plurality": 0,
        "copeland": 3,
        "maximin": 3,
        "rp": 3,
        "stv": 2,
    }
    for text, expected in winners.items():
        assert apply_rule(parse_rule(text), example1) == expected, text

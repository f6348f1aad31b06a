import itertools

import pytest

from conftest import all_itemsets, random_db
from robustmine import (
    PredicateKind,
    TransactionDatabase,
    complete_closed_family,
    evaluate_predicate,
    exhaustive_robustness,
    robustness,
    robustness_closed_exact,
    robustness_free,
    robustness_non_derivable,
    robustness_totally_shattered,
    survival_probability,
)

TOY_CLOSED = [((0,), 3), ((4,), 5), ((1, 3, 4), 4), ((0, 1, 2, 3, 4), 2)]


def test_survival_probability_values():
    assert survival_probability([1, 1, 2, 2], 1 / 3) == pytest.approx(25 / 729, abs=1e-15)
    assert survival_probability([], 0.3) == 1.0
    # an already-empty cell can never be refilled, not even at alpha = 1
    assert survival_probability([0], 1.0) == 0.0
    assert survival_probability([3, 0, 2], 0.7) == 0.0
    assert survival_probability([5], 1.0) == 1.0
    assert survival_probability([5], 0.0) == 0.0
    with pytest.raises(ValueError):
        survival_probability([2], 1.2)
    with pytest.raises(ValueError):
        survival_probability([-1], 0.5)


def test_free_robustness_toy(toy):
    assert robustness_free(toy, (0, 4), 0.5) == pytest.approx(0.4375, abs=1e-15)
    assert robustness_free(toy, (0, 1), 0.5) == pytest.approx(0.375, abs=1e-15)
    assert robustness_free(toy, (), 0.5) == 1.0
    assert robustness_free(toy, (2,), 0.5) == pytest.approx(0.9375, abs=1e-15)
    assert robustness_free(toy, (0, 2), 0.9) == 0.0


def test_ts_robustness_toy(toy):
    assert robustness_totally_shattered(toy, (0, 1), 1 / 3) == pytest.approx(25 / 729, abs=1e-15)
    assert robustness_totally_shattered(toy, (), 0.5) == pytest.approx(0.984375, abs=1e-15)
    assert robustness_totally_shattered(toy, (0, 2), 1.0) == 0.0


def test_nd_robustness_toy(toy):
    assert robustness_non_derivable(toy, (0, 2), 0.5) == pytest.approx(0.65625, abs=1e-15)
    assert robustness_non_derivable(toy, (), 0.37) == 1.0
    # derivable at alpha = 1 means robustness 0 there
    assert robustness_non_derivable(toy, (0, 1, 2), 1.0) == 0.0


def test_closed_robustness_toy(toy):
    for alpha in (0.1, 0.5, 0.9):
        beta = 1 - alpha
        assert robustness_closed_exact(toy, (1, 3, 4), alpha, TOY_CLOSED) == pytest.approx(
            1 - beta ** 2, abs=1e-12)
    assert robustness_closed_exact(toy, (0, 1, 2, 3, 4), 0.42, TOY_CLOSED) == 1.0
    assert robustness_closed_exact(toy, (4,), 0.5, TOY_CLOSED) == pytest.approx(0.5, abs=1e-12)
    assert robustness_closed_exact(toy, (1, 3, 4), 0.0, TOY_CLOSED) == 0.0


def test_closed_robustness_for_non_closed_itemsets(toy):
    # the inclusion-exclusion grouping stays valid for arbitrary query itemsets
    for items in [(1, 3), (0, 2), (2,), (0, 1), ()]:
        for alpha in (0.3, 0.7):
            direct = robustness_closed_exact(toy, items, alpha, TOY_CLOSED)
            brute = exhaustive_robustness(toy, items, PredicateKind.CLOSED, alpha)
            assert direct == pytest.approx(brute, abs=1e-12), (items, alpha)


def test_empty_itemset_closed_with_full_column():
    db = TransactionDatabase([[0], [0, 1]])
    fam = complete_closed_family(db)
    # a full column keeps the empty itemset non-closed in every subsample
    assert robustness_closed_exact(db, (), 0.6, fam) == 0.0


def test_dispatcher(toy):
    for items in [(0,), (0, 1)]:
        for alpha in (0.2, 0.8):
            assert robustness(toy, items, PredicateKind.FREE, alpha) == robustness_free(toy, items, alpha)
            assert robustness(toy, items, PredicateKind.NON_DERIVABLE, alpha) == robustness_non_derivable(toy, items, alpha)
            assert robustness(toy, items, PredicateKind.TOTALLY_SHATTERED, alpha) == robustness_totally_shattered(toy, items, alpha)
            assert robustness(toy, items, PredicateKind.CLOSED, alpha, closed_family=TOY_CLOSED) == \
                robustness_closed_exact(toy, items, alpha, TOY_CLOSED)
    with pytest.raises(ValueError):
        robustness(toy, (0,), PredicateKind.CLOSED, 0.5)


def test_alpha_range_is_validated(toy):
    for bad in (-0.1, 1.0001):
        with pytest.raises(ValueError):
            robustness_free(toy, (0,), bad)
        with pytest.raises(ValueError):
            robustness_non_derivable(toy, (0,), bad)


def test_extremes_match_predicate(toy):
    fam = TOY_CLOSED
    for items in all_itemsets(5, 3):
        for kind in PredicateKind:
            r1 = robustness(toy, items, kind, 1.0, closed_family=fam)
            assert r1 == float(evaluate_predicate(toy, items, kind)), (items, kind)
            r0 = robustness(toy, items, kind, 0.0, closed_family=fam)
            empty = toy.subset([])
            assert r0 == float(evaluate_predicate(empty, items, kind)), (items, kind)


def test_monotone_in_alpha(toy):
    grid = [i / 10 for i in range(11)]
    fam = TOY_CLOSED
    for items in all_itemsets(5, 3):
        for kind in PredicateKind:
            vals = [robustness(toy, items, kind, a, closed_family=fam) for a in grid]
            assert all(0.0 <= v <= 1.0 for v in vals)
            for lo, hi in zip(vals, vals[1:]):
                assert hi >= lo - 1e-12, (items, kind, vals)


def test_matches_exhaustive_on_random_data():
    # a light version of the main oracle comparison, for fast feedback
    for seed in (11, 12, 13):
        db = random_db(seed, 7, 4, 0.5)
        fam = complete_closed_family(db)
        for items in all_itemsets(4, 3):
            for kind in PredicateKind:
                for alpha in (0.25, 0.75):
                    analytic = robustness(db, items, kind, alpha, closed_family=fam)
                    brute = exhaustive_robustness(db, items, kind, alpha)
                    assert analytic == pytest.approx(brute, abs=1e-9), (seed, items, kind, alpha)

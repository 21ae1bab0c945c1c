from fractions import Fraction

import pytest

from orecert.folner import (
    check_delta,
    check_epsilon,
    folner_ratios,
    greedy_folner_search,
)
from orecert.groups import MbBackend, PosMonoidBackend, ZmBackend

ZM = ZmBackend(2)
PM = PosMonoidBackend()


def box(n):
    return [(i, j) for i in range(n) for j in range(n)]


def test_box_ratios():
    report = folner_ratios(ZM, box(10), ZM.generators())
    a_stats = report.per_generator[0]
    assert a_stats.intersection == 90
    assert a_stats.intersection_ratio == Fraction(9, 10)
    assert a_stats.symdiff == 20
    assert a_stats.symdiff_ratio == Fraction(1, 5)


def test_singleton():
    report = folner_ratios(ZM, [(0, 0)], ZM.generators())
    for s in report.per_generator:
        assert s.intersection == 0
        assert s.symdiff == 2


def test_identity_generator():
    report = folner_ratios(ZM, box(4), [("e", ZM.identity)])
    assert report.per_generator[0].intersection_ratio == 1
    assert report.per_generator[0].symdiff == 0


def test_posmon_example():
    E = [PM.from_text(t) for t in ("", "x0", "x1")]
    report = folner_ratios(PM, E, [("x0", PM.from_text("x0"))])
    s = report.per_generator[0]
    assert s.intersection == 1
    assert s.intersection_ratio == Fraction(1, 3)
    assert s.symdiff == 4
    assert s.symdiff_ratio == Fraction(4, 3)


def test_translation_preserves_size():
    mb = MbBackend(2)
    E = [mb.from_text(t) for t in ("", "a", "b", "a b", "b a")]
    report = folner_ratios(mb, E, mb.generators())
    assert report.size == 5  # distinct, and aE checked internally


def test_empty_set_rejected():
    with pytest.raises(ValueError):
        folner_ratios(ZM, [], ZM.generators())


def test_box_closed_form():
    for n in range(1, 51):
        report = folner_ratios(ZM, box(n), ZM.generators())
        for s in report.per_generator:
            assert s.symdiff_ratio == Fraction(2, n)


def test_checks_are_strict():
    report = folner_ratios(ZM, box(10), ZM.generators())
    assert check_delta(report, Fraction(1, 2))
    assert not check_delta(report, Fraction(9, 10))
    assert not check_epsilon(report, Fraction(1, 10))
    assert not check_epsilon(report, Fraction(1, 5))
    assert check_epsilon(report, Fraction(1, 5) + Fraction(1, 1000))


def test_greedy_succeeds_on_zm():
    E, report, success = greedy_folner_search(ZM, ZM.generators(), Fraction(1, 2), 200)
    assert success
    recheck = folner_ratios(ZM, E, ZM.generators())
    assert check_epsilon(recheck, Fraction(1, 2))


def test_greedy_loose_epsilon_immediate():
    # Ratios never exceed 2, so any strict bound above 2 accepts {1} at once.
    E, report, success = greedy_folner_search(ZM, ZM.generators(), Fraction(21, 10), 5)
    assert success
    assert len(E) == 1


def test_greedy_epsilon_two_needs_growth():
    # A singleton has symdiff ratio exactly 2, which the strict check rejects.
    E, report, success = greedy_folner_search(ZM, ZM.generators(), Fraction(2), 5)
    assert success
    assert len(E) > 1


def test_greedy_posmon_small_budget_fails_gracefully():
    gens = PM.generators(1)
    E, report, success = greedy_folner_search(PM, gens, Fraction(1, 10), 12)
    assert not success
    assert 1 <= len(E) <= 12
    assert report.max_symdiff_ratio >= Fraction(1, 10)

"""Exact translation-invariance ratios for finite sets, and a greedy grower.

For a finite set E and generator a the report carries |aE & E| and
|aE ^ E| together with the exact ratios over |E|.  Left translation is
injective on cancellative backends, so |aE| = |E| is asserted and
|aE ^ E| = 2(|E| - |aE & E|).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import VerificationError
from .groups.base import Backend


@dataclass(frozen=True)
class GeneratorStats:
    label: str
    intersection: int
    symdiff: int
    intersection_ratio: Fraction
    symdiff_ratio: Fraction


@dataclass(frozen=True)
class FolnerReport:
    size: int
    per_generator: tuple[GeneratorStats, ...]
    min_intersection_ratio: Fraction
    max_symdiff_ratio: Fraction


def folner_ratios(backend: Backend, E, generators) -> FolnerReport:
    """Exact counts for every generator; ``generators`` is a list of
    (label, element) pairs and E a nonempty iterable of elements."""
    keys = {backend.canonical_key(e) for e in E}
    elements = {backend.canonical_key(e): e for e in E}
    if not keys:
        raise ValueError("E must be nonempty")
    size = len(keys)
    stats = []
    for label, gen in generators:
        shifted = {
            backend.canonical_key(backend.multiply(gen, e))
            for e in elements.values()
        }
        if len(shifted) != size:
            raise VerificationError(f"left translation by {label} not injective")
        inter = len(shifted & keys)
        sym = 2 * (size - inter)
        stats.append(
            GeneratorStats(
                label, inter, sym, Fraction(inter, size), Fraction(sym, size)
            )
        )
    return FolnerReport(
        size,
        tuple(stats),
        min(s.intersection_ratio for s in stats),
        max(s.symdiff_ratio for s in stats),
    )


def check_delta(report: FolnerReport, delta) -> bool:
    """Strict intersection criterion: |aE & E| > delta |E| for every a."""
    return report.min_intersection_ratio > Fraction(delta)


def check_epsilon(report: FolnerReport, epsilon) -> bool:
    """Strict near-invariance criterion: |aE ^ E| < epsilon |E| for every a."""
    return report.max_symdiff_ratio < Fraction(epsilon)


def greedy_folner_search(backend: Backend, generators, epsilon, budget: int):
    """Grow E from {1}, each step adding the left-translate frontier element
    that minimises the worst symmetric-difference ratio (ties to the smaller
    canonical key).  Returns (E, report, success); on failure the best set
    seen is returned with its report.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    epsilon = Fraction(epsilon)
    current = {backend.canonical_key(backend.identity): backend.identity}
    best = dict(current)
    best_report = folner_ratios(backend, current.values(), generators)
    while True:
        report = folner_ratios(backend, current.values(), generators)
        if report.max_symdiff_ratio < best_report.max_symdiff_ratio:
            best = dict(current)
            best_report = report
        if report.max_symdiff_ratio < epsilon:
            return _sorted_set(backend, current), report, True
        if len(current) >= budget:
            return _sorted_set(backend, best), best_report, False
        frontier: dict = {}
        for _, gen in generators:
            for e in current.values():
                y = backend.multiply(gen, e)
                k = backend.canonical_key(y)
                if k not in current:
                    frontier[k] = y
        if not frontier:
            return _sorted_set(backend, best), best_report, False
        scored = []
        for k in sorted(frontier):
            trial = dict(current)
            trial[k] = frontier[k]
            trial_report = folner_ratios(backend, trial.values(), generators)
            scored.append((trial_report.max_symdiff_ratio, k))
        _, pick = min(scored)
        current[pick] = frontier[pick]


def _sorted_set(backend, keyed: dict) -> list:
    return [keyed[k] for k in sorted(keyed)]

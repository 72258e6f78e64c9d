"""Pareto fronts of (load, weak load) pairs and their linear-time merge.

A front is a list of entries sorted by strictly increasing load; after
dominated entries are removed the weak loads are strictly decreasing.
Weak loads may be ``-inf`` (the subtree is contracted into its root).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple, Sequence

from ..graph import Distance

INF = math.inf


@dataclass(frozen=True)
class ParetoEntry:
    """A non-dominated ``(load, wload)`` pair with a backpointer for reconstruction."""

    load: Distance
    wload: Distance
    back: Any = field(default=None, compare=False, repr=False)


class MergeResult(NamedTuple):
    wload: Distance
    load: Distance
    left: int = -1
    right: int = -1


NO_MERGE = MergeResult(INF, INF)


def pareto_filter(entries: Iterable[ParetoEntry]) -> list[ParetoEntry]:
    """Drop dominated entries; among identical points the first one offered survives."""
    indexed = sorted(enumerate(entries), key=lambda p: (p[1].load, p[1].wload, p[0]))
    front: list[ParetoEntry] = []
    for _, entry in indexed:
        if not front or entry.wload < front[-1].wload:
            front.append(entry)
    return front


def pareto_merge(
    left: Sequence[ParetoEntry],
    right: Sequence[ParetoEntry],
    beta: object,
    lambda_cap: Distance | None = None,
) -> MergeResult:
    """Best combination of one entry from each front under the cross constraints.

    A pair ``(a, b)`` is admissible when ``a.load + b.wload <= beta`` and
    ``a.wload + b.load <= beta``; it combines to
    ``(max(a.load, b.load), max(a.wload, b.wload))``.

    With a cap, only entries of load at most ``lambda_cap`` are used and the
    result minimises the weak load first, then the load.  Without a cap it
    minimises the load first, then the weak load.  Returns ``(inf, inf)``
    when no admissible pair exists.  Runs in linear time.
    """
    if lambda_cap is not None:
        return _merge_capped(left, right, beta, lambda_cap)
    return _merge_uncapped(left, right, beta)


def _merge_capped(left, right, beta, cap) -> MergeResult:
    j = sum(1 for e in left if e.load <= cap) - 1
    k = sum(1 for e in right if e.load <= cap) - 1
    while j >= 0 and k >= 0:
        a, b = left[j], right[k]
        if a.load + b.wload > beta:
            j -= 1
        elif a.wload + b.load > beta:
            k -= 1
        else:
            break
    else:
        return NO_MERGE
    # (j, k) attains the least weak load; now lower the other index as long
    # as the weak load does not rise and the pair stays admissible.
    if left[j].wload >= right[k].wload:
        while k > 0 and right[k - 1].wload <= left[j].wload and left[j].load + right[k - 1].wload <= beta:
            k -= 1
    else:
        while j > 0 and left[j - 1].wload <= right[k].wload and left[j - 1].wload + right[k].load <= beta:
            j -= 1
    a, b = left[j], right[k]
    return MergeResult(max(a.wload, b.wload), max(a.load, b.load), j, k)


def _merge_uncapped(left, right, beta) -> MergeResult:
    j = k = 0
    while j < len(left) and k < len(right):
        a, b = left[j], right[k]
        if a.wload + b.load > beta:
            j += 1
        elif a.load + b.wload > beta:
            k += 1
        else:
            break
    else:
        return NO_MERGE
    if left[j].load >= right[k].load:
        while (
            k + 1 < len(right)
            and right[k + 1].load <= left[j].load
            and left[j].wload + right[k + 1].load <= beta
        ):
            k += 1
    else:
        while (
            j + 1 < len(left)
            and left[j + 1].load <= right[k].load
            and left[j + 1].load + right[k].wload <= beta
        ):
            j += 1
    a, b = left[j], right[k]
    return MergeResult(max(a.wload, b.wload), max(a.load, b.load), j, k)


def naive_merge(
    left: Sequence[ParetoEntry],
    right: Sequence[ParetoEntry],
    beta: object,
    lambda_cap: Distance | None = None,
) -> MergeResult:
    """Quadratic reference for :func:`pareto_merge` that tries every pair."""
    best = None
    for j, a in enumerate(left):
        for k, b in enumerate(right):
            if lambda_cap is not None and (a.load > lambda_cap or b.load > lambda_cap):
                continue
            if a.load + b.wload > beta or a.wload + b.load > beta:
                continue
            w, lo = max(a.wload, b.wload), max(a.load, b.load)
            key = (w, lo) if lambda_cap is not None else (lo, w)
            if best is None or key < best[0]:
                best = (key, MergeResult(w, lo, j, k))
    return NO_MERGE if best is None else best[1]

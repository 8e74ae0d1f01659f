"""Brute-force ground truth by axis enumeration.

The oracle enumerates all axes (halved by reversal symmetry: only the
lexicographically smaller of each axis/reverse pair is kept) and checks the
requested notion directly on each.  The per-axis predicates are deliberately
primitive and independent of the recognition algorithms:

* possibly single-peaked: no u-/v-valley substructures,
* single-plateaued / Black: the raw shape test on the rank sequence
  (strictly falling buckets, optionally flat at the minimum, strictly rising),
* necessarily single-peaked: every linear extension of every vote is
  single-peaked, by full extension enumeration.

Also hosts the majority-relation utilities used to reproduce the
intransitive-majority counterexample.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .errors import ClassError, SizeError
from .model import Axis, Notion, OrderClass, Refusal, Verdict

DEFAULT_BOUND = 8


@functools.lru_cache(maxsize=8)
def _axes_and_positions(m):
    """All axes (lex order, reversal-deduplicated) and their position arrays."""
    kept = [p for p in itertools.permutations(range(m)) if p[::-1] >= p]
    axes = np.array(kept, dtype=np.int64)
    pos = np.empty_like(axes)
    rows = np.arange(len(kept))[:, None]
    pos[rows, axes] = np.arange(m)[None, :]
    return axes, pos


def _rows_have_valley(seqs):
    if seqs.shape[1] < 3:
        return np.zeros(len(seqs), dtype=bool)
    d = np.diff(seqs, axis=1)
    rose = np.maximum.accumulate(d > 0, axis=1)
    return np.any(rose[:, :-1] & (d[:, 1:] < 0), axis=1)


def _dominator_positions(vote, pos):
    """Per axis and candidate: extreme positions of the vote's dominators."""
    n_axes, m = pos.shape
    lo = np.full((n_axes, m), m + 1, dtype=np.int64)
    hi = np.full((n_axes, m), -1, dtype=np.int64)
    for c in range(m):
        dom = sorted(vote.upper_set(c))
        if dom:
            sub = pos[:, dom]
            lo[:, c] = sub.min(axis=1)
            hi[:, c] = sub.max(axis=1)
    return lo, hi


def _psp_ok_per_axis(profile, axes, pos):
    ok = np.ones(len(axes), dtype=bool)
    for vote in profile.votes:
        if vote.has_ranks():
            seqs = np.asarray(vote.ranks)[axes]
            ok &= ~_rows_have_valley(seqs)
        else:
            lo, hi = _dominator_positions(vote, pos)
            v_valley = np.any((lo < pos) & (pos < hi), axis=1)
            inner_lo = np.minimum(pos[:, :, None], pos[:, None, :])
            inner_hi = np.maximum(pos[:, :, None], pos[:, None, :])
            u = (lo[:, :, None] < inner_lo) & (hi[:, None, :] > inner_hi)
            u &= ~np.eye(profile.m, dtype=bool)[None, :, :]
            ok &= ~(v_valley | np.any(u, axis=(1, 2)))
        if not ok.any():
            break
    return ok


def _plateaued_ok_rows(seqs):
    """Raw shape: diffs read (falling)* (flat)* (rising)*."""
    if seqs.shape[1] < 2:
        return np.ones(len(seqs), dtype=bool)
    d = np.diff(seqs, axis=1)
    seen_flat_or_rise = np.maximum.accumulate(d >= 0, axis=1)
    seen_rise = np.maximum.accumulate(d > 0, axis=1)
    bad = np.any(seen_flat_or_rise[:, :-1] & (d[:, 1:] < 0), axis=1)
    bad |= np.any(seen_rise[:, :-1] & (d[:, 1:] == 0), axis=1)
    return ~bad


def _black_ok_rows(seqs):
    """Raw shape: diffs read (falling)* (rising)* with no flat step."""
    if seqs.shape[1] < 2:
        return np.ones(len(seqs), dtype=bool)
    d = np.diff(seqs, axis=1)
    bad = np.any(d == 0, axis=1)
    seen_rise = np.maximum.accumulate(d > 0, axis=1)
    bad |= np.any(seen_rise[:, :-1] & (d[:, 1:] < 0), axis=1)
    return ~bad


def _shape_ok_per_axis(profile, axes, row_check):
    if profile.order_class() > OrderClass.WEAK:
        raise ClassError("plateau-based notions are defined for weak orders only")
    ok = np.ones(len(axes), dtype=bool)
    for vote in profile.votes:
        ok &= row_check(np.asarray(vote.ranks)[axes])
        if not ok.any():
            break
    return ok


def _vote_necessarily_sp(vote, axis_order):
    positions = {c: i for i, c in enumerate(axis_order)}
    for ext in vote.extensions():
        seq = [0] * len(ext)
        for r, c in enumerate(ext):
            seq[positions[c]] = r
        rose = False
        prev = seq[0]
        ok = True
        for x in seq[1:]:
            if x > prev:
                rose = True
            elif x < prev and rose:
                ok = False
                break
            prev = x
        if not ok:
            return False
    return True


def _necessary_ok_per_axis(profile, axes):
    if profile.order_class() > OrderClass.WEAK:
        raise ClassError("necessarily single-peaked is defined for weak orders only")
    ok = np.ones(len(axes), dtype=bool)
    for vote in profile.votes:
        for i in range(len(axes)):
            if ok[i] and not _vote_necessarily_sp(vote, axes[i]):
                ok[i] = False
    return ok


def oracle_recognize(profile, notion=Notion.PSP, bound=DEFAULT_BOUND):
    """Exhaustive recognition; returns the lexicographically least witness.

    The least witness is taken after reversal-symmetry reduction (for each
    axis/reverse pair only the lexicographically smaller one is enumerated).
    """
    notion = Notion(notion)
    if profile.m > bound:
        raise SizeError(f"m={profile.m} exceeds the oracle bound {bound}")
    axes, pos = _axes_and_positions(profile.m)
    if notion == Notion.PSP:
        ok = _psp_ok_per_axis(profile, axes, pos)
    elif notion == Notion.PLATEAUED:
        ok = _shape_ok_per_axis(profile, axes, _plateaued_ok_rows)
    elif notion == Notion.BLACK:
        ok = _shape_ok_per_axis(profile, axes, _black_ok_rows)
    else:
        ok = _necessary_ok_per_axis(profile, axes)
    hits = np.flatnonzero(ok)
    if len(hits) == 0:
        return Verdict.no(
            Refusal("every axis contains a forbidden substructure"),
            notion=notion,
            algorithm="oracle",
        )
    return Verdict.yes(
        Axis(tuple(int(c) for c in axes[hits[0]])), notion=notion, algorithm="oracle"
    )


def extension_enumerate(vote, bound=DEFAULT_BOUND):
    """All linear extensions of a vote, streamed as best-to-worst tuples."""
    if vote.m > bound:
        raise SizeError(f"m={vote.m} exceeds the extension bound {bound}")
    return vote.extensions()


def majority_relation(profile):
    """Strict pairwise majority relation as a set of (winner, loser) pairs."""
    if profile.order_class() > OrderClass.WEAK:
        raise ClassError("the majority relation is computed for weak orders only")
    m = profile.m
    wins = [[0] * m for _ in range(m)]
    for vote, mult in zip(profile.votes, profile.multiplicities):
        ranks = vote.ranks
        for a in range(m):
            for b in range(m):
                if ranks[a] < ranks[b]:
                    wins[a][b] += mult
    return {
        (a, b)
        for a in range(m)
        for b in range(m)
        if a != b and wins[a][b] > wins[b][a]
    }


def weak_condorcet_winners(profile):
    """Candidates not beaten by any other under strict pairwise majority."""
    beaten = {b for (_, b) in majority_relation(profile)}
    return frozenset(range(profile.m)) - beaten

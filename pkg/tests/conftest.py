"""Shared test helpers: small generators and a slow reference for guided."""

from __future__ import annotations

from peakcheck.model import Axis, PreferenceOrder, Profile


def random_weak(m, rng):
    levels = rng.randint(1, m)
    return PreferenceOrder.from_ranks([rng.randrange(levels) for _ in range(m)])


def random_top(m, rng, max_ranked=None):
    hi = m if max_ranked is None else min(m, max_ranked)
    return PreferenceOrder.top_order(rng.sample(range(m), rng.randint(0, hi)), m)


def random_total(m, rng):
    seq = list(range(m))
    rng.shuffle(seq)
    return PreferenceOrder.from_total(seq)


def random_local_weak(m, rng):
    sub = rng.sample(range(m), rng.randint(0, m))
    levels = rng.randint(1, max(1, len(sub)))
    level = {c: rng.randrange(levels) for c in sub}
    pairs = [(x, y) for x in sub for y in sub if level[x] < level[y]]
    return PreferenceOrder.from_pairs(pairs, m)


def random_partial(m, rng, density=0.4):
    seq = list(range(m))
    rng.shuffle(seq)
    pairs = [
        (seq[i], seq[j])
        for i in range(m)
        for j in range(i + 1, m)
        if rng.random() < density
    ]
    return PreferenceOrder.from_pairs(pairs, m)


def random_weak_profile(m, n, rng):
    return Profile(m, tuple(random_weak(m, rng) for _ in range(n)))


def random_top_profile(m, n, rng, max_ranked=None):
    return Profile(m, tuple(random_top(m, rng, max_ranked) for _ in range(n)))


class ReferenceGuided:
    """Direct condition-by-condition transcription of the guided placement.

    Deliberately unoptimised and structured around explicit extremum
    recomputation; used to cross-check the vectorised implementation and to
    host the placement-invariant assertion (a not-yet-placed candidate may
    never be strictly below the tops of both axis halves in any vote).
    """

    def __init__(self, profile, guiding):
        self.votes = list(profile.votes)
        if guiding not in self.votes:
            self.votes.append(guiding)
        self.guiding = guiding
        self.m = profile.m

    @staticmethod
    def _min(vote, group):
        worst = max(vote.ranks[c] for c in group)
        return next(c for c in group if vote.ranks[c] == worst)

    @staticmethod
    def _max(vote, group):
        best = min(vote.ranks[c] for c in group)
        return next(c for c in group if vote.ranks[c] == best)

    def run(self):
        seq = sorted(range(self.m), key=lambda c: self.guiding.ranks[c], reverse=True)
        left, right = [], [seq[0]]
        for i in range(1, self.m):
            ci = seq[i]
            future = seq[i + 1 :]
            ok_right = ok_left = True
            for vote in self.votes:
                if future:
                    fut_min = self._min(vote, future)
                    fut_max = self._max(vote, future)
                    ci_over_min = vote.prefers(ci, fut_min)
                    max_over_ci = vote.prefers(fut_max, ci)
                else:
                    ci_over_min = max_over_ci = False
                max_l_over_min = bool(
                    left and future and vote.prefers(self._max(vote, left), fut_min)
                )
                max_r_over_min = bool(
                    future and vote.prefers(self._max(vote, right), fut_min)
                )
                max_l_over_ci = bool(left and vote.prefers(self._max(vote, left), ci))
                max_r_over_ci = vote.prefers(self._max(vote, right), ci)
                if (ci_over_min and max_l_over_min) or (max_over_ci and max_r_over_ci):
                    ok_right = False
                if (ci_over_min and max_r_over_min) or (max_over_ci and max_l_over_ci):
                    ok_left = False
            self._assert_not_buried(seq[i:], left, right)
            if ok_right:
                right.append(ci)
            elif ok_left:
                left.append(ci)
            else:
                return None
        return Axis(tuple(left + right[::-1]))

    def _assert_not_buried(self, unplaced, left, right):
        # no unplaced candidate may sit strictly below the tops of both halves
        for vote in self.votes:
            for cj in unplaced:
                below_left = bool(left) and vote.prefers(self._max(vote, left), cj)
                below_right = vote.prefers(self._max(vote, right), cj)
                assert not (below_left and below_right), (
                    "placement invariant violated: candidate strictly below "
                    "both axis halves"
                )

"""Data model: preference orders, profiles, axes and verdicts.

Candidates are dense integer ids ``0 .. m-1``; display names are resolved at
the I/O boundary only.  A preference order is a strict partial order stored
transitively closed.  Orders whose incomparability relation is transitive
(total, top and weak orders) are stored as rank buckets, which gives O(1)
pairwise comparisons and O(1) extremum queries; genuinely partial orders are
stored as a closed set of pairs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .errors import ClassError, CycleError


class OrderClass(enum.IntEnum):
    """Order taxonomy, from most to least specific.

    ``TOTAL < TOP < WEAK < LOCAL_WEAK < PARTIAL``; every order of a class also
    satisfies the predicates of all later (more general) classes.
    """

    TOTAL = 0
    TOP = 1
    WEAK = 2
    LOCAL_WEAK = 3
    PARTIAL = 4


class Notion(str, enum.Enum):
    """Single-peakedness notions a profile can be checked for."""

    PSP = "psp"
    PLATEAUED = "plateaued"
    BLACK = "black"
    NECESSARY = "necessary"


class WitnessKind(str, enum.Enum):
    V_VALLEY = "v_valley"
    U_VALLEY = "u_valley"
    PLATEAU = "plateau"
    NONPEAK_PLATEAU = "nonpeak_plateau"


@dataclass(frozen=True)
class ValleyWitness:
    """A forbidden substructure of one vote on a checked axis.

    ``candidates`` are listed in axis order: three for a v-valley (outer two
    strictly preferred to the middle), four for a u-valley (leftmost beats one
    inner candidate, rightmost beats the other), two for a plateau (adjacent
    indifferent pair), three for a nonpeak plateau (an indifferent pair with a
    strictly better candidate on their far side).
    """

    kind: WitnessKind
    vote_index: int
    candidates: tuple[int, ...]


@dataclass(frozen=True)
class Refusal:
    """A named refusal point of a recognition algorithm (no axis exists)."""

    reason: str
    vote_index: int | None = None
    detail: str = ""


Certificate = ValleyWitness | Refusal


class PreferenceOrder:
    """One voter's (possibly incomplete) strict order over ``m`` candidates.

    Instances are immutable.  ``a`` is preferred to ``b`` iff ``prefers(a, b)``;
    incomparability and indifference are not distinguished.
    """

    __slots__ = ("m", "_ranks", "_pairs", "_class", "_hash")

    def __init__(self, m, ranks=None, pairs=None):
        self.m = m
        self._ranks = tuple(ranks) if ranks is not None else None
        self._pairs = frozenset(pairs) if pairs is not None else None
        if (self._ranks is None) == (self._pairs is None):
            raise ValueError("exactly one of ranks/pairs must be given")
        self._class = None
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_pairs(cls, pairs, m):
        """Build the transitive closure of strict comparisons ``a > b``.

        Raises :class:`CycleError` if the closure violates asymmetry.  Orders
        whose incomparability is transitive are normalised to rank buckets.
        """
        succ = [set() for _ in range(m)]
        for a, b in pairs:
            if not (0 <= a < m and 0 <= b < m):
                raise ValueError(f"candidate out of range: ({a}, {b})")
            if a == b:
                raise CycleError(f"reflexive comparison {a} > {a}")
            succ[a].add(b)
        # transitive closure by repeated BFS (desk-scale inputs)
        closed = []
        for a in range(m):
            seen = set()
            stack = list(succ[a])
            while stack:
                b = stack.pop()
                if b in seen:
                    continue
                seen.add(b)
                stack.extend(succ[b])
            if a in seen:
                raise CycleError(f"candidate {a} is preferred to itself after closure")
            closed.append(seen)
        pairset = frozenset((a, b) for a in range(m) for b in closed[a])
        order = cls(m, pairs=pairset)
        ranks = order._try_bucketise()
        if ranks is not None:
            return cls(m, ranks=ranks)
        return order

    @classmethod
    def from_ranks(cls, ranks):
        """Build a weak order from bucket indices (0 = most preferred)."""
        ranks = list(ranks)
        levels = sorted(set(ranks))
        if levels != list(range(len(levels))):
            remap = {r: i for i, r in enumerate(levels)}
            ranks = [remap[r] for r in ranks]
        return cls(len(ranks), ranks=ranks)

    @classmethod
    def from_total(cls, order):
        """Total order from a best-to-worst candidate sequence."""
        ranks = [0] * len(order)
        for pos, c in enumerate(order):
            ranks[c] = pos
        return cls(len(order), ranks=ranks)

    @classmethod
    def top_order(cls, ranked, m):
        """Top order ranking ``ranked`` best-to-worst, all others tied last."""
        k = len(ranked)
        ranks = [k] * m
        for pos, c in enumerate(ranked):
            ranks[c] = pos
        return cls.from_ranks(ranks)

    @classmethod
    def empty(cls, m):
        return cls(m, ranks=[0] * m)

    # -- basic queries ------------------------------------------------------

    @property
    def ranks(self):
        """Bucket index per candidate; only for weak-or-tighter orders."""
        if self._ranks is None:
            raise ClassError("rank buckets exist only for weak-or-tighter orders")
        return self._ranks

    def has_ranks(self):
        return self._ranks is not None

    def prefers(self, a, b):
        """True iff this vote strictly prefers ``a`` to ``b``."""
        if self._ranks is not None:
            return self._ranks[a] < self._ranks[b]
        return (a, b) in self._pairs

    def pairs(self):
        """The strict relation as a frozenset of (preferred, dominated) pairs."""
        if self._pairs is not None:
            return self._pairs
        r = self._ranks
        return frozenset(
            (a, b) for a in range(self.m) for b in range(self.m) if r[a] < r[b]
        )

    def upper_set(self, c):
        """Candidates strictly preferred to ``c``."""
        if self._ranks is not None:
            rc = self._ranks[c]
            return frozenset(a for a in range(self.m) if self._ranks[a] < rc)
        return frozenset(a for a in range(self.m) if (a, c) in self._pairs)

    def lower_set(self, c):
        """Candidates ``c`` is strictly preferred to."""
        if self._ranks is not None:
            rc = self._ranks[c]
            return frozenset(a for a in range(self.m) if self._ranks[a] > rc)
        return frozenset(b for b in range(self.m) if (c, b) in self._pairs)

    def minimal_elements(self):
        """Candidates that are not preferred to any candidate (bottom)."""
        return frozenset(c for c in range(self.m) if not self.lower_set(c))

    def maximal_elements(self):
        """Candidates no candidate is preferred to (top)."""
        return frozenset(c for c in range(self.m) if not self.upper_set(c))

    def buckets(self):
        """Indifference classes best-to-worst; only for weak-or-tighter orders."""
        out = [[] for _ in range(max(self.ranks) + 1)]
        for c, r in enumerate(self.ranks):
            out[r].append(c)
        return out

    def ranked_candidates(self):
        """Ranked candidates of a top order, best-to-worst.

        These are the candidates comparable to every other candidate.  For a
        top order they form a chain; incomparability only occurs in the bottom
        bucket.
        """
        if self.order_class() > OrderClass.TOP:
            raise ClassError("ranked_candidates requires a top order")
        bs = self.buckets()
        if len(bs[-1]) > 1:
            bs = bs[:-1]
        return [b[0] for b in bs]

    def peak(self):
        """Unique top-ranked candidate of a nonempty top order, else None."""
        ranked = self.ranked_candidates()
        return ranked[0] if ranked else None

    def is_total(self):
        return self.order_class() == OrderClass.TOTAL

    # -- classification -----------------------------------------------------

    def _try_bucketise(self):
        """Ranks array if the incomparability relation is transitive, else None."""
        m, pairs = self.m, self._pairs
        lower = [0] * m
        for a, _ in pairs:
            lower[a] += 1
        # candidates of a weak order sort by |lower set|; equal counts must be
        # genuinely indifferent with identical comparisons
        order = sorted(range(m), key=lambda c: -lower[c])
        ranks = [0] * m
        level = 0
        for i, c in enumerate(order):
            if i > 0 and lower[c] != lower[order[i - 1]]:
                level += 1
            ranks[c] = level
        for a in range(m):
            for b in range(m):
                if a != b and ((a, b) in pairs) != (ranks[a] < ranks[b]):
                    return None
        return ranks

    def order_class(self):
        """Tightest applicable class tag."""
        if self._class is None:
            self._class = self._classify()
        return self._class

    def _classify(self):
        m = self.m
        if self._ranks is not None:
            sizes = [0] * (max(self._ranks) + 1)
            for r in self._ranks:
                sizes[r] += 1
            if all(s == 1 for s in sizes):
                return OrderClass.TOTAL
            if all(s == 1 for s in sizes[:-1]):
                return OrderClass.TOP
            return OrderClass.WEAK
        # pairs representation: weak-or-tighter was ruled out on construction
        isolated = {
            c for c in range(m) if not self.upper_set(c) and not self.lower_set(c)
        }
        rest = sorted(set(range(m)) - isolated)
        if rest:
            sub, _ = self.restrict_with_map(rest)
            if sub._ranks is not None:
                return OrderClass.LOCAL_WEAK
        return OrderClass.PARTIAL

    # -- transformations -----------------------------------------------------

    def restrict_with_map(self, subset):
        """Induced order on ``subset`` plus the old-id -> new-id mapping."""
        subset = sorted(subset)
        remap = {c: i for i, c in enumerate(subset)}
        if self._ranks is not None:
            return PreferenceOrder.from_ranks([self._ranks[c] for c in subset]), remap
        pairs = [
            (remap[a], remap[b]) for (a, b) in self._pairs if a in remap and b in remap
        ]
        return PreferenceOrder.from_pairs(pairs, len(subset)), remap

    def restrict(self, subset):
        """Induced order on ``subset``, candidates reindexed in sorted order."""
        return self.restrict_with_map(subset)[0]

    def extensions(self):
        """All total-order extensions, streamed best-to-worst.

        Yields candidate sequences (best first).  Standard topological
        enumeration: repeatedly pick any currently-maximal candidate.
        """
        m = self.m
        indeg = [len(self.upper_set(c)) for c in range(m)]
        succs = [sorted(self.lower_set(c)) for c in range(m)]
        chosen = []
        taken = set()

        def rec():
            if len(chosen) == m:
                yield tuple(chosen)
                return
            for c in range(m):
                if indeg[c] == 0 and c not in taken:
                    taken.add(c)
                    chosen.append(c)
                    for d in succs[c]:
                        indeg[d] -= 1
                    yield from rec()
                    for d in succs[c]:
                        indeg[d] += 1
                    chosen.pop()
                    taken.remove(c)

        yield from rec()

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PreferenceOrder):
            return NotImplemented
        if self.m != other.m:
            return False
        if self._ranks is not None and other._ranks is not None:
            return self._ranks == other._ranks
        return self.pairs() == other.pairs()

    def __hash__(self):
        if self._hash is None:
            if self._ranks is not None:
                self._hash = hash((self.m, self._ranks))
            else:
                self._hash = hash((self.m, self._pairs))
        return self._hash

    def __repr__(self):
        if self._ranks is not None:
            parts = []
            for bucket in self.buckets():
                parts.append("~".join(str(c) for c in bucket))
            return f"PreferenceOrder<{' > '.join(parts)}>"
        return f"PreferenceOrder<pairs={sorted(self._pairs)}, m={self.m}>"


@dataclass(frozen=True)
class Profile:
    """An ordered multiset of votes over a shared candidate set."""

    m: int
    votes: tuple[PreferenceOrder, ...]
    multiplicities: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.votes:
            raise ValueError("a profile needs at least one vote")
        if not self.multiplicities:
            object.__setattr__(self, "multiplicities", (1,) * len(self.votes))
        if len(self.multiplicities) != len(self.votes):
            raise ValueError("one multiplicity per vote required")
        if any(w <= 0 for w in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        for v in self.votes:
            if v.m != self.m:
                raise ValueError("all votes must range over the same candidate set")

    @property
    def n(self):
        """Number of distinct votes."""
        return len(self.votes)

    @property
    def total_voters(self):
        return sum(self.multiplicities)

    def order_class(self):
        """Loosest class among the votes (the class of the profile)."""
        return OrderClass(max(v.order_class() for v in self.votes))

    def contains_total_order(self):
        return any(v.order_class() == OrderClass.TOTAL for v in self.votes)

    def first_total_order(self):
        for v in self.votes:
            if v.order_class() == OrderClass.TOTAL:
                return v
        return None

    def restrict(self, subset):
        return Profile(
            len(subset),
            tuple(v.restrict(subset) for v in self.votes),
            self.multiplicities,
        )

    def __repr__(self):
        return f"Profile(m={self.m}, votes={list(self.votes)!r})"


@dataclass(frozen=True)
class Axis:
    """A total order of candidates (the societal axis)."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("axis must be a permutation of 0..m-1")

    @property
    def m(self):
        return len(self.order)

    def positions(self):
        """position-of-candidate array (inverse permutation)."""
        pos = [0] * len(self.order)
        for i, c in enumerate(self.order):
            pos[c] = i
        return pos

    def reversed(self):
        return Axis(tuple(reversed(self.order)))

    def restrict(self, subset):
        keep = set(subset)
        sub = [c for c in self.order if c in keep]
        remap = {c: i for i, c in enumerate(sorted(keep))}
        return Axis(tuple(remap[c] for c in sub))

    def __iter__(self):
        return iter(self.order)

    def __len__(self):
        return len(self.order)

    def __getitem__(self, i):
        return self.order[i]


@dataclass(frozen=True)
class Verdict:
    """Decision result: a witnessing axis, or a refusal with a certificate."""

    consistent: bool
    axis: Axis | None = None
    certificate: Certificate | None = None
    notion: Notion = Notion.PSP
    algorithm: str = ""

    @classmethod
    def yes(cls, axis, notion=Notion.PSP, algorithm=""):
        return cls(True, axis=axis, notion=notion, algorithm=algorithm)

    @classmethod
    def no(cls, certificate, notion=Notion.PSP, algorithm=""):
        return cls(False, certificate=certificate, notion=notion, algorithm=algorithm)

    def __bool__(self):
        return self.consistent


# -- module-level operation aliases (spec surface) ------------------------------


def build_order(pairs, m):
    """Transitive closure of comparisons with the tightest class tag."""
    return PreferenceOrder.from_pairs(pairs, m)


def restrict(order, subset):
    return order.restrict(subset)


def classify(order):
    return order.order_class()


def minimal_elements(order):
    return order.minimal_elements()


def maximal_elements(order):
    return order.maximal_elements()


def all_axes(m, halve_by_reversal=True):
    """Every axis in lexicographic order, keeping the lex-smaller of each
    reversal pair when ``halve_by_reversal`` is set."""
    for perm in itertools.permutations(range(m)):
        if halve_by_reversal and perm[::-1] < perm:
            continue
        yield Axis(perm)

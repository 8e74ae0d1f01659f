"""Consecutive-ones solving via PQ-trees.

A PQ-tree over columns ``0..m-1`` compactly represents a set of column
permutations: P-node children may be permuted arbitrarily, Q-node children
only read forwards or backwards.  Reducing the tree by each row's column set
restricts the represented permutations to those where the set is consecutive;
the tree's frontier after all reductions is a witnessing permutation.

``solve_c1p_sets`` is the production solver; ``backtracking_c1p`` is an
independent small-scale oracle used to cross-check it.
"""

from __future__ import annotations

EMPTY, FULL, PARTIAL = 0, 1, 2


class _Node:
    __slots__ = ("kind", "children", "parent", "col", "gen", "count")

    def __init__(self, kind, children=None, col=None):
        self.kind = kind  # 'P', 'Q' or 'L'
        self.children = children or []
        self.parent = None
        self.col = col
        self.gen = -1
        self.count = 0
        for ch in self.children:
            ch.parent = self


class PQTree:
    """PQ-tree over ``m`` columns, reducible row by row."""

    def __init__(self, m):
        self.m = m
        self.leaves = [_Node("L", col=c) for c in range(m)]
        if m == 1:
            self.root = self.leaves[0]
        else:
            self.root = _Node("P", children=list(self.leaves))
        self._gen = 0

    # -- helpers -----------------------------------------------------------

    @staticmethod
    def _set_children(node, children):
        node.children = children
        for ch in children:
            ch.parent = node

    @staticmethod
    def _group(nodes):
        """One node standing for ``nodes``: itself if single, else a P-node."""
        if len(nodes) == 1:
            return nodes[0]
        return _Node("P", children=list(nodes))

    def _collapse_single(self, node):
        """Replace a one-child internal node by its child."""
        if node.kind == "L" or len(node.children) != 1:
            return
        child = node.children[0]
        parent = node.parent
        if parent is None:
            self.root = child
            child.parent = None
        else:
            idx = parent.children.index(node)
            parent.children[idx] = child
            child.parent = parent

    def _pertinent(self, node):
        return node.gen == self._gen and node.count > 0

    # -- reduction ---------------------------------------------------------

    def reduce(self, cols):
        """Restrict to permutations where ``cols`` is consecutive.

        Returns False (tree unchanged semantically meaningless afterwards) if
        impossible.
        """
        cols = set(cols)
        if len(cols) <= 1 or len(cols) >= self.m:
            return True
        self._gen += 1
        size = len(cols)
        # count full leaves below every ancestor
        proot = None
        for c in cols:
            node = self.leaves[c]
            while node is not None:
                if node.gen != self._gen:
                    node.gen = self._gen
                    node.count = 0
                node.count += 1
                if node.count == size and proot is None:
                    proot = node
                    break
                node = node.parent
        label = self._apply(proot, is_root=True)
        return label is not None

    def _apply(self, node, is_root):
        if node.kind == "L":
            return FULL
        empties, fulls, partials = [], [], []
        for ch in node.children:
            if not self._pertinent(ch):
                empties.append(ch)
                continue
            lab = self._apply(ch, is_root=False)
            if lab is None:
                return None
            if lab == EMPTY:
                empties.append(ch)
            elif lab == FULL:
                fulls.append(ch)
            else:
                partials.append(ch)
        if node.kind == "P":
            return self._apply_p(node, empties, fulls, partials, is_root)
        return self._apply_q(node, empties, fulls, partials, is_root)

    def _apply_p(self, node, empties, fulls, partials, is_root):
        if not partials:
            if not empties:
                return FULL
            if not fulls:
                return EMPTY
            if is_root:
                # P2: group the full children, no order constraint added
                if len(fulls) >= 2:
                    self._set_children(node, empties + [self._group(fulls)])
                return FULL
            # P3: split into a singly partial Q (empty side first)
            q_children = [self._group(empties), self._group(fulls)]
            node.kind = "Q"
            self._set_children(node, q_children)
            return PARTIAL
        if len(partials) == 1:
            q = partials[0]
            if is_root:
                # P4: full children join the partial child's full end
                if fulls:
                    self._set_children(q, q.children + [self._group(fulls)])
                self._set_children(node, empties + [q])
                self._collapse_single(node)
                return FULL
            # P5: node dissolves into the partial child, extended both ways
            merged = list(q.children)
            if empties:
                merged = [self._group(empties)] + merged
            if fulls:
                merged = merged + [self._group(fulls)]
            node.kind = "Q"
            self._set_children(node, merged)
            return PARTIAL
        if len(partials) == 2 and is_root:
            # P6: both partial children and the fulls merge into one Q
            q1, q2 = partials
            merged = list(q1.children)
            if fulls:
                merged.append(self._group(fulls))
            merged.extend(reversed(q2.children))
            qm = _Node("Q", children=merged)
            self._set_children(node, empties + [qm])
            self._collapse_single(node)
            return FULL
        return None

    def _labels(self, node, fulls, partials):
        out = []
        fullset = set(map(id, fulls))
        partset = set(map(id, partials))
        for ch in node.children:
            if id(ch) in fullset:
                out.append(FULL)
            elif id(ch) in partset:
                out.append(PARTIAL)
            else:
                out.append(EMPTY)
        return out

    def _apply_q(self, node, empties, fulls, partials, is_root):
        labels = self._labels(node, fulls, partials)
        if all(lab == FULL for lab in labels):
            return FULL
        if len(partials) > (2 if is_root else 1):
            return None
        if not is_root:
            # Q2: children must read empty* [partial] full*, up to reversal
            if not self._match_q2(labels):
                labels.reverse()
                node.children.reverse()
                if not self._match_q2(labels):
                    return None
            new_children = []
            for ch, lab in zip(node.children, labels):
                if lab == PARTIAL:
                    new_children.extend(ch.children)  # empty side already left
                else:
                    new_children.append(ch)
            self._set_children(node, new_children)
            return PARTIAL
        # Q3 (root): empty* [partial] full* [partial] empty*
        seq = self._match_q3(labels)
        if seq is None:
            return None
        first_part, second_part = seq
        new_children = []
        for i, (ch, lab) in enumerate(zip(node.children, labels)):
            if lab != PARTIAL:
                new_children.append(ch)
            elif i == first_part:
                new_children.extend(ch.children)  # full side faces right
            else:
                new_children.extend(reversed(ch.children))  # full side faces left
        self._set_children(node, new_children)
        return FULL

    @staticmethod
    def _match_q2(labels):
        """empty* [partial] full+ with the fulls flush right."""
        i = 0
        n = len(labels)
        while i < n and labels[i] == EMPTY:
            i += 1
        if i < n and labels[i] == PARTIAL:
            i += 1
        while i < n and labels[i] == FULL:
            i += 1
        return i == n and labels[-1] != EMPTY

    @staticmethod
    def _match_q3(labels):
        """empty* [partial] full* [partial] empty*; returns partial indices."""
        n = len(labels)
        i = 0
        first_part = second_part = None
        while i < n and labels[i] == EMPTY:
            i += 1
        if i < n and labels[i] == PARTIAL:
            first_part = i
            i += 1
        while i < n and labels[i] == FULL:
            i += 1
        if i < n and labels[i] == PARTIAL:
            second_part = i
            i += 1
        while i < n and labels[i] == EMPTY:
            i += 1
        if i != n:
            return None
        return (first_part, second_part)

    # -- output ------------------------------------------------------------

    def frontier(self):
        """Leaf columns left to right."""
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.kind == "L":
                out.append(node.col)
            else:
                stack.extend(reversed(node.children))
        return out


def solve_c1p_sets(rows, m):
    """Column permutation making every row's columns consecutive, or None.

    ``rows`` is an iterable of column-index collections.  Rows of size <= 1 or
    covering all columns are unconstraining and skipped; duplicates are
    reduced once.
    """
    if m == 0:
        return []
    tree = PQTree(m)
    seen = set()
    for row in rows:
        key = frozenset(row)
        if len(key) <= 1 or len(key) >= m or key in seen:
            continue
        seen.add(key)
        if not tree.reduce(key):
            return None
    return tree.frontier()


def backtracking_c1p(rows, m):
    """Small-scale independent C1P solver by left-to-right column placement.

    Prunes a branch as soon as a row that has started but not finished skips a
    position.  Intended as the test oracle for :func:`solve_c1p_sets`.
    """
    rows = [frozenset(r) for r in rows if 0 < len(r) < m]
    rows = list(dict.fromkeys(rows))
    sizes = [len(r) for r in rows]
    in_row = [[] for _ in range(m)]
    for ri, r in enumerate(rows):
        for c in r:
            in_row[c].append(ri)
    placed = [0] * len(rows)
    perm = []
    used = [False] * m

    def open_rows_ok(c):
        for ri, r in enumerate(rows):
            if 0 < placed[ri] < sizes[ri] and c not in r:
                return False
        return True

    def rec():
        if len(perm) == m:
            return True
        for c in range(m):
            if used[c] or not open_rows_ok(c):
                continue
            used[c] = True
            perm.append(c)
            for ri in in_row[c]:
                placed[ri] += 1
            if rec():
                return True
            for ri in in_row[c]:
                placed[ri] -= 1
            perm.pop()
            used[c] = False
        return False

    if rec():
        return list(perm)
    return None


def rows_consecutive_under(rows, perm):
    """Check every row is consecutive under the column permutation."""
    pos = {c: i for i, c in enumerate(perm)}
    for r in rows:
        r = set(r)
        if not r:
            continue
        ps = [pos[c] for c in r]
        if max(ps) - min(ps) + 1 != len(ps):
            return False
    return True

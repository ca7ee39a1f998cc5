"""Plane trees and their contour encoding.

A planted plane tree with ``m`` edges is a rooted map with a single face.
Its contour function records the height of the vertex visited by a walker
going around the tree (left hand on the tree, starting along the root dart),
which is the face walk of the map.  Two contour positions are the same
vertex exactly when both achieve the minimum of the contour between them;
that equivalence is what the gluing operations consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random

from .errors import EmptyTree, LevelOutOfRange, NotDyck
from .maps import PlanarMap, build_map


@dataclass(frozen=True)
class DyckPath:
    """Step sequence over {+1, -1} with nonnegative prefix sums and sum 0."""

    steps: tuple[int, ...]

    def __post_init__(self):
        h = 0
        for s in self.steps:
            if s not in (1, -1):
                raise NotDyck(f"step {s!r} is not +-1")
            h += s
            if h < 0:
                raise NotDyck("prefix sum became negative")
        if h != 0:
            raise NotDyck("steps do not sum to zero")
        if len(self.steps) % 2:
            raise NotDyck("odd length")

    @property
    def m(self) -> int:
        """Number of tree edges."""
        return len(self.steps) // 2

    def heights(self) -> tuple[int, ...]:
        """Values C(0..2m)."""
        out = [0]
        for s in self.steps:
            out.append(out[-1] + s)
        return tuple(out)

    def to_word(self) -> str:
        return "".join("U" if s == 1 else "D" for s in self.steps)

    @classmethod
    def from_word(cls, word: str) -> "DyckPath":
        try:
            steps = tuple({"U": 1, "D": -1}[c] for c in word.strip())
        except KeyError as exc:
            raise NotDyck(f"bad character in {word!r}") from exc
        return cls(steps)


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.comb(2 * n, n) // (n + 1)


def contour_classes(path: DyckPath) -> list[tuple[int, ...]]:
    """Partition of {0..2m} into vertices: positions i, j are equivalent when
    C(i) = C(j) = min C on [i, j].  Returns m+1 classes sorted by first
    element."""
    heights = path.heights()
    n = len(heights)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # scan with a stack of open levels: position j joins the last open
    # position at the same height that stays a running minimum
    stack: list[int] = [0]
    for j in range(1, n):
        if path.steps[j - 1] == 1:
            stack.append(j)
        else:
            stack.pop()
            parent[find(j)] = find(stack[-1])
    classes: dict[int, list[int]] = {}
    for i in range(n):
        classes.setdefault(find(i), []).append(i)
    return sorted((tuple(sorted(v)) for v in classes.values()), key=lambda c: c[0])


def contour_to_tree(path: DyckPath) -> PlanarMap:
    """Plane tree whose contour is ``path``.

    Dart ``i+1`` is the contour step from position ``i``; alpha pairs the two
    traversals of each edge, and the rotation at a vertex runs through its
    class positions in increasing order.
    """
    m = path.m
    if m == 0:
        raise EmptyTree("a tree must have at least one edge")
    n = 2 * m
    alpha = [0] * n
    stack: list[int] = []
    for i, s in enumerate(path.steps):
        if s == 1:
            stack.append(i)
        else:
            j = stack.pop()
            alpha[i] = j + 1
            alpha[j] = i + 1
    sigma = [0] * n
    for cls in contour_classes(path):
        positions = [p for p in cls if p < n]
        for a, b in zip(positions, positions[1:] + positions[:1]):
            sigma[a] = b + 1
    return build_map(sigma, alpha, 1)


def is_plane_tree(pmap: PlanarMap) -> bool:
    return pmap.face_count == 1


def tree_to_contour(tree: PlanarMap) -> DyckPath:
    """Contour function of a plane tree (read off the single face walk;
    the first traversal of an edge is the up step)."""
    if tree.edge_count == 0:
        raise EmptyTree("a tree must have at least one edge")
    if not is_plane_tree(tree):
        raise NotDyck("map is not a plane tree (more than one face)")
    seen: set[int] = set()
    steps = []
    for d in tree.root_face():
        e = tree.edge_of(d)
        if e in seen:
            steps.append(-1)
        else:
            seen.add(e)
            steps.append(1)
    return DyckPath(tuple(steps))


def enumerate_trees(m: int) -> list[DyckPath]:
    """All Dyck paths of length 2m, lexicographic with U before D."""
    out: list[DyckPath] = []

    def rec(prefix: list[int], height: int, remaining: int):
        if remaining == 0:
            out.append(DyckPath(tuple(prefix)))
            return
        if height < remaining:
            prefix.append(1)
            rec(prefix, height + 1, remaining - 1)
            prefix.pop()
        if height > 0:
            prefix.append(-1)
            rec(prefix, height - 1, remaining - 1)
            prefix.pop()

    rec([], 0, 2 * m)
    return out


def sample_dyck_uniform(m: int, rng: Random) -> DyckPath:
    """Exactly uniform Dyck path of length 2m by the cycle lemma: shuffle a
    word with m up and m+1 down steps, rotate to start after the first
    prefix-sum minimum, drop the final down step."""
    if m < 1:
        raise EmptyTree("m must be at least 1")
    word = [1] * m + [-1] * (m + 1)
    rng.shuffle(word)
    best, run, cut = 0, 0, 0
    for i, s in enumerate(word):
        run += s
        if run < best:
            best, cut = run, i + 1
    rotated = word[cut:] + word[:cut]
    return DyckPath(tuple(rotated[:-1]))


def sample_tree_uniform(m: int, seed) -> DyckPath:
    return sample_dyck_uniform(m, Random(str(seed)))


def subtree_window(path: DyckPath, x: int, level: int) -> tuple[int, int]:
    """Maximal window [lo, hi] around position ``x`` on which C - level is a
    Dyck path, with C(lo) = C(hi) = level."""
    heights = path.heights()
    if not 0 <= x < len(path.steps):
        raise LevelOutOfRange(f"position {x} out of range")
    if not 1 <= level <= heights[x]:
        raise LevelOutOfRange(f"level {level} not in 1..C({x})={heights[x]}")
    # C(0) = C(2m) = 0 < level, so both loops stop strictly inside the path
    lo = x
    while heights[lo - 1] >= level:
        lo -= 1
    hi = x
    while heights[hi + 1] >= level:
        hi += 1
    return lo, hi

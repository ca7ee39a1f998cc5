"""Gluing and ungluing of tree decorations.

Ungluing cuts a map open along a distinguished tree submap: every tree edge
is doubled and the new darts form a fresh external face whose walk is the
contour of the tree.  Gluing reverses this: the external face of a map with
a simple boundary of perimeter 2m is sewn shut along the vertex equivalence
induced by the contour of an m-edge tree.

Both directions are implemented through the face structure.  Internal faces
are carried over as identical dart cycles and the external face cycle is
written down explicitly; the rotation system is then recovered as
``sigma = phi o alpha``.  With that framing, gluing deletes the external
darts and re-pairs their partners, and the round trip is exact on dart ids
(up to the final canonical relabelling of the glued map).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BoundariesNotDisjoint,
    BoundaryNotSimple,
    DecorationNotATree,
    EmptyTree,
    RootNotOnTree,
    SizeMismatch,
    TreeTooLarge,
)
from .maps import BoundaryMap, PlanarMap, build_map
from .trees import DyckPath, tree_to_contour


@dataclass(frozen=True)
class TreeDecoratedMap:
    """A map together with a tree submap, given as a set of edge ids."""

    map: PlanarMap
    tree_edges: frozenset[int]

    @property
    def root_on_tree(self) -> bool:
        return self.map.edge_of(self.map.root) in self.tree_edges

    def tree_darts(self) -> list[int]:
        return [d for d in self.map.darts() if self.map.edge_of(d) in self.tree_edges]


@dataclass(frozen=True)
class MultiBoundaryMap:
    """A map with labelled boundary faces; root dart 1 is the map root."""

    map: PlanarMap
    roots: tuple[int, ...]

    def boundary(self, i: int) -> BoundaryMap:
        return BoundaryMap(self.map.rerooted(self.roots[i]))


@dataclass(frozen=True)
class ForestDecoratedMap:
    map: PlanarMap
    trees: tuple[frozenset[int], ...]
    tree_roots: tuple[int, ...]


def check_tree_decoration(pmap: PlanarMap, tree_edges) -> None:
    """Raise DecorationNotATree unless the edges form a tree submap."""
    tree_edges = set(tree_edges)
    if not tree_edges:
        raise DecorationNotATree("empty decoration")
    all_edges = set(pmap.edges())
    if not tree_edges <= all_edges:
        raise DecorationNotATree("unknown edge ids in decoration")
    verts: set[int] = set()
    for e in tree_edges:
        verts.add(pmap.vertex_of(e))
        verts.add(pmap.vertex_of(pmap.alpha_of(e)))
    if len(verts) != len(tree_edges) + 1:
        raise DecorationNotATree("edge set contains a cycle")
    # connectivity over tree edges
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for e in tree_edges:
        u, w = pmap.vertex_of(e), pmap.vertex_of(pmap.alpha_of(e))
        adj[u].append(w)
        adj[w].append(u)
    seen = {next(iter(verts))}
    stack = list(seen)
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != verts:
        raise DecorationNotATree("edge set is not connected")


def extract_tree(pmap: PlanarMap, tree_edges, root: int | None = None):
    """Standalone plane tree of a decoration.

    Returns (tree, to_ambient) where ``to_ambient`` sends tree darts back to
    the darts of ``pmap``.  The rotation is the restriction of the ambient
    rotation, so the embedding of the submap is preserved.
    """
    if root is None:
        root = pmap.root
    darts = sorted(d for d in pmap.darts() if pmap.edge_of(d) in tree_edges)
    index = {d: i + 1 for i, d in enumerate(darts)}
    n = len(darts)
    sigma = [0] * n
    alpha = [0] * n
    for d in darts:
        e = pmap.sigma_of(d)
        while pmap.edge_of(e) not in tree_edges:
            e = pmap.sigma_of(e)
        sigma[index[d] - 1] = index[e]
        alpha[index[d] - 1] = index[pmap.alpha_of(d)]
    tree = build_map(sigma, alpha, index[root])
    to_ambient = {v: k for k, v in index.items()}
    return tree, to_ambient


def contour_darts(tree: PlanarMap) -> tuple[int, ...]:
    """Tree darts in contour order (the single face walk from the root)."""
    return tree.root_face()


def _contour_matching(tree: PlanarMap) -> list[int]:
    """match[i] = j when contour steps i and j traverse the same edge."""
    walk = contour_darts(tree)
    pos = {d: i for i, d in enumerate(walk)}
    return [pos[tree.alpha_of(d)] for d in walk]


def unglue(tdm: TreeDecoratedMap):
    """Cut a tree-decorated map open along its tree.

    Returns ``(tree, bmap)`` with ``tree`` the decoration as a standalone
    plane tree (rooted at the map root) and ``bmap`` a map with a simple
    boundary of perimeter twice the tree size, whose internal faces are the
    faces of the input in degree-preserving correspondence.
    """
    pmap = tdm.map
    check_tree_decoration(pmap, tdm.tree_edges)
    if not tdm.root_on_tree:
        raise RootNotOnTree("map root edge must belong to the decoration")
    tree, to_ambient = extract_tree(pmap, tdm.tree_edges)
    contour = [to_ambient[d] for d in contour_darts(tree)]

    n = pmap.dart_count
    twin = {}  # ambient tree dart -> its new boundary dart
    for k, d in enumerate(sorted(set(contour))):
        twin[d] = n + 1 + k

    nb = n + len(twin)
    phi = [0] * nb
    alpha = [0] * nb
    for d in pmap.darts():
        phi[d - 1] = pmap.phi_of(d)  # internal faces are unchanged
        alpha[d - 1] = twin.get(d, pmap.alpha_of(d))
    for t, s in twin.items():
        alpha[s - 1] = t
    # the new darts form the external face; its orbit runs against the
    # contour (phi sends the twin of step i+1 to the twin of step i), which
    # is what splits each tree vertex into its corners
    two_m = len(contour)
    for i in range(two_m):
        phi[twin[contour[(i + 1) % two_m]] - 1] = twin[contour[i]]
    sigma = [phi[alpha[d - 1] - 1] for d in range(1, nb + 1)]
    root = twin[contour[0]]
    labels = [(d, v) for d, v in pmap.labels]
    bmap = BoundaryMap(build_map(sigma, alpha, root, labels))
    return tree, bmap


def _glue_core(pmap: PlanarMap, consumed: list[int], matching: list[int],
               external_after: list[int], root_old: int, labels=None):
    """Delete ``consumed`` darts, pair alpha-partners of consumed darts i and
    matching[i], keep every other face cycle, append ``external_after`` as a
    face cycle, and rebuild sigma from the faces."""
    consumed_set = set(consumed)
    survivors = [d for d in pmap.darts() if d not in consumed_set]
    index = {d: i + 1 for i, d in enumerate(survivors)}
    n = len(survivors)
    phi = [0] * n
    alpha = [0] * n
    for d in survivors:
        if pmap.face_of(d) != pmap.face_of(pmap.root):
            phi[index[d] - 1] = index[pmap.phi_of(d)]
        a = pmap.alpha_of(d)
        if a not in consumed_set:
            alpha[index[d] - 1] = index[a]
    for i, j in enumerate(matching):
        ai = pmap.alpha_of(consumed[i])
        aj = pmap.alpha_of(consumed[j])
        alpha[index[ai] - 1] = index[aj]
    for k, d in enumerate(external_after):
        phi[index[d] - 1] = index[external_after[(k + 1) % len(external_after)]]
    sigma = [phi[alpha[d - 1] - 1] for d in range(1, n + 1)]
    if labels is None:
        labels = pmap.labels
    labels = [(index[d], v) for d, v in labels if d in index]
    glued = build_map(sigma, alpha, index[root_old], labels)
    return glued, index


def glue(bmap: BoundaryMap, tree: PlanarMap) -> TreeDecoratedMap:
    """Sew the simple boundary of ``bmap`` shut along the contour of ``tree``.

    Boundary edge i is identified with boundary edge j whenever contour
    steps i and j traverse the same tree edge, so the identified edges form
    a copy of the tree; the result is rooted on that tree.
    """
    if not bmap.is_simple():
        raise BoundaryNotSimple("gluing needs a simple boundary")
    m = tree.edge_count
    if m == 0:
        raise EmptyTree("cannot glue a tree without edges")
    if bmap.perimeter != 2 * m:
        raise SizeMismatch(
            f"perimeter {bmap.perimeter} != 2*{m} tree edges")
    walk = list(bmap.boundary_walk())
    matching = _contour_matching(tree)
    pmap = bmap.map
    root_old = pmap.alpha_of(walk[0])
    glued, index = _glue_core(pmap, walk, matching, [], root_old)
    tree_edges = frozenset(
        glued.edge_of(index[pmap.alpha_of(b)]) for b in walk)
    return TreeDecoratedMap(glued, tree_edges)


def glue_partial(bmap: BoundaryMap, tree: PlanarMap) -> TreeDecoratedMap:
    """Glue a tree along the first part of a larger simple boundary.

    The boundary edges labelled 0..2m2-1 are consumed; the result keeps a
    simple external face of perimeter 2m1 rooted at the former edge 2m2, and
    is decorated by a tree that meets the boundary only at its root vertex.
    A full-size tree delegates to :func:`glue`.
    """
    if not bmap.is_simple():
        raise BoundaryNotSimple("partial gluing needs a simple boundary")
    m2 = tree.edge_count
    if m2 == 0:
        raise EmptyTree("cannot glue a tree without edges")
    if 2 * m2 > bmap.perimeter:
        raise TreeTooLarge(
            f"tree contour 2*{m2} exceeds perimeter {bmap.perimeter}")
    if 2 * m2 == bmap.perimeter:
        return glue(bmap, tree)
    walk = list(bmap.boundary_walk())
    consumed = walk[: 2 * m2]
    matching = _contour_matching(tree)
    # the surviving labels stay external; their phi orbit runs against
    # label order, so the face cycle is the reversed remainder
    external_after = [walk[2 * m2]] + walk[2 * m2 + 1:][::-1]
    glued, index = _glue_core(bmap.map, consumed, matching,
                              external_after, walk[2 * m2])
    tree_edges = frozenset(
        glued.edge_of(index[bmap.map.alpha_of(b)]) for b in consumed)
    return TreeDecoratedMap(glued, tree_edges)


def glue_forest(mmap: MultiBoundaryMap, forest) -> ForestDecoratedMap:
    """Glue one tree into each labelled boundary of a multi-boundary map."""
    forest = list(forest)
    pmap = mmap.map
    if len(forest) != len(mmap.roots):
        raise SizeMismatch("one tree per boundary required")
    walks = []
    seen_vertices: set[int] = set()
    for i, root in enumerate(mmap.roots):
        b = BoundaryMap(pmap.rerooted(root))
        if not b.is_simple():
            raise BoundaryNotSimple(f"boundary {i + 1} is not simple")
        if b.perimeter != 2 * forest[i].edge_count:
            raise SizeMismatch(
                f"boundary {i + 1}: perimeter {b.perimeter} != "
                f"2*{forest[i].edge_count}")
        verts = set(b.boundary_vertices())
        if verts & seen_vertices:
            raise BoundariesNotDisjoint(
                f"boundary {i + 1} shares a vertex with an earlier boundary")
        seen_vertices |= verts
        walks.append(list(b.boundary_walk()))
    if len({pmap.face_of(r) for r in mmap.roots}) != len(mmap.roots):
        raise BoundariesNotDisjoint("two roots share a boundary face")
    consumed: list[int] = []
    matching: list[int] = []
    offsets = []
    for i, tree in enumerate(forest):
        offsets.append(len(consumed))
        matching.extend(len(consumed) + j for j in _contour_matching(tree))
        consumed.extend(walks[i])
    root_old = pmap.alpha_of(consumed[0])
    glued, index = _glue_core_multi(pmap, consumed, matching, root_old)
    trees = []
    roots = []
    for i, walk in enumerate(walks):
        trees.append(frozenset(
            glued.edge_of(index[pmap.alpha_of(b)]) for b in walk))
        roots.append(index[pmap.alpha_of(walk[0])])
    return ForestDecoratedMap(glued, tuple(trees), tuple(roots))


def _glue_core_multi(pmap: PlanarMap, consumed: list[int], matching: list[int],
                     root_old: int):
    """Like _glue_core but deletes several whole face cycles."""
    consumed_set = set(consumed)
    survivors = [d for d in pmap.darts() if d not in consumed_set]
    index = {d: i + 1 for i, d in enumerate(survivors)}
    n = len(survivors)
    phi = [0] * n
    alpha = [0] * n
    for d in survivors:
        phi[index[d] - 1] = index[pmap.phi_of(d)]
        a = pmap.alpha_of(d)
        if a not in consumed_set:
            alpha[index[d] - 1] = index[a]
    for i, j in enumerate(matching):
        ai = pmap.alpha_of(consumed[i])
        alpha[index[ai] - 1] = index[pmap.alpha_of(consumed[j])]
    sigma = [phi[alpha[d - 1] - 1] for d in range(1, n + 1)]
    labels = [(index[d], v) for d, v in pmap.labels if d in index]
    glued = build_map(sigma, alpha, index[root_old], labels)
    return glued, index


def decorated_to_line(tdm: TreeDecoratedMap) -> str:
    from .maps import map_to_line

    return map_to_line(tdm.map) + " tree=" + ",".join(
        str(e) for e in sorted(tdm.tree_edges))


def decorated_from_line(line: str) -> TreeDecoratedMap:
    from .errors import FormatError
    from .maps import map_from_line

    if " tree=" not in line:
        raise FormatError("missing tree= field")
    head, tree_part = line.rsplit(" tree=", 1)
    pmap = map_from_line(head)
    edges = frozenset(int(x) for x in tree_part.split(","))
    check_tree_decoration(pmap, edges)
    return TreeDecoratedMap(pmap, edges)


def forest_to_line(fdm: ForestDecoratedMap) -> str:
    from .maps import map_to_line

    groups = []
    for root, edges in zip(fdm.tree_roots, fdm.trees):
        groups.append(f"{root}:" + ",".join(str(e) for e in sorted(edges)))
    return map_to_line(fdm.map) + " trees=" + ";".join(groups)


def forest_from_line(line: str) -> ForestDecoratedMap:
    from .errors import FormatError
    from .maps import map_from_line

    if " trees=" not in line:
        raise FormatError("missing trees= field")
    head, part = line.rsplit(" trees=", 1)
    pmap = map_from_line(head)
    trees = []
    roots = []
    for group in part.split(";"):
        root, edges = group.split(":", 1)
        roots.append(int(root))
        trees.append(frozenset(int(x) for x in edges.split(",")))
    return ForestDecoratedMap(pmap, tuple(trees), tuple(roots))

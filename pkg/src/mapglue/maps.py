"""Rooted planar maps as rotation systems.

A map on ``2E`` darts (labelled ``1..2E``) is a pair of permutations:
``sigma`` sends a dart to the next dart counterclockwise around its tail
vertex, and ``alpha`` is the fixed-point-free involution exchanging the two
darts of each edge.  Faces are the orbits of ``phi = sigma o alpha`` read as
``phi(d) = sigma(alpha(d))``; the face of a dart lies to its left.  Only
genus-0 rotation systems are accepted.

The root face (the face containing the root dart) doubles as the external
face whenever a map is read as a map with a boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Disconnected, FormatError, NonPlanar, NotInvolution

Perm = tuple[int, ...]


def _cycles(perm: Perm) -> list[tuple[int, ...]]:
    """Orbits of a permutation given as a 1-indexed image table."""
    n = len(perm)
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d - 1]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class PlanarMap:
    """Immutable rooted planar map.  Use :func:`build_map` to validate input."""

    sigma: Perm
    alpha: Perm
    root: int
    labels: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    # -- basic accessors ------------------------------------------------

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def edge_count(self) -> int:
        return len(self.sigma) // 2

    def sigma_of(self, d: int) -> int:
        return self.sigma[d - 1]

    def alpha_of(self, d: int) -> int:
        return self.alpha[d - 1]

    def phi_of(self, d: int) -> int:
        """Next dart along the face to the left of ``d``."""
        return self.sigma[self.alpha[d - 1] - 1]

    def darts(self) -> range:
        return range(1, self.dart_count + 1)

    def edge_of(self, d: int) -> int:
        """Canonical edge id: the smaller dart of the pair."""
        return min(d, self.alpha_of(d))

    def edges(self) -> list[int]:
        return [d for d in self.darts() if d < self.alpha_of(d)]

    # -- cells ----------------------------------------------------------

    def vertices(self) -> list[tuple[int, ...]]:
        return _cycles(self.sigma)

    def faces(self) -> list[tuple[int, ...]]:
        phi = tuple(self.sigma[a - 1] for a in self.alpha)
        return _cycles(phi)

    def vertex_of(self, d: int) -> int:
        """Canonical vertex id: the smallest dart around the vertex of ``d``."""
        m = d
        e = self.sigma_of(d)
        while e != d:
            if e < m:
                m = e
            e = self.sigma_of(e)
        return m

    def face_of(self, d: int) -> int:
        m = d
        e = self.phi_of(d)
        while e != d:
            if e < m:
                m = e
            e = self.phi_of(e)
        return m

    @property
    def vertex_count(self) -> int:
        return len(self.vertices())

    @property
    def face_count(self) -> int:
        return len(self.faces())

    def face_cycle(self, d: int) -> tuple[int, ...]:
        cyc = [d]
        e = self.phi_of(d)
        while e != d:
            cyc.append(e)
            e = self.phi_of(e)
        return tuple(cyc)

    def root_face(self) -> tuple[int, ...]:
        """Face cycle of the root dart, starting at the root."""
        return self.face_cycle(self.root)

    def degree(self, d: int) -> int:
        """Degree of the vertex at the tail of ``d``."""
        n = 1
        e = self.sigma_of(d)
        while e != d:
            n += 1
            e = self.sigma_of(e)
        return n

    def label_of(self, d: int) -> str | None:
        for k, v in self.labels:
            if k == d:
                return v
        return None

    # -- identity ---------------------------------------------------------

    def relabel(self, image: dict[int, int]) -> "PlanarMap":
        """Apply a dart relabelling ``old -> new`` (a bijection on 1..2E)."""
        n = self.dart_count
        sigma = [0] * n
        alpha = [0] * n
        for d in self.darts():
            sigma[image[d] - 1] = image[self.sigma_of(d)]
            alpha[image[d] - 1] = image[self.alpha_of(d)]
        labels = tuple(sorted((image[d], v) for d, v in self.labels))
        return PlanarMap(tuple(sigma), tuple(alpha), image[self.root], labels)

    def canonical_relabelling(self, root: int | None = None) -> dict[int, int]:
        """First-visit order of the breadth-first exploration from the root,
        alternating sigma then alpha."""
        if root is None:
            root = self.root
        image: dict[int, int] = {root: 1}
        queue = [root]
        head = 0
        while head < len(queue):
            d = queue[head]
            head += 1
            for e in (self.sigma_of(d), self.alpha_of(d)):
                if e not in image:
                    image[e] = len(image) + 1
                    queue.append(e)
        return image

    def canonical_code(self) -> "CanonicalCode":
        relabelled = self.relabel(self.canonical_relabelling())
        return CanonicalCode(relabelled.sigma + relabelled.alpha)

    def canonical_form(self) -> "PlanarMap":
        return self.relabel(self.canonical_relabelling())

    def rerooted(self, root: int) -> "PlanarMap":
        return PlanarMap(self.sigma, self.alpha, root, self.labels)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Relabelling-invariant identity of a rooted map."""

    code: tuple[int, ...]


def build_map(sigma, alpha, root: int, labels=()) -> PlanarMap:
    """Validate a rotation system and return the map.

    Raises :class:`NotInvolution`, :class:`Disconnected` or
    :class:`NonPlanar` when the data does not describe a rooted map on the
    sphere.
    """
    sigma = tuple(sigma)
    alpha = tuple(alpha)
    n = len(sigma)
    if n == 0 or n % 2 or len(alpha) != n:
        raise NotInvolution("need an equal even number of darts")
    if sorted(sigma) != list(range(1, n + 1)):
        raise NotInvolution("sigma is not a permutation of 1..2E")
    for d in range(1, n + 1):
        a = alpha[d - 1]
        if not 1 <= a <= n or a == d or alpha[a - 1] != d:
            raise NotInvolution("alpha is not a fixed-point-free involution")
    if not 1 <= root <= n:
        raise FormatError("root dart out of range")
    m = PlanarMap(sigma, alpha, root, tuple(sorted(tuple(labels))))
    # transitivity of <sigma, alpha>
    seen = {1}
    stack = [1]
    while stack:
        d = stack.pop()
        for e in (sigma[d - 1], alpha[d - 1]):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    if len(seen) != n:
        raise Disconnected("the darts do not form a connected map")
    euler = m.vertex_count - m.edge_count + m.face_count
    if euler != 2:
        raise NonPlanar(f"V - E + F = {euler}, not 2")
    return m


class BoundaryMap:
    """A planar map read with its root face as external face."""

    def __init__(self, pmap: PlanarMap):
        self.map = pmap

    @property
    def external_face(self) -> tuple[int, ...]:
        return self.map.root_face()

    @property
    def perimeter(self) -> int:
        return len(self.external_face)

    @property
    def internal_faces(self) -> list[tuple[int, ...]]:
        ext = self.map.face_of(self.map.root)
        return [f for f in self.map.faces() if self.map.face_of(f[0]) != ext]

    @property
    def internal_face_count(self) -> int:
        return self.map.face_count - 1

    def boundary_walk(self) -> tuple[int, ...]:
        """Darts of the external face in label order, starting at the root.

        Labels advance against the face orbit (phi runs from label i+1 to
        label i); with this direction, gluing identifies the boundary edge
        at label i with contour step i of the tree.
        """
        cyc = self.external_face
        return (cyc[0],) + tuple(reversed(cyc[1:]))

    def boundary_vertices(self) -> list[int]:
        """Tail vertex of each boundary dart, in walk order."""
        return [self.map.vertex_of(d) for d in self.boundary_walk()]

    def is_bridgeless(self) -> bool:
        walk = self.boundary_walk()
        edges = [self.map.edge_of(d) for d in walk]
        return len(set(edges)) == len(edges)

    def is_vertex_simple(self) -> bool:
        """Boundary walk visits no vertex twice (allows the bare-edge case)."""
        verts = self.boundary_vertices()
        return len(set(verts)) == len(verts)

    def is_simple(self) -> bool:
        """Simple as a curve: no repeated vertex and no repeated edge."""
        return self.is_vertex_simple() and self.is_bridgeless()


def faces(pmap: PlanarMap) -> list[tuple[int, ...]]:
    return pmap.faces()


def boundary_walk(bmap: BoundaryMap) -> tuple[int, ...]:
    return bmap.boundary_walk()


def is_simple_boundary(bmap: BoundaryMap) -> bool:
    return bmap.is_simple()


def is_bridgeless_boundary(bmap: BoundaryMap) -> bool:
    return bmap.is_bridgeless()


def is_q_angulation(pmap: PlanarMap, q: int, skip_external: bool = False) -> bool:
    """True when every face (every internal face if ``skip_external``) has
    degree ``q``."""
    ext = pmap.face_of(pmap.root) if skip_external else None
    for f in pmap.faces():
        if skip_external and pmap.face_of(f[0]) == ext:
            continue
        if len(f) != q:
            return False
    return True


def canonical_code(pmap: PlanarMap) -> CanonicalCode:
    return pmap.canonical_code()


# -- text serialization -------------------------------------------------------

def map_to_line(pmap: PlanarMap) -> str:
    parts = [
        "map",
        f"E={pmap.edge_count}",
        f"root={pmap.root}",
        "sigma=" + ",".join(str(x) for x in pmap.sigma),
        "alpha=" + ",".join(str(x) for x in pmap.alpha),
    ]
    if pmap.labels:
        parts.append("labels=" + ",".join(f"{k}:{v}" for k, v in pmap.labels))
    return " ".join(parts)


def _fields(line: str, kind: str) -> dict[str, str]:
    toks = line.split()
    if not toks or toks[0] != kind:
        raise FormatError(f"expected a {kind!r} record: {line!r}")
    out = {}
    for tok in toks[1:]:
        if "=" not in tok:
            raise FormatError(f"bad field {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out

def map_from_line(line: str) -> PlanarMap:
    f = _fields(line, "map")
    try:
        e = int(f["E"])
        root = int(f["root"])
        sigma = [int(x) for x in f["sigma"].split(",")]
        alpha = [int(x) for x in f["alpha"].split(",")]
    except (KeyError, ValueError) as exc:
        raise FormatError(f"malformed map record: {line!r}") from exc
    labels = []
    if "labels" in f:
        for item in f["labels"].split(","):
            k, v = item.split(":", 1)
            labels.append((int(k), v))
    if len(sigma) != 2 * e:
        raise FormatError("E does not match the sigma length")
    return build_map(sigma, alpha, root, labels)

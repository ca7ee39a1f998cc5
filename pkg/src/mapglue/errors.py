"""Exception hierarchy shared by all mapglue modules."""


class MapGlueError(Exception):
    """Base class for all errors raised by mapglue."""


# -- map construction and validation ----------------------------------------

class NotInvolution(MapGlueError):
    """alpha is not a fixed-point-free involution."""


class Disconnected(MapGlueError):
    """The permutation pair does not act transitively on the darts."""


class NonPlanar(MapGlueError):
    """Euler characteristic differs from 2 (higher genus rejected)."""


# -- trees and Dyck paths ----------------------------------------------------

class EmptyTree(MapGlueError):
    """Tree with zero edges where at least one edge is required."""


class NotDyck(MapGlueError):
    """Step sequence is not a Dyck path."""


class LevelOutOfRange(MapGlueError):
    """Requested level is not between 1 and the height at the position."""


# -- gluing / ungluing --------------------------------------------------------

class RootNotOnTree(MapGlueError):
    """Root-on-tree convention requires the map root edge in the decoration."""


class DecorationNotATree(MapGlueError):
    """Decoration edge set is not a connected acyclic submap."""


class BoundaryNotSimple(MapGlueError):
    """Gluing requires a simple boundary."""


class SizeMismatch(MapGlueError):
    """Boundary perimeter does not match twice the tree edge count."""


class TreeTooLarge(MapGlueError):
    """Partial gluing needs a tree strictly smaller than half the perimeter."""


class BoundariesNotDisjoint(MapGlueError):
    """Multi-boundary gluing requires vertex-disjoint boundaries."""


# -- bubbles ------------------------------------------------------------------

class BoundaryHasBridge(MapGlueError):
    """Bridged boundaries admit no constructive gluing."""


class MalformedCircuit(MapGlueError):
    """Circuit violates the contour-recovery rules."""


class CircuitMissesPinch(MapGlueError):
    """Circuit does not pass through every pinch vertex."""


# -- enumeration, counting, series, sampling ----------------------------------

class CapExceeded(MapGlueError):
    """Requested size is above the configured enumeration cap."""


class Infeasible(MapGlueError):
    """Parameters outside the domain of the counting formula."""


class NonIntegral(MapGlueError):
    """An exact division left a remainder (implementation bug)."""


class InternalMismatch(MapGlueError):
    """Two independent constructions of the same series disagree."""


class CatalogMissing(MapGlueError):
    """No catalog available for the requested sample family."""


class UnknownFormat(MapGlueError):
    """Unrecognized export format tag."""


class FormatError(MapGlueError):
    """Malformed text record."""

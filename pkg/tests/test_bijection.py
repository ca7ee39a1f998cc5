import pytest

from mapglue.bijection import (ForestDecoratedMap, MultiBoundaryMap,
                               TreeDecoratedMap, check_tree_decoration,
                               decorated_from_line, decorated_to_line,
                               extract_tree, forest_from_line, forest_to_line,
                               glue, glue_forest, glue_partial, unglue)
from mapglue.enumeration import (enumerate_boundary_maps, enumerate_maps,
                                 tree_submaps)
from mapglue.errors import (BoundaryNotSimple, DecorationNotATree, EmptyTree,
                            FormatError, SizeMismatch, TreeTooLarge)
from mapglue.maps import BoundaryMap, build_map
from mapglue.trees import (DyckPath, catalan, contour_to_tree,
                           enumerate_trees, tree_to_contour)

EDGE = build_map([1, 2], [2, 1], 1)


def _decorations(pmap):
    root_edge = pmap.edge_of(pmap.root)
    for m in range(1, pmap.vertex_count):
        for sub in tree_submaps(pmap, m):
            if root_edge in sub:
                yield TreeDecoratedMap(pmap, sub)


def test_unglue_edge_map():
    tree, bmap = unglue(TreeDecoratedMap(EDGE, frozenset({1})))
    assert tree.edge_count == 1
    assert bmap.perimeter == 2
    assert bmap.is_simple()
    assert bmap.map.edge_count == 2


def test_round_trip_exact_small():
    for e in range(1, 5):
        for pmap in enumerate_maps(e).maps():
            for tdm in _decorations(pmap):
                tree, bmap = unglue(tdm)
                assert bmap.is_simple()
                assert bmap.perimeter == 2 * tree.edge_count
                back = glue(bmap, tree)
                # exact on dart ids, not just up to isomorphism
                assert back.map == tdm.map
                assert back.tree_edges == tdm.tree_edges


def test_round_trip_pairs_small():
    for m in (1, 2):
        for e in range(m, 5):
            cat = enumerate_boundary_maps(e=e, perimeter=2 * m, simple=True)
            for pm in cat.maps():
                for path in enumerate_trees(m):
                    tdm = glue(BoundaryMap(pm), contour_to_tree(path))
                    tree2, bmap2 = unglue(tdm)
                    assert tree_to_contour(tree2) == path
                    assert bmap2.map.canonical_code() == pm.canonical_code()


def test_glue_counts_match_product():
    # gluing is injective: distinct pairs give distinct decorated maps
    for q, f, m in ((4, 1, 1), (3, 2, 1), (4, 2, 2)):
        cat = enumerate_boundary_maps(q=q, f=f, perimeter=2 * m, simple=True)
        seen = set()
        for pm in cat.maps():
            for path in enumerate_trees(m):
                tdm = glue(BoundaryMap(pm), contour_to_tree(path))
                image = tdm.map.canonical_relabelling()
                canon_tree = frozenset(
                    min(image[e], image[tdm.map.alpha_of(e)])
                    for e in tdm.tree_edges)
                seen.add((tdm.map.canonical_code(), canon_tree))
        assert len(seen) == catalan(m) * len(cat)


def test_glue_error_paths():
    tree1 = contour_to_tree(DyckPath.from_word("UD"))
    tree2 = contour_to_tree(DyckPath.from_word("UUDD"))
    bare = BoundaryMap(EDGE)  # bridge boundary, not simple
    with pytest.raises(BoundaryNotSimple):
        glue(bare, tree1)
    loop = BoundaryMap(build_map([2, 1], [2, 1], 1))
    with pytest.raises(SizeMismatch):
        glue(loop, tree1)
    quad = enumerate_boundary_maps(q=4, f=1, perimeter=4, simple=True).maps()[0]
    with pytest.raises(SizeMismatch):
        glue(BoundaryMap(quad), tree1)
    class EdgelessTree:
        # a tree with no edges has no map encoding; a stub is enough to
        # reach the emptiness check
        edge_count = 0

    with pytest.raises(EmptyTree):
        glue(BoundaryMap(quad), EdgelessTree())
    with pytest.raises(TreeTooLarge):
        glue_partial(BoundaryMap(quad), contour_to_tree(
            DyckPath.from_word("UUUDDD")))
    assert tree2.edge_count == 2


def test_check_tree_decoration_errors():
    tri = build_map([2, 1, 4, 3, 6, 5], [4, 5, 6, 1, 2, 3], 1)
    with pytest.raises(DecorationNotATree):
        check_tree_decoration(tri, set())
    with pytest.raises(DecorationNotATree):
        check_tree_decoration(tri, set(tri.edges()))  # the full 3-cycle
    with pytest.raises(DecorationNotATree):
        check_tree_decoration(tri, {99})
    check_tree_decoration(tri, set(list(tri.edges())[:2]))


def test_extract_tree_preserves_rotation():
    for pmap in enumerate_maps(3).maps():
        for tdm in _decorations(pmap):
            tree, to_ambient = extract_tree(pmap, tdm.tree_edges)
            assert tree.face_count == 1
            assert tree.edge_count == len(tdm.tree_edges)
            assert to_ambient[tree.root] == pmap.root


def test_glue_partial_properties():
    m1, m2 = 1, 1
    cat = enumerate_boundary_maps(q=4, f=2, perimeter=2 * (m1 + m2),
                                  simple=True)
    tree = contour_to_tree(DyckPath.from_word("UD"))
    seen = set()
    for pm in cat.maps():
        tdm = glue_partial(BoundaryMap(pm), tree)
        out = BoundaryMap(tdm.map)
        assert out.perimeter == 2 * m1
        assert out.is_simple()
        # the tree hangs at a single boundary vertex
        tree_verts = {tdm.map.vertex_of(d) for d in tdm.tree_darts()}
        assert len(tree_verts & set(out.boundary_vertices())) == 1
        image = tdm.map.canonical_relabelling()
        canon_tree = frozenset(min(image[e], image[tdm.map.alpha_of(e)])
                               for e in tdm.tree_edges)
        seen.add((tdm.map.canonical_code(), canon_tree))
    assert len(seen) == catalan(m2) * len(cat)


def test_glue_partial_full_tree_delegates():
    cat = enumerate_boundary_maps(q=4, f=1, perimeter=2, simple=True)
    tree = contour_to_tree(DyckPath.from_word("UD"))
    for pm in cat.maps():
        a = glue(BoundaryMap(pm), tree)
        b = glue_partial(BoundaryMap(pm), tree)
        assert a == b


def test_glue_forest_two_boundaries():
    # dumbbell host: two double edges joined by a bridge; the two digon
    # faces are vertex-disjoint simple boundaries of perimeter 2
    host = build_map([3, 4, 1, 5, 2, 9, 6, 10, 7, 8],
                     [2, 1, 4, 3, 6, 5, 8, 7, 10, 9], 1)
    mmap = MultiBoundaryMap(host, (1, 7))
    tree = contour_to_tree(DyckPath.from_word("UD"))
    fdm = glue_forest(mmap, (tree, tree))
    assert isinstance(fdm, ForestDecoratedMap)
    assert len(fdm.trees) == 2
    for edges in fdm.trees:
        check_tree_decoration(fdm.map, edges)
    line = forest_to_line(fdm)
    again = forest_from_line(line)
    assert again.map == fdm.map and again.trees == fdm.trees


def test_decorated_line_round_trip():
    tdm = TreeDecoratedMap(EDGE, frozenset({1}))
    again = decorated_from_line(decorated_to_line(tdm))
    assert again == tdm
    with pytest.raises(FormatError):
        decorated_from_line("map E=1 root=1 sigma=1,2 alpha=2,1")

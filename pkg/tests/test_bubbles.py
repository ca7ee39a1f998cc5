import pytest

from mapglue.bijection import glue
from mapglue.bubbles import (BubbleMap, Circuit, bubble_canonical_key,
                             bubble_from_text, bubble_rerooted,
                             bubble_to_text, circuit_to_contour,
                             detect_wicked, glue_bridgeless, unglue_bubble)
from mapglue.counting import count_bubble
from mapglue.enumeration import enumerate_maps
from mapglue.errors import (BoundaryHasBridge, CircuitMissesPinch,
                            FormatError, MalformedCircuit)
from mapglue.maps import BoundaryMap, build_map
from mapglue.trees import (DyckPath, contour_to_tree, enumerate_trees,
                           tree_to_contour)

# two loops at one vertex, rooted so the external face has degree 2
FIGURE_EIGHT = build_map([2, 3, 4, 1], [2, 1, 4, 3], 1)


def _bridgeless_inputs(max_edges):
    for e in range(1, max_edges + 1):
        for pm in enumerate_maps(e).maps():
            bm = BoundaryMap(pm)
            if bm.perimeter % 2 or not bm.is_bridgeless():
                continue
            for path in enumerate_trees(bm.perimeter // 2):
                yield pm, bm, path


def test_figure_eight_plus_ud():
    bm = BoundaryMap(FIGURE_EIGHT)
    assert bm.perimeter == 2 and bm.is_bridgeless() and not bm.is_simple()
    assert detect_wicked(bm, contour_to_tree(DyckPath.from_word("UD"))) == []
    bubble, circuit = glue_bridgeless(bm, contour_to_tree(
        DyckPath.from_word("UD")))
    assert len(bubble.spheres) == 1
    loop = bubble.spheres[0]
    assert loop.edge_count == 1 and loop.vertex_count == 1
    # the circuit walks the loop in both directions
    assert sorted(circuit.darts) == sorted(loop.darts())
    circuit.validate()
    assert circuit.is_non_crossing()


def test_simple_boundary_agrees_with_glue():
    for pm, bm, path in _bridgeless_inputs(3):
        if not bm.is_simple():
            continue
        tree = contour_to_tree(path)
        bubble, circuit = glue_bridgeless(bm, tree)
        tdm = glue(bm, tree)
        assert len(bubble.spheres) == 1
        assert bubble.spheres[0].canonical_code() == tdm.map.canonical_code()


def test_exhaustive_round_trip():
    smallest_wicked = None
    for pm, bm, path in _bridgeless_inputs(4):
        tree = contour_to_tree(path)
        bubble, circuit = glue_bridgeless(bm, tree)
        circuit.validate()
        assert len(circuit.darts) == bm.perimeter
        assert circuit.is_non_crossing()
        wicked = detect_wicked(bm, tree)
        assert (len(bubble.spheres) == 1) == (not wicked)
        if len(bubble.spheres) > 1 and smallest_wicked is None:
            smallest_wicked = pm.edge_count
        assert circuit_to_contour(circuit) == path
        tree2, bm2 = unglue_bubble(bubble, circuit)
        assert tree_to_contour(tree2) == path
        assert bm2.map.canonical_code() == pm.canonical_code()
    # the first pinched gluing needs four boundary edges
    assert smallest_wicked == 4


def test_wicked_instance_structure():
    for pm, bm, path in _bridgeless_inputs(4):
        tree = contour_to_tree(path)
        bubble, _ = glue_bridgeless(bm, tree)
        if len(bubble.spheres) == 1:
            continue
        # the pinch incidences form a tree over the spheres
        assert len(bubble.pinches) == len(bubble.spheres) - 1
        assert detect_wicked(bm, tree)


def test_outputs_in_bijection_with_inputs():
    # Distinct (boundary map, tree) pairs give distinct decorated bubbles.
    for m in (1, 2):
        for e in (2 * m, 2 * m + 1):
            if e > 5:
                continue
            pairs = 0
            keys = set()
            for pm in enumerate_maps(e).maps():
                bm = BoundaryMap(pm)
                if bm.perimeter != 2 * m or not bm.is_bridgeless():
                    continue
                for path in enumerate_trees(m):
                    bubble, circuit = glue_bridgeless(
                        bm, contour_to_tree(path))
                    keys.add(bubble_canonical_key(bubble, circuit))
                    pairs += 1
            assert len(keys) == pairs


def test_rooted_anywhere_cardinality():
    # rerooting the decorated bubbles at every dart and counting distinct
    # results reproduces the closed formula
    for e, m in ((0, 1), (1, 1), (0, 2)):
        keys = set()
        for pm in enumerate_maps(e + 2 * m).maps():
            bm = BoundaryMap(pm)
            if bm.perimeter != 2 * m or not bm.is_bridgeless():
                continue
            for path in enumerate_trees(m):
                bubble, circuit = glue_bridgeless(bm, contour_to_tree(path))
                for g in bubble.darts():
                    nb, mapping = bubble_rerooted(bubble, g)
                    nc = Circuit(nb, tuple(mapping[d] for d in circuit.darts))
                    keys.add(bubble_canonical_key(nb, nc, cyclic=True))
        assert len(keys) == count_bubble(e, m), (e, m)


def test_bridged_boundary_refused():
    bridge = BoundaryMap(build_map([1, 2], [2, 1], 1))
    tree = contour_to_tree(DyckPath.from_word("UD"))
    with pytest.raises(BoundaryHasBridge):
        glue_bridgeless(bridge, tree)
    with pytest.raises(BoundaryHasBridge):
        detect_wicked(bridge, tree)


def test_malformed_circuits():
    bubble, circuit = glue_bridgeless(
        BoundaryMap(FIGURE_EIGHT), contour_to_tree(DyckPath.from_word("UD")))
    with pytest.raises(MalformedCircuit):
        Circuit(bubble, circuit.darts[:1]).validate()  # odd length
    with pytest.raises(MalformedCircuit):
        Circuit(bubble, circuit.darts * 2).validate()  # edge visited 4 times
    with pytest.raises(MalformedCircuit):
        Circuit(bubble, (99, 100)).validate()
    # chain break: two darts whose head and tail vertices do not meet
    path2 = build_map([1, 3, 2, 4], [2, 1, 4, 3], 1)
    loop = build_map([2, 1], [2, 1], 1)
    two = BubbleMap((path2, loop), ((0, path2.vertex_of(1), 1, 1),))
    with pytest.raises(MalformedCircuit):
        Circuit(two, (1, 3)).validate()


def test_circuit_misses_pinch():
    path2 = build_map([1, 3, 2, 4], [2, 1, 4, 3], 1)  # A - B - C
    loop = build_map([2, 1], [2, 1], 1)
    far_end = path2.vertex_of(4)
    bubble = BubbleMap((path2, loop), ((0, far_end, 1, 1),))
    circuit = Circuit(bubble, (1, 2))  # walks edge A-B twice, never C
    circuit.validate()
    with pytest.raises(CircuitMissesPinch):
        unglue_bubble(bubble, circuit)


def test_root_edge_must_be_on_circuit():
    path2 = build_map([1, 3, 2, 4], [2, 1, 4, 3], 1)
    loop = build_map([2, 1], [2, 1], 1)
    far_end = path2.vertex_of(4)
    bubble = BubbleMap((path2, loop), ((0, far_end, 1, 1),))
    circuit = Circuit(bubble, (3, 4))  # covers the pinch, not the root edge
    circuit.validate()
    with pytest.raises(MalformedCircuit):
        unglue_bubble(bubble, circuit)


def test_serialization_round_trip():
    for pm, bm, path in _bridgeless_inputs(3):
        bubble, circuit = glue_bridgeless(bm, contour_to_tree(path))
        text = bubble_to_text(bubble, circuit)
        again, circ2 = bubble_from_text(text)
        assert again == bubble
        assert circ2.darts == circuit.darts


def test_serialization_errors():
    with pytest.raises(FormatError):
        bubble_from_text("not a bubble")
    with pytest.raises(FormatError):
        bubble_from_text("bubble spheres=2\nmap E=1 root=1 sigma=2,1 "
                         "alpha=2,1\n")

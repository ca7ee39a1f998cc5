"""Acceptance gate: ten end-to-end criteria, one pass/fail line each.

Each test prints ``criterion N (...): PASS`` or ``FAIL`` before asserting,
so a plain ``pytest -v -s tests/test_acceptance.py`` doubles as a report.
"""

import io
import contextlib

from mapglue.bijection import TreeDecoratedMap, glue, unglue
from mapglue.bubbles import (Circuit, bubble_canonical_key, bubble_rerooted,
                             circuit_to_contour, glue_bridgeless,
                             unglue_bubble)
from mapglue.cli import main
from mapglue.counting import (catalan_ext, count_bubble,
                              count_tree_decorated, count_spanning,
                              mullin_count, reroot_check, verify_integrality)
from mapglue.enumeration import (brute_count_decorated,
                                 enumerate_boundary_maps, enumerate_maps,
                                 tree_submaps)
from mapglue.maps import BoundaryMap
from mapglue.sampler import (SampleSpec, export_decorated,
                             sample_tree_decorated, tree_marginal_test)
from mapglue.series import TruncatedSeries2, series_B, series_S
from mapglue.trees import (catalan, contour_to_tree, enumerate_trees,
                           tree_to_contour)


def _report(n, name, ok):
    print(f"criterion {n} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {n} ({name}) failed"


def _grid(q):
    fmax = 4 if q == 3 else 3
    step = 2 if q == 3 else 1
    for f in range(step, fmax + 1, step):
        for m in range(1, (f // 2 + 1 if q == 3 else f + 1) + 1):
            yield f, m


def test_criterion_1_round_trip_bijection():
    failures = 0
    for e in range(1, 7):
        for pmap in enumerate_maps(e).maps():
            root_edge = pmap.edge_of(pmap.root)
            for m in range(1, pmap.vertex_count):
                for sub in tree_submaps(pmap, m):
                    if root_edge not in sub:
                        continue
                    tdm = TreeDecoratedMap(pmap, sub)
                    tree, bmap = unglue(tdm)
                    back = glue(bmap, tree)
                    if (back.map != tdm.map
                            or back.tree_edges != tdm.tree_edges):
                        failures += 1
    for m in range(1, 7):
        trees = [contour_to_tree(p) for p in enumerate_trees(m)]
        for e in range(m, 7):
            for pm in enumerate_boundary_maps(e=e, perimeter=2 * m,
                                              simple=True).maps():
                bmap = BoundaryMap(pm)
                for tree in trees:
                    tree2, bmap2 = unglue(glue(bmap, tree))
                    if (tree_to_contour(tree2) != tree_to_contour(tree)
                            or bmap2.map.canonical_code()
                            != pm.canonical_code()):
                        failures += 1
    _report(1, "round-trip bijection", failures == 0)


def test_criterion_2_counting_identity():
    ok = True
    for q in (3, 4):
        for f, m in _grid(q):
            brute = brute_count_decorated(q, f=f, tree_sizes=[m],
                                          root_mode="on-tree")
            cat = enumerate_boundary_maps(q=q, f=f, perimeter=2 * m,
                                          simple=True)
            ok &= brute == catalan(m) * len(cat)
    _report(2, "decorated = catalan x simple-boundary", ok)


def test_criterion_3_closed_formulas():
    ok = count_tree_decorated(3, 2, 1) == 9
    ok &= count_tree_decorated(4, 1, 1) == 4
    for q in (3, 4):
        for f, m in _grid(q):
            ok &= count_tree_decorated(q, f, m, "anywhere") == \
                brute_count_decorated(q, f=f, tree_sizes=[m],
                                      root_mode="anywhere")
    _report(3, "closed formulas vs oracle", ok)


def test_criterion_4_spanning_identities():
    ok = all(count_spanning(4, f, "on-tree") == catalan_ext(2, f)
             for f in range(1, 5))
    for e in range(1, 4):
        brute = 0
        for pm in enumerate_maps(e).maps():
            v = pm.vertex_count
            brute += 1 if v == 1 else len(tree_submaps(pm, v - 1))
        ok &= mullin_count(e) == brute
    # the known closed-form divergence must be surfaced by the CLI
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(["verify", "--suite", "counts"])
    text = out.getvalue()
    ok &= code == 0
    ok &= any(ln.startswith("flagged divergence: spanning triangulations")
              for ln in text.splitlines())
    _report(4, "spanning identities and flagged divergence", ok)


def test_criterion_5_series():
    printed = {(1, 1): 1, (2, 1): 2, (1, 2): 1, (3, 1): 9, (2, 2): 1,
               (4, 1): 54, (3, 2): 5, (5, 1): 378, (3, 3): 1}
    s = series_S(5, 3)
    ok = all(s.coeff(*k) == v for k, v in printed.items())
    b = series_B(8, 8)
    x = TruncatedSeries2.variable("x", 8, 8)
    y = TruncatedSeries2.variable("y", 8, 8)
    ok &= series_S(8, 8).substitute(x, y * b) == b
    s44 = series_S(4, 4)
    for e in range(1, 5):
        counts = {}
        for pm in enumerate_maps(e).maps():
            bm = BoundaryMap(pm)
            if bm.is_vertex_simple():
                counts[bm.perimeter] = counts.get(bm.perimeter, 0) + 1
        ok &= all(s44.coeff(e, p) == counts.get(p, 0) for p in range(1, 5))
    _report(5, "series coefficients and substitution identity", ok)


def test_criterion_6_general_decorated_counts():
    s = series_S(5, 10)
    ok = True
    for ge in range(1, 6):
        for m in range(1, ge + 1):
            if ge + m > 5:
                continue
            brute = 0
            for pm in enumerate_maps(ge).maps():
                root_edge = pm.edge_of(pm.root)
                brute += sum(1 for sub in tree_submaps(pm, m)
                             if root_edge in sub)
            ok &= brute == catalan(m) * int(s.coeff(ge + m, 2 * m))
    _report(6, "catalan(m) x s_(e+m,2m) identity", ok)


def test_criterion_7_bubble_bijection():
    failures = 0
    for e in range(1, 5):
        for pm in enumerate_maps(e).maps():
            bm = BoundaryMap(pm)
            if bm.perimeter % 2 or not bm.is_bridgeless():
                continue
            for path in enumerate_trees(bm.perimeter // 2):
                tree = contour_to_tree(path)
                bubble, circuit = glue_bridgeless(bm, tree)
                tree2, bm2 = unglue_bubble(bubble, circuit)
                if (circuit_to_contour(circuit) != path
                        or tree_to_contour(tree2) != path
                        or bm2.map.canonical_code() != pm.canonical_code()):
                    failures += 1
    ok = failures == 0
    for e, m in ((0, 1), (1, 1), (2, 1), (0, 2)):
        keys = set()
        for pm in enumerate_maps(e + 2 * m).maps():
            bm = BoundaryMap(pm)
            if bm.perimeter != 2 * m or not bm.is_bridgeless():
                continue
            for path in enumerate_trees(m):
                bubble, circuit = glue_bridgeless(bm, contour_to_tree(path))
                for g in bubble.darts():
                    nb, mapping = bubble_rerooted(bubble, g)
                    nc = Circuit(nb, tuple(mapping[d]
                                           for d in circuit.darts))
                    keys.add(bubble_canonical_key(nb, nc, cyclic=True))
        ok &= len(keys) == count_bubble(e, m)
    _report(7, "bubble bijection and counts", ok)


def test_criterion_8_rerooting_identity():
    ok = True
    for q in (3, 4):
        for f, m in _grid(q):
            ok &= reroot_check(q, f, [m])
    ok &= reroot_check(4, 2, [1, 1])
    ok &= reroot_check(4, 3, [1, 2])
    _report(8, "re-rooting identity", ok)


def test_criterion_9_integrality():
    ok = all(verify_integrality(m, n)
             for m in range(1, 7) for n in range(41))
    _report(9, "generalized catalan integrality", ok)


def test_criterion_10_sampler():
    ok = True
    for q, f, m in ((4, 1, 1), (3, 2, 1), (4, 2, 2)):
        spec = SampleSpec(q, f, m, seed=20260823, count=100000)
        draws = sample_tree_decorated(spec)
        support = {}
        for tdm in draws:
            key = export_decorated(tdm)
            support[key] = support.get(key, 0) + 1
        ok &= len(support) == count_tree_decorated(q, f, m, "on-tree")
        if len(support) > 1:
            from scipy.stats import chisquare
            _, pvalue = chisquare(list(support.values()))
            ok &= pvalue > 0.001
        report = tree_marginal_test(spec, draws=min(spec.count, 20000))
        ok &= report.passed
    spec = SampleSpec(4, 2, 2, seed=7, count=200)
    text_a = "".join(export_decorated(t) for t in sample_tree_decorated(spec))
    text_b = "".join(export_decorated(t) for t in sample_tree_decorated(spec))
    ok &= text_a == text_b
    _report(10, "sampler uniformity and determinism", ok)

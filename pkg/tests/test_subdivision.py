"""Certificates, cell enumeration, traversal, faces, and genericity verdicts."""

from fractions import Fraction

import pytest

from helpers import faces, metric, subdivision
from tightspan.errors import (
    NotSupported,
    PreconditionViolated,
    SeedInvalid,
    ThresholdExceeded,
)
from tightspan.graphs import EdgeGraph, cycle_graph, star_graph
from tightspan.metrics import gen_dmax, gen_dmin, gen_random, submetric
from tightspan.subdivision import (
    Cell,
    DegeneracyReport,
    NotACell,
    all_faces,
    boundary_tags,
    candidate_graphs,
    enumerate_cells,
    interleaved_cycle_graph,
    is_generic,
    lambda_certificate,
    restrict_to_facet,
    seed_cell,
    subdivision_to_json,
    traverse_cells,
)


def test_certificate_strict_cell():
    d = metric("4points")
    G = EdgeGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (2, 4)])
    cert = lambda_certificate(d, G)
    assert isinstance(cert, Cell)
    assert cert.heights == (Fraction(3, 2), Fraction(1, 2), Fraction(3, 2), Fraction(5, 2))


def test_certificate_violation_wins_over_equality():
    # heights (3/2,1/2,3/2,1/2) meet d on (1,4) but drop below d on (2,4):
    # a violated pair disqualifies the graph outright
    d = metric("4points")
    G = EdgeGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (3, 4)])
    cert = lambda_certificate(d, G)
    assert isinstance(cert, NotACell)
    assert cert.pair == (2, 4)
    assert cert.heights == (Fraction(3, 2), Fraction(1, 2), Fraction(3, 2), Fraction(1, 2))
    assert cert.heights[0] + cert.heights[3] == d.d(1, 4)  # the harmless equality


def test_certificate_not_a_cell():
    d = metric("4points")
    G = EdgeGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (1, 4)])
    cert = lambda_certificate(d, G)
    assert isinstance(cert, NotACell)
    assert cert.pair == (2, 4)


def test_certificate_degeneracy_needs_no_violation():
    from tightspan.metrics import validate_metric

    # unit metric: every candidate solves with heights 1/2 and meets d everywhere
    flat = validate_metric([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
    G = EdgeGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (2, 4)])
    cert = lambda_certificate(flat, G)
    assert isinstance(cert, DegeneracyReport)
    assert cert.pair == (1, 4)
    assert not enumerate_cells(flat).generic


def test_certificate_preconditions():
    d = metric("4points")
    with pytest.raises(PreconditionViolated):
        lambda_certificate(d, cycle_graph(4, [1, 2, 3, 4]))
    with pytest.raises(PreconditionViolated):
        lambda_certificate(d, star_graph(4, 1))


def test_enumerate_four_points():
    S = subdivision("4points")
    assert S.generic and len(S.maximal_cells) == 4
    expect = [
        [(1, 2), (1, 3), (1, 4), (2, 4)],
        [(1, 2), (1, 3), (2, 3), (2, 4)],
        [(1, 3), (1, 4), (2, 4), (3, 4)],
        [(1, 3), (2, 3), (2, 4), (3, 4)],
    ]
    assert [list(c.graph.edges()) for c in S.maximal_cells] == expect


def test_enumerate_dmax6():
    S = subdivision("dmax-6")
    assert len(S.maximal_cells) == 26
    assert all(c.volume == 1 for c in S.maximal_cells)


def test_enumerate_dmin6():
    S = subdivision("dmin-6")
    assert len(S.maximal_cells) == 25
    big = [c for c in S.maximal_cells if c.volume == 2]
    assert len(big) == 1
    assert big[0].graph.edges() == ((1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6))
    assert big[0].heights == (Fraction(1),) * 6


def test_enumerate_threshold():
    with pytest.raises(ThresholdExceeded):
        enumerate_cells(gen_dmax(9))


def test_enumerate_parallel_matches_serial():
    d = gen_dmax(5)
    assert enumerate_cells(d, jobs=2) == enumerate_cells(d)


def test_enumerate_parallel_matches_serial_degenerate():
    d = metric("ideal")
    assert enumerate_cells(d, jobs=2) == enumerate_cells(d)


def test_volume_identity_small():
    for name in ("4points", "dmax-4", "dmax-5", "dmax-6", "dmin-5", "dmin-6"):
        S = subdivision(name)
        assert S.total_volume == (1 << (S.n - 1)) - S.n


def test_ideal_metric_flagged_degenerate():
    S = enumerate_cells(metric("ideal"))
    assert not S.generic
    graph, pair = S.degeneracy_witness
    assert pair == (1, 1)  # a strict cell certificate with a vanishing height
    assert graph.edges() == ((1, 2), (1, 3), (1, 4), (2, 4))
    # the subdivision itself agrees with the equivalent metric
    assert S.cell_graphs() == subdivision("4points").cell_graphs()


def test_is_generic_verdicts():
    assert is_generic(metric("4points")).generic
    assert not is_generic(metric("ideal")).generic
    for n in (4, 5, 6, 7):
        assert is_generic(gen_dmax(n)).generic


def test_random_genericity_rate():
    flags = [is_generic(gen_random(6, seed)).generic for seed in range(1, 21)]
    assert sum(flags) >= 18
    assert not flags[14]  # seed 15 carries an engineered-looking coincidence


def test_seed_cell_interleaved():
    assert seed_cell(gen_dmax(9)).graph == interleaved_cycle_graph(9)
    assert seed_cell(gen_dmax(8)).graph == interleaved_cycle_graph(8)
    assert seed_cell(gen_dmax(5)).graph == interleaved_cycle_graph(5)
    # interleaved cycle for n = 9 is the alternating low-high cycle
    assert set(interleaved_cycle_graph(9).edges()) == {
        (1, 6), (2, 6), (2, 7), (3, 7), (3, 8), (4, 8), (4, 9), (5, 9), (1, 5),
    }
    assert set(interleaved_cycle_graph(8).edges()) == {
        (1, 6), (2, 6), (2, 7), (3, 7), (3, 8), (4, 8), (1, 4), (1, 5),
    }


def test_seed_cell_probes_without_monotone_property():
    cert = seed_cell(gen_dmin(6))
    assert isinstance(cert, Cell)


@pytest.mark.parametrize(
    "name", ["4points", "dmax-5", "dmax-6", "dmin-5", "dmin-6", "rand-6.2"]
)
def test_traverse_equals_enumerate(name):
    d = metric(name)
    T = traverse_cells(d, seed_cell(d))
    E = subdivision(name)
    assert T.maximal_cells == E.maximal_cells


def test_traverse_rejects_bad_seed():
    d = gen_dmax(4)
    bad = Cell(cycle_graph(4, [1, 2, 3, 4]), (Fraction(0),) * 4)
    with pytest.raises(SeedInvalid):
        traverse_cells(d, bad)
    not_a_cell = EdgeGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (1, 4)])
    with pytest.raises(SeedInvalid):
        traverse_cells(d, Cell(not_a_cell, (Fraction(0),) * 4))


def test_traverse_detects_ridge_tie_on_flat_metric():
    # a weight-2 four-cycle zeroes an alternating distance sum, so the
    # subdivision has a flat cell; pivoting out of a strict one must tie
    from tightspan.errors import DegenerateRidge
    from tightspan.metrics import gen_dgamma

    d = gen_dgamma(5, EdgeGraph.from_edges(5, [(1, 2), (1, 3), (2, 4), (3, 4)]))
    S = enumerate_cells(d)
    assert not S.generic and S.maximal_cells
    witness_graph, witness_pair = S.degeneracy_witness
    assert witness_pair == (3, 4)
    with pytest.raises(DegenerateRidge):
        traverse_cells(d, S.maximal_cells[0])


def test_traverse_volume_identity_n8():
    for gen in (gen_dmax, gen_dmin):
        d = gen(8)
        T = traverse_cells(d, seed_cell(d))
        assert T.total_volume == (1 << 7) - 8


def test_all_faces_four_points():
    F = faces("4points")
    assert F.face_counts() == (6, 13, 12, 4)
    assert F.interior_counts() == (0, 1, 4, 4)
    (pm,) = F.interior_by_dim[1]
    assert EdgeGraph(4, pm).edges() == ((1, 3), (2, 4))


def test_faces_closed_under_subgraphs():
    F = faces("dmax-5")
    for k in range(1, len(F.by_dim)):
        below = set(F.by_dim[k - 1])
        for mask in F.by_dim[k]:
            bits = mask
            while bits:
                low = bits & -bits
                assert mask ^ low in below
                bits ^= low


def test_boundary_tags():
    F = faces("4points")
    n = F.n
    # a single edge misses two nodes and lies inside two stars
    single = EdgeGraph.from_edges(4, [(1, 3)])
    missed, centers = boundary_tags(4, single.bits)
    assert missed == (2, 4) and centers == (1, 3)
    full_star = star_graph(4, 2)
    missed, centers = boundary_tags(4, full_star.bits)
    assert missed == () and centers == (2,)


def test_ridge_incidences():
    # interior ridges lie in exactly two cells, boundary ridges in one
    for name in ("4points", "dmax-5"):
        S = subdivision(name)
        F = faces(name)
        n = S.n
        from tightspan.subdivision import _is_interior_ridge

        counts = {}
        for cell in S.maximal_cells:
            mask = cell.graph.bits
            bits = mask
            while bits:
                low = bits & -bits
                counts[mask ^ low] = counts.get(mask ^ low, 0) + 1
                bits ^= low
        for rmask, c in counts.items():
            if _is_interior_ridge(n, rmask):
                assert c == 2
            else:
                assert c == 1


@pytest.mark.parametrize("i", [1, 3, 6])
def test_restriction_matches_submetric(i):
    S = subdivision("dmax-6")
    R = restrict_to_facet(S, i)
    d_sub = submetric(metric("dmax-6"), [v for v in range(1, 7) if v != i])
    assert R.cell_graphs() == enumerate_cells(d_sub).cell_graphs()


def test_restriction_matches_submetric_n7():
    S = subdivision("dmax-7")
    R = restrict_to_facet(S, 4)
    d_sub = submetric(metric("dmax-7"), [1, 2, 3, 5, 6, 7])
    assert R.cell_graphs() == enumerate_cells(d_sub).cell_graphs()


def test_restriction_f_vector_uniform():
    from tightspan.facevectors import induced_face_counts

    for name in ("dmax-5", "dmax-6", "dmax-7"):
        F = faces(name)
        n = F.n
        fvs = {
            induced_face_counts(F, [v for v in range(1, n + 1) if v != i]).counts
            for i in range(1, n + 1)
        }
        assert len(fvs) == 1


def test_restriction_too_small():
    with pytest.raises(NotSupported):
        restrict_to_facet(subdivision("4points"), 1)


def test_dimension_window():
    # minimal interior dimension keeps the dual complex inside the proven window
    for name in ("4points", "dmax-5", "dmax-6", "dmin-5", "dmin-6", "rand-5.1", "rand-6.1"):
        F = faces(name)
        n = F.n
        min_dim = next(k for k, c in enumerate(F.interior_counts()) if c)
        dim_t = n - 1 - min_dim
        assert -(-n // 3) <= dim_t <= n // 2


def test_export_json_is_canonical():
    import json

    S = subdivision("4points")
    payload = json.loads(subdivision_to_json(S))
    assert payload["n"] == 4 and payload["generic"] is True
    assert len(payload["cells"]) == 4
    assert payload["cells"][1]["lambda"] == ["3/2", "1/2", "3/2", "5/2"]
    assert subdivision_to_json(S) == subdivision_to_json(enumerate_cells(metric("4points")))


def test_candidate_pool_sizes():
    assert len(candidate_graphs(4)) == 12
    assert len(candidate_graphs(5)) == 162
    assert len(candidate_graphs(6)) == 2530


def test_interior_tags_match_predicate():
    from tightspan.graphs import is_interior_graph

    F = faces("dmax-5")
    for k, level in enumerate(F.by_dim):
        for mask in level:
            G = EdgeGraph(F.n, mask)
            assert is_interior_graph(G) == (mask in F.interior_by_dim[k])


def test_is_generic_traversal_detects_corner_tangency():
    # shifting one node until its tightest triangle closes keeps the subdivision
    # but degenerates the corner simplex; the traversal route must notice
    from tightspan.metrics import IsolatedDistance, shift_by_isolated, validate_metric

    d = gen_dmax(9)
    v = min(
        d.d(1, j) + d.d(1, k) - d.d(j, k)
        for j in range(2, 10)
        for k in range(j + 1, 10)
    )
    shifted = validate_metric(shift_by_isolated(d, [IsolatedDistance(1, -v / 2)]))
    assert shifted.satisfies_triangle
    verdict = is_generic(shifted)
    assert not verdict.generic and verdict.witness[1] == (1, 1)
    assert verdict.subdivision.cell_graphs() == is_generic(d).subdivision.cell_graphs()


def test_certificate_agrees_with_lp_sampled_n7():
    import random as _random

    from tightspan.matching import is_cell_lp

    d = gen_dmax(7)
    cells = {c.graph.bits for c in subdivision("dmax-7").maximal_cells}
    rng = _random.Random(11)
    pool = candidate_graphs(7)
    for mask in rng.sample(pool, 200):
        G = EdgeGraph(7, mask)
        by_cert = isinstance(lambda_certificate(d, G), Cell)
        assert by_cert == is_cell_lp(d, G) == (mask in cells)

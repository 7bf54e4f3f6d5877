"""Acceptance criteria: one test per criterion, each printing a pass/fail line.

Everything asserts exact equality; run with -s (or rely on the summary) to
see the per-criterion lines.  Expected total runtime is a few minutes on a
desktop machine.
"""

import time
from fractions import Fraction

import pytest

from helpers import faces, metric, subdivision, tsv
from tightspan.bounds import (
    F_bound,
    f_bound_or_zero,
    identity_checks,
    lower_bound_top,
)
from tightspan.errors import InapplicablePremise
from tightspan.facevectors import (
    FVector,
    check_asff,
    check_ball_relations,
    check_dehn_sommerville,
    check_inductive_step,
    h_from_f,
    split_interior_boundary,
    tightspan_vectors,
)
from tightspan.graphs import EdgeGraph, components
from tightspan.matching import b11_classify, is_cell_lp, is_cell_oddpath
from tightspan.metrics import gen_dmax, gen_dmin
from tightspan.primal import OrientationSpec, bounded_faces, crosscheck, h_by_outdegree
from tightspan.subdivision import (
    Cell,
    candidate_graphs,
    enumerate_cells,
    interleaved_cycle_graph,
    is_generic,
    lambda_certificate,
    random_generic_metrics,
    seed_cell,
    traverse_cells,
)

NAMED_FIXTURES = ("4points", "dmax-4", "dmax-5", "dmax-6", "dmax-7",
                  "dmin-5", "dmin-6", "dmin-7")


def _criterion(number, label):
    """Print one pass/fail line per criterion, then re-raise on failure."""

    class _Reporter:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            verdict = "PASS" if exc_type is None else "FAIL"
            print(f"criterion {number:2d} ({label}): {verdict}")
            return False

    return _Reporter()


def test_criterion_01_four_point_example():
    with _criterion(1, "four-point example reproduction"):
        S = subdivision("4points")
        assert len(S.maximal_cells) == 4
        f_total, f_bd, f_int = split_interior_boundary(faces("4points"))
        assert f_total.counts == (6, 13, 12, 4)
        assert f_bd.counts == (6, 12, 8)
        assert f_int.counts == (0, 1, 4, 4)
        assert h_from_f(f_total) == (1, 2, 1, 0, 0)
        assert h_from_f(f_bd) == (1, 3, 3, 1)
        assert h_from_f(f_int) == (0, 0, 1, 2, 1)
        assert tsv("4points").fT == (8, 8, 1)
        report = crosscheck(metric("4points"))
        assert report.ok and report.f_primal == (8, 8, 1)


def test_criterion_02_dmax_attainment():
    with _criterion(2, "dmax attains every upper bound"):
        assert tsv("dmax-5").fT == (16, 20, 5)
        assert tsv("dmax-6").fT == (32, 48, 18, 1)
        from math import comb

        for n in (4, 5, 6, 7):
            hT = tsv(f"dmax-{n}").hT
            assert hT == tuple(comb(n, 2 * i) for i in range(n // 2 + 1))
        start = time.monotonic()
        S7 = enumerate_cells(gen_dmax(7))
        tv7 = tightspan_vectors(gen_dmax(7), S7)
        elapsed = time.monotonic() - start
        assert tv7.fT == (64, 112, 56, 7)
        assert tv7.fT == tuple(F_bound(7, k) for k in range(4))
        assert elapsed < 60.0


def test_criterion_03_dmin_attainment():
    with _criterion(3, "dmin attains the top-dimension lower bound"):
        assert tsv("dmin-5").fT == (16, 20, 5)
        assert tsv("dmin-6").fT == (31, 45, 15)
        for n in (5, 6, 7):
            tv = tsv(f"dmin-{n}")
            assert tv.dim == -(-n // 3)
            assert tv.fT[tv.dim] == lower_bound_top(n)


def test_criterion_04_volume_identity():
    with _criterion(4, "covering volume identity"):
        for n in (4, 5, 6, 7):
            for kind in ("dmax", "dmin"):
                if kind == "dmin" and n == 4:
                    S = enumerate_cells(gen_dmin(4))
                else:
                    S = subdivision(f"{kind}-{n}")
                assert S.total_volume == (1 << (n - 1)) - n
        for gen in (gen_dmax, gen_dmin):
            d = gen(8)
            T = traverse_cells(d, seed_cell(d))
            assert T.total_volume == (1 << 7) - 8
        for n in (5, 6):
            for seed, d in random_generic_metrics(n, 20):
                assert enumerate_cells(d).total_volume == (1 << (n - 1)) - n


def test_criterion_05_theorem_checks():
    with _criterion(5, "sphere/ball/asff/inductive identities"):
        random_names = tuple(f"rand-5.{s}" for s in range(1, 6)) + tuple(
            f"rand-6.{s}" for s in (1, 2, 3)
        )
        for name in NAMED_FIXTURES + random_names:
            F = faces(name)
            _, f_bd, _ = split_interior_boundary(F)
            assert check_dehn_sommerville(f_bd)
            assert check_ball_relations(F)
            rep = check_asff(F)
            assert rep.ok
        for n in (4, 5, 6, 7):
            rep = check_asff(faces(f"dmax-{n}"))
            assert rep.top_interior_count == rep.top_interior_cap  # dmax is tight
        for n in (5, 6, 7):
            assert check_inductive_step(
                metric(f"dmax-{n}"), subdivision(f"dmax-{n}"), faces(f"dmax-{n}")
            )


def test_criterion_06_cell_lemmas():
    with _criterion(6, "cycle cells and matching support shapes"):
        for n in (5, 6, 7, 8, 9):
            cert = lambda_certificate(gen_dmax(n), interleaved_cycle_graph(n))
            assert isinstance(cert, Cell)
        for n in (5, 6, 7):
            for gen in (gen_dmax, gen_dmin):
                for b in (1, 2, 3):
                    rep = b11_classify(gen(n), b)
                    expected = b if rep.node_one_kind == "star" else b - 1
                    assert rep.node_one_extra_edges == expected
        for seed, d in random_generic_metrics(6, 20):
            for b in (1, 2, 3):
                b11_classify(d, b)  # raises StructureViolation on any bad shape


def test_criterion_07_oracle_equivalence():
    with _criterion(7, "primal oracle agrees with the dual pipeline"):
        for name in ("4points", "dmax-4", "dmax-5", "dmax-6", "dmin-5", "dmin-6"):
            assert crosscheck(metric(name)).ok
        for seed, d in random_generic_metrics(5, 20):
            assert crosscheck(d).ok
        d = metric("dmax-5")
        poset = bounded_faces(d)
        specs = [
            OrientationSpec.ones(5),
            OrientationSpec(tuple(Fraction(k) for k in (2, 3, 5, 7, 11))),
            OrientationSpec(tuple(Fraction(k, 13) for k in (17, 4, 9, 25, 6))),
        ]
        assert len({h_by_outdegree(d, s, poset) for s in specs}) == 1


def test_criterion_08_identities_and_recursions():
    with _criterion(8, "binomial identities and bound recursion"):
        assert identity_checks(12)
        for n in range(4, 17):
            for k in range(1, n // 2 + 1):
                assert f_bound_or_zero(n, k) == 2 * f_bound_or_zero(
                    n - 1, k
                ) + f_bound_or_zero(n - 2, k - 1)
        from math import comb

        for n in range(4, 17):
            for k in range(n // 2 + 1):
                assert F_bound(n, k) == sum(
                    comb(i, k) * comb(n, 2 * i) for i in range(k, n // 2 + 1)
                )
            assert F_bound(n, 0) == 1 << (n - 1)


def test_criterion_09_method_agreement():
    with _criterion(9, "independent cell tests agree"):
        for n in (4, 5, 6):
            d = gen_dmax(n)
            S = set(g.bits for g in subdivision(f"dmax-{n}").cell_graphs())
            for mask in candidate_graphs(n):
                G = EdgeGraph(n, mask)
                by_cert = isinstance(lambda_certificate(d, G), Cell)
                by_lp = is_cell_lp(d, G)
                assert by_cert == by_lp == (mask in S)
                if len(components(G).components) == 1:
                    assert by_lp == is_cell_oddpath(d, G)
        for name in NAMED_FIXTURES + ("rand-5.1", "rand-6.2"):
            d = metric(name)
            assert traverse_cells(d, seed_cell(d)).maximal_cells == subdivision(
                name
            ).maximal_cells


def test_criterion_10_negative_controls():
    with _criterion(10, "degeneracies and broken inputs are caught"):
        verdict = is_generic(metric("ideal"))
        assert not verdict.generic
        graph, pair = verdict.witness
        assert pair == (1, 1) and graph.edge_count == 4
        assert not check_dehn_sommerville(FVector((6, 12, 7)))
        assert not check_dehn_sommerville(FVector((6, 13, 8)))
        with pytest.raises(InapplicablePremise):
            check_inductive_step(metric("rand-7.1"))

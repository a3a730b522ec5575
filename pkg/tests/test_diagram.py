"""Builders, diagram invariants, and single-crossing resolution."""

import pytest

from skeincalc.diagram import (
    Annulus,
    Crossing,
    Disk,
    MarkedAnnulus,
    build_core_stack,
    build_d1_xy,
    build_kink,
    build_theta_over_cores,
    build_xk_yn,
    build_zkn,
    disk_surface,
    make_edge,
    resolve_crossing,
    smoothing_pairs,
)
from skeincalc.skein import classify_components


def all_builders():
    yield build_core_stack(0)
    yield build_core_stack(3)
    yield build_theta_over_cores(0)
    yield build_theta_over_cores(2)
    yield build_xk_yn(2, 3)
    yield build_zkn(2, 3)
    yield build_d1_xy()
    yield build_kink(1)
    yield build_kink(-1)


class TestBuilders:
    def test_core_stack(self):
        d = build_core_stack(3)
        assert isinstance(d.surface, Annulus)
        assert d.crossing_count == 0 and not d.edges
        assert d.loops == (1, 1, 1)
        assert build_core_stack(0).loops == ()

    def test_theta_over_cores_counts(self):
        for k in range(4):
            d = build_theta_over_cores(k)
            assert isinstance(d.surface, MarkedAnnulus)
            assert d.crossing_count == k
            assert d.slot_count("p1") == 1 and d.slot_count("p2") == 1

    def test_xk_yn_crossing_count(self):
        for k in range(1, 4):
            for n in range(1, 5):
                assert build_xk_yn(k, n).crossing_count == k * n

    def test_xk_yn_surface_layout(self):
        d = build_xk_yn(2, 5)
        assert d.surface == disk_surface(5)
        assert d.surface.points == (
            "p0", "p1", "p2", "p3", "p4", "p5", "p6", "q5", "q4", "q3", "q2", "q1",
        )
        assert d.slot_count("p0") == 2 and d.slot_count("p6") == 2
        assert d.slot_count("p3") == 1 and d.slot_count("q2") == 1

    def test_xk_yn_rejects_zero(self):
        with pytest.raises(ValueError):
            build_xk_yn(0, 1)
        with pytest.raises(ValueError):
            build_xk_yn(1, 0)

    def test_zkn_rejects_k_above_n(self):
        with pytest.raises(ValueError):
            build_zkn(3, 2)

    def test_d1(self):
        d = build_d1_xy()
        assert d.surface.points == ("p0", "p1", "p2", "q1")
        assert d.crossing_count == 1
        assert len(d.edges) == 4

    def test_kink(self):
        for s in (1, -1):
            d = build_kink(s)
            assert d.surface == Disk()
            assert d.crossing_count == 1
            assert len(d.edges) == 2
        with pytest.raises(ValueError):
            build_kink(0)

    def test_all_builders_validate(self):
        for d in all_builders():
            d.validate()


class TestResolveCrossing:
    def test_decreases_count_and_validates(self):
        d = build_xk_yn(2, 2)
        for cid in [c.id for c in d.crossings]:
            before = d.crossing_count
            d = resolve_crossing(d, cid, -1)
            assert d.crossing_count == before - 1
            d.validate()
        assert d.crossing_count == 0

    def test_unknown_id(self):
        with pytest.raises(ValueError):
            resolve_crossing(build_kink(1), "nope", 1)

    def test_kink_positive_smoothing_two_loops(self):
        d = resolve_crossing(build_kink(1), "k0", +1)
        assert d.crossing_count == 0
        assert classify_components(d).loops == (0, 0)

    def test_kink_negative_smoothing_one_loop(self):
        d = resolve_crossing(build_kink(1), "k0", -1)
        assert classify_components(d).loops == (0,)

    def test_theta_positive_gives_winding_one(self):
        # The chirality calibration case: one positive smoothing of the
        # arc-over-core crossing leaves the arc winding +1.
        d = resolve_crossing(build_theta_over_cores(1), "c01", +1)
        comps = classify_components(d)
        assert comps.loops == ()
        (arc,) = comps.arcs
        assert (arc.a_point, arc.b_point, arc.winding) == ("p1", "p2", 1)

    def test_theta_negative_gives_winding_minus_one(self):
        d = resolve_crossing(build_theta_over_cores(1), "c01", -1)
        (arc,) = classify_components(d).arcs
        assert arc.winding == -1

    def test_zkn_equals_negative_fold(self):
        for k, n in [(1, 1), (1, 2), (2, 2), (2, 3)]:
            d = build_xk_yn(k, n)
            for cid in [c.id for c in d.crossings]:
                d = resolve_crossing(d, cid, -1)
            assert d == build_zkn(k, n)


def expected_staircase_chords(k: int, n: int):
    """Closed form for the all-negative state of the k-by-n grid, derived
    by tracing the staircase paths by hand: every vertical start turns
    east then climbs, every horizontal start climbs then turns east."""
    chords = []
    for j in range(1, k + 1):
        chords.append(("p0", j - 1, f"q{j}", 0))
    for m in range(1, n - k + 1):
        chords.append((f"p{m}", 0, f"q{m + k}", 0))
    for m in range(n - k + 1, n + 1):
        chords.append((f"p{m}", 0, f"p{n + 1}", k - (n - m + 1)))
    return chords


class TestZknStaircaseOracle:
    def test_matches_closed_form(self):
        from skeincalc.skein import normal_form

        for n in range(1, 5):
            for k in range(1, n + 1):
                nf = normal_form(build_zkn(k, n))
                ((elem, coeff),) = nf.items()
                assert coeff == 1
                order = {p: i for i, p in enumerate(elem.points)}
                expected = sorted(
                    expected_staircase_chords(k, n),
                    key=lambda c: (order[c[0]], c[1], order[c[2]], c[3]),
                )
                assert list(elem.chords) == expected, (k, n)


class TestPrimitives:
    def test_smoothing_pairs(self):
        assert smoothing_pairs((0, 2), +1) == ((0, 1), (2, 3))
        assert smoothing_pairs((0, 2), -1) == ((0, 3), (2, 1))
        assert smoothing_pairs((1, 3), +1) == ((1, 2), (3, 0))
        assert smoothing_pairs((1, 3), -1) == ((1, 0), (3, 2))

    def test_make_edge_normalizes(self):
        a = ("B", "p1", 0)
        b = ("X", "c01", 2)
        assert make_edge(b, a, 5) == make_edge(a, b, -5)

    def test_crossing_over_validation(self):
        with pytest.raises(ValueError):
            Crossing("x", (0, 1))

    def test_validate_catches_dangling_port(self):
        d = build_kink(1)
        broken = type(d)(
            surface=d.surface,
            crossings=d.crossings,
            edges=frozenset(list(d.edges)[:1]),
            loops=d.loops,
            slots=d.slots,
        )
        with pytest.raises(ValueError):
            broken.validate()


class TestSerialization:
    def test_json_shape(self):
        d = build_theta_over_cores(1)
        data = d.to_json_dict()
        assert data["surface"] == {"kind": "marked_annulus"}
        assert data["crossings"] == [{"id": "c01", "over": [0, 2]}]
        assert data["endpoints"] == {"p1": 1, "p2": 1}
        assert sorted(e["seam"] for e in data["edges"]) == [0, 0, 1]

    def test_json_deterministic(self):
        import json

        d = build_xk_yn(2, 2)
        assert json.dumps(d.to_json_dict()) == json.dumps(d.to_json_dict())

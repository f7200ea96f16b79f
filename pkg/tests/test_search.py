"""Polyhedral synthesis: enumeration, target matching, deduplication."""

import numpy as np
import pytest

from togglekit import catalog, profiles as pf, rotcore as rc, search as se, seqmodel as sm, toggling as tg

CYC = rc.from_axis_angle(np.array([1.0, 1.0, 1.0]) / np.sqrt(3), 2 * np.pi / 3)
PI0 = rc.from_axis_angle(rc.E_X, np.pi)


def test_axis_sets_are_unit_and_distinct():
    for build in se.BUILTIN_AXIS_SETS.values():
        s = build()
        assert np.allclose(np.linalg.norm(s.vertices, axis=1), 1.0)
    with pytest.raises(ValueError):
        se.AxisSet("dup", np.array([[1, 0, 0], [1, 0, 0.0]]))


def test_search_spec_validation():
    with pytest.raises(ValueError):
        se.SearchSpec(se.tetrahedron(), 0, 3, PI0)
    with pytest.raises(ValueError):
        se.SearchSpec(se.tetrahedron(), 4, 3, PI0, balance_mode="bogus")
    with pytest.raises(ValueError):
        se.SearchSpec(se.tetrahedron(), 4, 3, "bogus_target")


def test_combinatoric_guard():
    big = se.AxisSet("big", np.eye(3))
    with pytest.raises(ValueError):
        se.enumerate_balanced(se.SearchSpec(big, 20, 3, PI0))


def test_tetrahedron_search_finds_p34():
    res = se.enumerate_balanced(se.SearchSpec(se.tetrahedron(), 4, 3, CYC))
    assert any(sm.sequences_equal(s, catalog.p34()) for s in res)


def test_diagonal_quad_search_finds_i34():
    res = se.enumerate_balanced(se.SearchSpec(se.diagonal_quad(), 4, 3, PI0))
    assert any(sm.sequences_equal(s, catalog.i34()) for s in res)


def test_octahedron_search_finds_derome():
    res = se.enumerate_balanced(se.SearchSpec(se.octahedron(), 6, 4, "equatorial_pi"))
    assert any(sm.sequences_equal(s, catalog.derome()) for s in res)


def test_axis_cycling_search_finds_p46_variants():
    res = se.nonequatorial_search(se.SearchSpec(se.octahedron(), 6, 4, "axis_cycling"))
    assert any(sm.sequences_equal(s, catalog.p46()) for s in res)
    assert any(sm.sequences_equal(s, catalog.p46_prime()) for s in res)


def test_nonequatorial_search_needs_axis_cycling_target():
    with pytest.raises(ValueError):
        se.nonequatorial_search(se.SearchSpec(se.octahedron(), 6, 4, "equatorial_pi"))


def test_results_satisfy_contract():
    # balance of the toggled axes, net within tolerance, and compensation:
    # smaller error at 1.1x nominal than a bare rotation with the same target
    res = se.enumerate_balanced(se.SearchSpec(se.tetrahedron(), 4, 3, CYC))
    beta = 2 * np.pi / 3
    single = sm.sequence_from_axes("one", beta, np.array([[1, 1, 1]]) / np.sqrt(3))
    bare = pf.rotation_error(single, 1.1 * beta, CYC)
    for s in res:
        toggled = tg.toggling_map(s).axes
        assert np.linalg.norm(toggled.mean(axis=0)) < 1e-9
        assert rc.rotation_angle_between(sm.net_propagator(s), CYC) < 1e-8
        assert pf.rotation_error(s, 1.1 * beta, CYC) < bare


def test_exhaustive_spot_check():
    # a z-rotated copy of a known solution's toggled tuple must be found
    res = se.enumerate_balanced(se.SearchSpec(se.diagonal_quad(), 4, 3, PI0))
    known = catalog.i34()
    perms = {tuple(np.round(tg.toggling_map(s).axes, 6).flatten()) for s in res}
    assert tuple(np.round(tg.toggling_map(known).axes, 6).flatten()) in perms


def test_z_only_balance_mode_is_weaker():
    full = se.enumerate_balanced(se.SearchSpec(se.octahedron(), 4, 4, "equatorial_pi"))
    zonly = se.enumerate_balanced(
        se.SearchSpec(se.octahedron(), 4, 4, "equatorial_pi", balance_mode="z_only"))
    assert len(zonly) >= len(full)


def test_dedupe_global_z_merges_rotated_copies():
    s = catalog.derome()
    rotated = sm.global_phase_shift(s, 1.234)
    out = se.dedupe([s, rotated, s], "global_z")
    assert len(out) == 1
    assert se.dedupe([], "global_z") == []


def test_dedupe_none_keeps_distinct():
    s = catalog.derome()
    rotated = sm.global_phase_shift(s, 1.234)
    assert len(se.dedupe([s, rotated], "none")) == 2


def test_dedupe_axis_set_rotations_merges_mirror():
    s = catalog.derome()
    mirrored = s.with_axes(s.axes * np.array([1.0, -1.0, 1.0]))
    assert len(se.dedupe([s, mirrored], "axis_set_rotations")) == 1
    assert len(se.dedupe([s, mirrored], "global_z")) == 2


def test_dedupe_unknown_symmetry():
    with pytest.raises(ValueError):
        se.dedupe([], "bogus")


def test_octahedral_group_size():
    assert len(se._OCTAHEDRAL) == 24
    tet_group = se._set_rotations(se.tetrahedron())
    assert len(tet_group) == 12


def test_worker_count_does_not_change_results(monkeypatch):
    spec = se.SearchSpec(se.tetrahedron(), 4, 3, CYC)
    monkeypatch.setenv("TOGGLEKIT_THREADS", "1")
    serial = se.enumerate_balanced(spec, chunk=16)
    monkeypatch.setenv("TOGGLEKIT_THREADS", "4")
    threaded = se.enumerate_balanced(spec, chunk=16)
    assert len(serial) == len(threaded)
    assert all(sm.sequences_equal(a, b) for a, b in zip(serial, threaded))

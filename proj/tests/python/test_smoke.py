import math

import pytest

import causticlab as cl


def test_airy_at_origin():
    assert abs(cl.airy_ai(0) - 0.355028053887817239) < 1e-15


def test_canonical_normalized_at_origin():
    a = cl.CanonicalArgs(0, 0)
    assert abs(cl.hypumb_series(a) - 1) < 1e-12
    assert abs(cl.hypumb_quadrature(a) - 1) < 1e-8


def test_pe_field_matches_aperture():
    p = cl.BeamParams.from_tilde(1e4, 1e-3)
    r = cl.Point3(-0.3, 0.2, 0.0)
    assert abs(cl.pe_field(r, p) - cl.aperture_field(r.x, r.y, p)) < 1e-14


def test_four_rays():
    p = cl.BeamParams.from_tilde(1e4)
    rays = cl.find_rays_to(cl.from_tilde(p, 0.005, 0.0, 0.17), p)
    assert [r["M"] for r in rays] == [2, 1, 1, 0]


def test_frame_beyond_termination():
    p = cl.BeamParams.from_tilde(1e4)
    with pytest.raises(cl.Error):
        cl.frame_for_range(0.9, p)


def test_field_scan():
    s = cl.field_scan({"nu": "5", "u_min": "-2", "u_max": "2"})
    assert len(s) == 10
    assert all(x["intensity"] >= 0 for x in s)


def test_fresnel():
    assert math.isclose(cl.fresnel_kz0(cl.BeamParams.from_tilde(1.0)), 2 ** (1 / 3))

import pytest

import uwidth


def test_generate_and_text_round_trip():
    c = uwidth.generate("annulus", {"L": 4, "H": 3})
    assert c.num_vertices > 0
    assert c.euler_characteristic == 0
    again = uwidth.from_text(c.to_text())
    assert again.num_triangles == c.num_triangles


def test_sweep_report():
    c = uwidth.generate("annulus", {"L": 4, "H": 3})
    r = uwidth.width(c, "sweep", h=0.5)
    assert r["method"] == "sweep"
    assert r["width"] > 0
    assert "wall_seconds" not in r
    assert r == uwidth.width(c, "sweep", h=0.5)


def test_transfer_on_z3():
    c = uwidth.generate("presentation_complex", {"n": 3})
    r = uwidth.transfer(c, trunc=40, h=0.5)
    assert r["verified"]
    assert r["detail"]["factor"] == 3
    assert r["width"] <= r["bound"]


def test_surface_pipeline():
    c = uwidth.generate("annulus", {"L": 4, "H": 3})
    r = uwidth.surface(c)
    assert r["verified"]
    assert r["width"] <= r["bound"]


def test_errors_carry_codes():
    with pytest.raises(uwidth.UwidthError) as e:
        uwidth.surface(uwidth.generate("flat_torus", {"L": 4}))
    assert "UnsupportedTopology" in str(e.value)
    with pytest.raises(ValueError):
        uwidth.width(uwidth.generate("triangle"), "nonsense")

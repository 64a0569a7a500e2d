import math

import pytest

import isokin

HALF_SQUARE = [(0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5), (0.5, -0.5)]
SQUARE_MODEL = [(1, 1), (-1, 1), (-1, -1), (1, -1)]


def test_square_model_matrix():
    k = isokin.model_matrix(SQUARE_MODEL)
    assert k == [[1, 1, 1, 1], [-1, -1, 1, 1], [1, -1, -1, 1]]
    assert isokin.condition_number_spectral(k) == pytest.approx(1.0, abs=1e-12)


def test_polygon_is_isotropic():
    pts = isokin.regular_polygon(5, radius=2.0, phase=0.3, center=(1, -1))
    report = isokin.check_isotropic_set(pts)
    assert report["is_isotropic"]
    assert report["sigma_squared"] == pytest.approx(10.0)


def test_union_rotation_reflection():
    tri = isokin.regular_polygon(3, unit="length")
    star = isokin.union_sets(tri, isokin.rotate_set(tri, math.pi / 3))
    assert len(star) == 6
    assert isokin.check_isotropic_set(isokin.reflect_set(star, 0.4))["is_isotropic"]


def test_orderings_and_classes():
    orderings = isokin.all_orderings(4)
    assert len(orderings) == 24
    classes = isokin.dedup_orderings(HALF_SQUARE, orderings)
    assert len(classes) == 6
    assert all(len(c["members"]) == 4 for c in classes)


def test_chain_links():
    links = isokin.chain_links(HALF_SQUARE, [0, 2, 1, 3])
    assert links == pytest.approx([math.sqrt(2), 1, math.sqrt(2), math.sqrt(2) / 2], abs=1e-12)


def test_conditioning_length_at_placement():
    ordering = [0, 1, 3, 2]
    links = isokin.chain_links(HALF_SQUARE, ordering)
    posture = isokin.posture_from_placement(HALF_SQUARE, ordering)
    model = isokin.placement_model_set(HALF_SQUARE, ordering)
    r = isokin.optimal_lambda(links, posture, model)
    assert r["conditioning_length"] == pytest.approx(0.5, abs=1e-9)
    assert r["residual_distance"] < 1e-9


def test_characteristic_length():
    ordering = [0, 1, 2, 3]
    links = isokin.chain_links(HALF_SQUARE, ordering)
    model = isokin.placement_model_set(HALF_SQUARE, ordering)
    r = isokin.characteristic_length(links, model)
    assert r["characteristic_length"] == pytest.approx(0.5, abs=1e-4)
    assert r["best_distance"] < 1e-6
    assert r["attains_isotropy"]


def test_errors_carry_codes():
    with pytest.raises(isokin.IsokinError) as info:
        isokin.regular_polygon(2)
    assert info.value.code == "DegeneratePolygon"
    with pytest.raises(isokin.IsokinError) as info:
        isokin.model_matrix([(2, 2), (-2, 2), (-2, -2), (2, -2)])
    assert info.value.code == "NotAModelSet"
    with pytest.raises(ValueError):
        isokin.chain_links(HALF_SQUARE, [0, 0, 1, 2])

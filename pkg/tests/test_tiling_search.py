import math

import pytest

from sphtiling import catalog
from sphtiling.errors import DomainError
from sphtiling.tilingcore import (
    CombinatorialTiling,
    aad_holds,
    automorphism_count,
    build_icosahedron,
    canonical_form,
    extract_avc,
    search_tilings,
    validate,
)
from sphtiling.tilingcore.registry import build_named
from sphtiling.vertexcomb import parse_avc


def _relabel(t: CombinatorialTiling, perm) -> CombinatorialTiling:
    """The same tiling with faces renumbered by ``perm``."""
    inv = {old: new for new, old in enumerate(perm)}
    faces = tuple(t.faces[old] for old in perm)
    gl = sorted(tuple(sorted(((inv[f], s), (inv[g], u)))) for (f, s), (g, u) in t.gluings)
    return CombinatorialTiling(faces, tuple(gl), t.name)


def test_icosahedron_structure():
    t = build_icosahedron()
    assert (t.n_vertices, t.n_edges, len(t.faces)) == (12, 30, 20)
    assert extract_avc(t) == parse_avc("12a5")
    assert automorphism_count(t) == 120


def test_validate_catches_broken_gluing():
    t = build_named("prism")
    p = catalog.prism_family(0.6 * math.pi)
    assert validate(t, p.angles).all_green
    broken = CombinatorialTiling(t.faces, t.gluings[1:], t.name)
    rep = validate(broken, p.angles)
    assert not rep.all_green and not rep.edge_to_edge_ok


def test_validate_catches_wrong_angles():
    t = build_named("prism")
    rep = validate(t, catalog.icosahedral_protoset().angles)
    assert rep.edge_to_edge_ok and not rep.sums_ok


def test_json_round_trip():
    t = build_named("cuboctahedron")
    back = CombinatorialTiling.from_json(t.to_json())
    assert (back.faces, back.gluings, back.name) == (t.faces, t.gluings, t.name)
    assert canonical_form(back) == canonical_form(t)


def test_canonical_form_ignores_numbering():
    t = build_named("orthobicupola")
    perm = list(range(len(t.faces)))[::-1]
    assert canonical_form(_relabel(t, perm)) == canonical_form(t)
    assert canonical_form(t) != canonical_form(build_named("cuboctahedron"))


def test_cuboct_pair_symmetry():
    assert automorphism_count(build_named("cuboctahedron")) == 24
    assert automorphism_count(build_named("orthobicupola")) == 6


def test_search_cuboct_family_has_two():
    p = catalog.cuboct_family(0.45 * math.pi)
    e = p.expected[0]
    res = search_tilings(p.angles, p.a, e.faces, e.avc)
    assert res.complete and len(res.tilings) == 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_search_antiprism_unique(n):
    p = catalog.antiprism_family(n)
    e = p.expected[0]
    res = search_tilings(p.angles, p.a, e.faces, e.avc)
    assert len(res.tilings) == 1
    assert extract_avc(res.tilings[0]) == e.avc


def test_search_wrong_avc_finds_nothing():
    p = catalog.sporadic("8,2")
    res = search_tilings(p.angles, p.a, (8, 2), parse_avc("8a2bc"))
    assert res.tilings == []


def test_search_needs_a_triangle():
    p = catalog.sporadic("8,2")
    with pytest.raises(DomainError):
        search_tilings(p.angles, p.a, (0, 6), parse_avc("8b3"))


@pytest.mark.parametrize("tid", ["prism", "cuboctahedron", "8,2", "antiprism-4"])
def test_adjacent_angle_deduction(tid):
    assert aad_holds(build_named(tid))

import json
import math

import numpy as np
import pytest

from sphtiling import catalog
from sphtiling.errors import ClosureFailure, DomainError, RegistryMiss
from sphtiling.geom import export, load_export, realize
from sphtiling.tilingcore import canonical_form, extract_avc
from sphtiling.tilingcore.registry import build_antiprism, build_named, default_protoset, lookup, registry_ids


def test_registry_ids_are_unique_and_resolvable():
    ids = registry_ids()
    assert len(ids) == len(set(ids))
    for tid in ("prism", "cuboctahedron", "orthobicupola", "icosahedron", "antiprism-3", "20,24.2:k8"):
        assert tid in ids


def test_aliases():
    assert extract_avc(build_named("6,2")) == catalog.sporadic("4,4.1").expected[1].avc
    assert lookup("8,2").faces == (8, 2)
    with pytest.raises(RegistryMiss):
        lookup("20,24.2:k9")
    with pytest.raises(RegistryMiss):
        lookup("antiprism-2")
    with pytest.raises(DomainError):
        build_antiprism(2)


def test_antiprism_beyond_listed_ids():
    t = build_named("antiprism-12")
    assert (t.f_triangle, t.f_rhombus) == (2, 69)


def test_sporadic_row_totals():
    # every tiling count stated for a row is present in the registry
    ids = registry_ids()
    for pid in catalog.sporadic_ids():
        p = catalog.sporadic(pid)
        if p.total_tilings is None:
            continue
        n = sum(1 for tid in ids if tid.startswith(pid + ":"))
        assert n == p.total_tilings, pid


def test_embedding_geometry():
    e = realize(build_named("cuboctahedron"), default_protoset("cuboctahedron"))
    assert np.allclose(np.linalg.norm(e.positions, axis=1), 1.0)
    assert e.total_area == pytest.approx(4 * math.pi, abs=1e-9)
    # at the family endpoint the rhombus is a square with angle arccos(-1/3)
    p = default_protoset("cuboctahedron")
    assert p.angles.beta == pytest.approx(math.acos(-1 / 3), abs=1e-12)
    assert e.angle_error < 1e-9
    s = e.summary()
    assert s["vertices"] == 12 and s["faces"] == 14


def test_wrong_protoset_fails_to_close():
    with pytest.raises(ClosureFailure) as info:
        realize(build_named("prism"), catalog.icosahedral_protoset())
    assert info.value.defect > 1e-3


def test_obj_export():
    e = realize(build_named("prism"), default_protoset("prism"))
    text = export(e, "obj").decode()
    lines = text.splitlines()
    assert lines[0].startswith("#")
    assert sum(1 for x in lines if x.startswith("v ")) == 6
    faces = [x for x in lines if x.startswith("f ")]
    assert len(faces) == 5
    assert min(int(v) for f in faces for v in f.split()[1:]) == 1


def test_json_export_round_trip():
    e = realize(build_named("8,2"), default_protoset("8,2"))
    data = export(e, "json")
    doc = json.loads(data)
    assert doc["schema"] == "sphtiling.embedding"
    t, pos = load_export(data)
    assert canonical_form(t) == canonical_form(e.tiling)
    assert np.array_equal(pos, e.positions)
    with pytest.raises(ValueError):
        export(e, "stl")

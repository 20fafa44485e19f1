import math

import pytest

from sphtiling import catalog
from sphtiling.catalog import (
    antiprism_family,
    cuboct_family,
    parse_protoset_spec,
    prism_family,
    sporadic,
    sporadic_ids,
    truncate_pi,
    verify_protoset,
)
from sphtiling.errors import CatalogMiss, DomainError
from sphtiling.sphtrig import PI


def test_truncation_not_rounding():
    assert truncate_pi(0.41589999) == "0.4158"
    assert truncate_pi(0.5) == "0.5000"


@pytest.mark.parametrize("pid", sporadic_ids())
def test_every_row_verifies(pid):
    rep = verify_protoset(sporadic(pid))
    assert rep.ok, rep.to_dict()


def test_aliases_resolve():
    assert sporadic("6,2").id == "4,4.1"
    assert sporadic("6,1").id == "4,2"
    assert sporadic("icosahedral").id == "ico"
    with pytest.raises(CatalogMiss):
        sporadic("99,99")


def test_right_angle_rows_have_quarter_edge():
    assert sporadic("4,1").a == PI / 2
    assert sporadic("4,1").angles.is_square


@pytest.mark.parametrize("alpha", [0.47 * PI, 0.6 * PI, 0.9 * PI])
def test_prism_family_vertex_sum(alpha):
    p = prism_family(alpha)
    assert sum(p.angles.as_tuple()) == pytest.approx(2 * PI, abs=1e-13)
    assert verify_protoset(p).ok


@pytest.mark.parametrize("alpha", [0.40 * PI, 0.45 * PI, 0.49 * PI])
def test_cuboct_family_vertex_sum(alpha):
    p = cuboct_family(alpha)
    al, be, ga = p.angles.as_tuple()
    assert 2 * al + be + ga == pytest.approx(2 * PI, abs=1e-13)
    assert verify_protoset(p).ok


def test_family_domains():
    with pytest.raises(DomainError):
        prism_family(0.3 * PI)
    with pytest.raises(DomainError):
        cuboct_family(0.6 * PI)
    with pytest.raises(DomainError):
        antiprism_family(2)


def test_antiprism_limits_converge():
    b = [antiprism_family(n).angles.beta for n in (3, 10, 100, 1000)]
    gaps = [PI - x for x in b]
    assert all(x > y for x, y in zip(gaps, gaps[1:]))


def test_flip_family_avc_bounds():
    assert catalog.flip_family_avc(0)[(1, 2, 0)] == 12
    with pytest.raises(DomainError):
        catalog.flip_family_avc(12)


def test_spec_parser():
    assert parse_protoset_spec("8,2").id == "8,2"
    p = parse_protoset_spec("prism@alpha=acos(1/8)")
    assert p.angles.beta == pytest.approx(math.acos(-3 / 4), abs=1e-12)
    assert parse_protoset_spec("antiprism@n=5").param["n"] == 5
    assert catalog.eval_expr("0.45pi") == pytest.approx(0.45 * PI)


def test_protoset_json_fields():
    d = sporadic("8,2").to_dict()
    assert d["truncated"][3] == "0.4158"
    assert d["expected"][0]["tilings"] == 1

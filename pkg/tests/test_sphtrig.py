import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphtiling.errors import DomainError
from sphtiling.sphtrig import (
    PI,
    AngleTriple,
    alpha_from_edge,
    areas,
    beta_from_gamma,
    bisect,
    edge_from_alpha,
    edge_from_rhombus,
    residuals,
)

alphas = st.floats(min_value=PI / 3 + 1e-3, max_value=PI / 2 - 1e-3)


def test_right_angle_triangle_has_quarter_edge():
    # the octant triangle: three right angles, edge pi/2
    assert edge_from_alpha(PI / 2) == PI / 2
    assert alpha_from_edge(PI / 2) == PI / 2


def test_icosahedron_edge():
    # circumradius angle of the icosahedron: cos a = 1/sqrt(5)
    a = edge_from_alpha(2 * PI / 5)
    assert a == pytest.approx(math.acos(1 / math.sqrt(5)), abs=1e-14)


@given(alphas)
def test_edge_round_trip(alpha):
    assert alpha_from_edge(edge_from_alpha(alpha)) == pytest.approx(alpha, abs=1e-12)


@given(alphas, st.floats(min_value=0.05, max_value=0.95))
def test_beta_from_gamma_satisfies_relation(alpha, frac):
    a = edge_from_alpha(alpha)
    gamma = frac * PI
    beta = beta_from_gamma(gamma, a)
    assert edge_from_rhombus(beta, gamma) == pytest.approx(a, abs=1e-9)
    t = AngleTriple(alpha, beta, gamma)
    assert abs(residuals(t).r2) < 1e-12


@settings(max_examples=50)
@given(alphas, st.floats(min_value=0.05, max_value=0.9), st.floats(min_value=0.01, max_value=0.05))
def test_beta_strictly_decreasing(alpha, g, dg):
    a = edge_from_alpha(alpha)
    assert beta_from_gamma(g * PI, a) > beta_from_gamma((g + dg) * PI, a)


def test_areas_of_icosahedral_tiles():
    t = AngleTriple(2 * PI / 5, 4 * PI / 5, 2 * PI / 5)
    s = areas(t)
    assert 20 * s.s_triangle == pytest.approx(4 * PI)
    # the rhombus is two triangles
    assert s.s_rhombus == pytest.approx(2 * s.s_triangle)


def test_domain_errors():
    with pytest.raises(DomainError):
        edge_from_alpha(PI / 4)
    with pytest.raises(DomainError):
        alpha_from_edge(3.0)
    with pytest.raises(DomainError):
        beta_from_gamma(0.5, 2.0)
    with pytest.raises(DomainError):
        AngleTriple(0.1, 2.0, 1.5).require_valid()


def test_violations_and_kind():
    assert AngleTriple(0.4 * PI, 0.5 * PI, 0.6 * PI).violations() == ["need beta >= gamma > 0"]
    assert AngleTriple(0.4 * PI, 0.6 * PI, 0.3 * PI).violations() == ["need beta + gamma > pi"]
    assert AngleTriple(PI / 2, PI, PI / 2).kind == "degenerate"
    assert AngleTriple(0.6 * PI, 1.2 * PI, 0.3 * PI).kind == "concave"
    assert AngleTriple(0.45 * PI, 0.8 * PI, 0.3 * PI).kind == "convex"


def test_bisect():
    assert bisect(lambda x: x * x - 2, 0.0, 2.0) == pytest.approx(math.sqrt(2), abs=1e-15)
    with pytest.raises(DomainError):
        bisect(lambda x: x * x + 1, -1.0, 1.0)

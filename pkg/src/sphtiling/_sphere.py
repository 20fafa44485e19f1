"""Small unit-sphere helpers shared by the search and the realization."""
from __future__ import annotations

import math

import numpy as np


def tangent(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Unit tangent at p pointing along the minor arc to q."""
    d = q - np.dot(p, q) * p
    return d / np.linalg.norm(d)


def turn(p: np.ndarray, d: np.ndarray, phi: float) -> np.ndarray:
    """Rotate tangent d about the outward normal p; positive is counterclockwise."""
    return d * math.cos(phi) + np.cross(p, d) * math.sin(phi)


def step(p: np.ndarray, d: np.ndarray, a: float) -> np.ndarray:
    q = math.cos(a) * p + math.sin(a) * d
    return q / np.linalg.norm(q)


def corner_angle(prev: np.ndarray, v: np.ndarray, nxt: np.ndarray) -> float:
    """Interior angle at v of a counterclockwise polygon ... prev, v, nxt ..., in [0, 2pi)."""
    d_next = tangent(v, nxt)
    d_prev = tangent(v, prev)
    ang = math.atan2(float(np.dot(np.cross(d_next, d_prev), v)), float(np.dot(d_next, d_prev)))
    return ang % (2 * math.pi)


def arc(p: np.ndarray, q: np.ndarray) -> float:
    """Great-circle distance, accurate for small and large arcs."""
    return math.atan2(float(np.linalg.norm(np.cross(p, q))), float(np.dot(p, q)))

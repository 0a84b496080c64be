"""Nets: the arc diagram cut out by g^{-1}(real axis) above the real line.

For a real rational function g = q1/q2 with 2d-2 distinct real critical
points, the preimage of the extended real axis meets the upper half-plane
in d-1 disjoint arcs, each joining two critical points.  The arcs form a
non-crossing perfect matching on the critical points; together with the
distinguished rightmost vertex this matching determines the class.

Tracing works on the real function phi(z) = Im(q1(z) * conj(q2(z))),
whose zero set away from the real axis is exactly Im g = 0 -- this avoids
any special handling of poles of g along the curve.
"""

from dataclasses import dataclass, field

import numpy as np

from . import poly
from .combinat import ballot_to_matching, is_noncrossing
from .errors import (IndexOutOfRange, LengthMismatch, NonRealInput,
                     TraceLost)

# Vertex labelling of arcs relative to ballot positions, fixed once by
# tracing every branch for d = 3 and d = 4 against ballot_to_matching
# (see tests).  False = ballot position m maps to the m-th vertex from
# the left; True = from the right.  The trace runs selected False.
ORIENTATION_REVERSED = False


@dataclass(frozen=True)
class TraceOptions:
    step: float = 1e-2
    shrink: float = 0.5
    vertex_capture_radius: float = 1e-4
    max_steps: int = 100000

    def __post_init__(self):
        if min(self.step, self.shrink, self.vertex_capture_radius,
               self.max_steps) <= 0:
            raise ValueError("trace options must be positive")


@dataclass(frozen=True)
class Net:
    vertices: tuple
    matching: frozenset
    distinguished: int
    arcs: dict = field(default_factory=dict, compare=False)


def _phi_and_gradient(q1, q2, dq1, dq2, z):
    """phi = Im(q1 conj(q2)) and its real gradient as a complex number."""
    v1, v2 = poly.polyval(q1, z), poly.polyval(q2, z)
    d1, d2 = poly.polyval(dq1, z), poly.polyval(dq2, z)
    phi = (v1 * np.conj(v2)).imag
    u = d1 * np.conj(v2)
    w = v1 * np.conj(d2)
    gx = (u + w).imag
    gy = (u - w).real
    return phi, gx + 1j * gy


def _correct(q1, q2, dq1, dq2, z, scale):
    """Newton steps transverse to the level curve phi = 0."""
    for _ in range(12):
        phi, grad = _phi_and_gradient(q1, q2, dq1, dq2, z)
        g2 = grad.real ** 2 + grad.imag ** 2
        if g2 == 0.0:
            break
        dz = phi * grad / g2
        z = z - dz
        if abs(dz) < 1e-14 * scale:
            break
    return z


def _trace_arc(q1, q2, start, vertices, opts, upward=True):
    """Follow the level curve leaving `start` vertically, return
    (endpoint vertex index, polyline)."""
    dq1, dq2 = poly.derivative(q1), poly.derivative(q2)
    scale = 1 + np.abs(vertices).max()
    R = 10.0 * scale
    sign = 1.0 if upward else -1.0
    delta = 1e-7 * scale
    z = start + sign * 1j * delta
    pts = [complex(start), complex(z)]
    tangent_prev = sign * 1j
    h = opts.step * scale
    min_h = 1e-7 * scale
    launched = False
    for _ in range(opts.max_steps):
        _, grad = _phi_and_gradient(q1, q2, dq1, dq2, z)
        if grad == 0.0:
            raise TraceLost("level curve tangent vanished")
        t = (-grad.imag + 1j * grad.real)
        t = t / abs(t)
        if (t * np.conj(tangent_prev)).real < 0:
            t = -t
        dist = np.abs(z - vertices).min()
        step = min(h, max(0.25 * dist, min_h))
        z_new = _correct(q1, q2, dq1, dq2, z + step * t, scale)
        # reject correction blow-ups by halving the step
        while abs(z_new - z) > 3 * step and step > min_h:
            step *= opts.shrink
            z_new = _correct(q1, q2, dq1, dq2, z + step * t, scale)
        tangent_prev = t
        z = z_new
        pts.append(complex(z))
        if abs(z) > R:
            raise TraceLost("curve left the bounding box")
        if not launched:
            if abs(z - start) > 10 * opts.vertex_capture_radius * scale:
                launched = True
            continue
        k = int(np.argmin(np.abs(z - vertices)))
        if abs(z - vertices[k]) < opts.vertex_capture_radius * scale:
            pts.append(complex(vertices[k]))
            return k, np.array(pts)
    raise TraceLost("step budget exhausted before landing")


def trace_net(pc, opts=TraceOptions(), upward=True):
    """Trace all upper-half-plane arcs of a real class."""
    if pc.max_imag() > 1e-8:
        raise NonRealInput("coefficients must be real")
    q1, q2 = pc.q1.real, pc.q2.real
    w = poly.wronskian(q1, q2)
    if poly.degree(w) != 2 * pc.d - 2:
        raise TraceLost("critical point at infinity")
    try:
        vertices = np.sort(poly.real_roots(w))
    except Exception:
        raise NonRealInput("critical points must be real and distinct")
    if vertices.size != 2 * pc.d - 2:
        raise NonRealInput("critical points must be real and distinct")
    ends = {}
    arcs = {}
    for i, x in enumerate(vertices):
        k, pts = _trace_arc(q1, q2, x, vertices, opts, upward=upward)
        ends[i] = k
        arcs[i] = pts
    pairs = set()
    polylines = {}
    for i, k in ends.items():
        if k == i or ends.get(k) != i:
            raise TraceLost("arc endpoints do not pair up")
        a, b = sorted((i + 1, k + 1))
        pairs.add((a, b))
        polylines[(a, b)] = arcs[a - 1]
    matching = frozenset(pairs)
    if 2 * len(matching) != vertices.size or not is_noncrossing(matching):
        raise TraceLost("traced arcs do not form a non-crossing matching")
    return Net(vertices=tuple(vertices), matching=matching,
               distinguished=vertices.size, arcs=polylines)


def net_from_ballot(sigma, vertices):
    """Predicted net for a branch label, using the calibrated orientation."""
    vertices = tuple(np.sort(np.asarray(vertices, dtype=float)))
    if len(vertices) != len(sigma):
        raise LengthMismatch("one vertex per ballot position required")
    n = len(sigma)
    matching = ballot_to_matching(sigma)
    if ORIENTATION_REVERSED:
        matching = frozenset((n + 1 - b, n + 1 - a) for a, b in matching)
    return Net(vertices=vertices, matching=matching, distinguished=n)


def degree_drop_edge(net, m):
    """Whether fusing vertices m and m+1 lowers the degree: true exactly
    when the net has an arc joining them."""
    n = len(net.vertices)
    if not 1 <= m < n:
        raise IndexOutOfRange("need adjacent vertex indices")
    return (m, m + 1) in net.matching

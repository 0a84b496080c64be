"""Seed pairs for the continuation solver.

Starting from (z^{d-1}, z^d), prepending one positive low-order term at a
time (operations F1/F2 under the permission rule) produces, for each ballot
sequence, a pair whose Wronskian has 2d-2 simple roots packed geometrically
inside (-1, 0).  A geometric shrink schedule stands in for the existence
argument that valid parameter ranges exist: each inserted parameter is
shrunk until the new root lands closest to zero and the whole root set
stays simple and well separated.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import poly
from .combinat import is_ballot
from .errors import (InvalidBallot, NonPositiveParameter, NotPermitted,
                     ScheduleExhausted)


@dataclass(frozen=True)
class CanonicalPair:
    """Normalized pair: q1 monic of degree d-1, q2 monic of degree d,
    lowest-order exponents k1 < k2, all stored coefficients positive."""
    d: int
    k1: int
    k2: int
    q1: np.ndarray
    q2: np.ndarray
    sigma: str = ""

    @property
    def order(self):
        """Multiplicity of the Wronskian root at 0: k1 + k2 - 1."""
        return self.k1 + self.k2 - 1

    def wronskian(self):
        return poly.wronskian(self.q1, self.q2)


@dataclass(frozen=True)
class SeedSchedule:
    ratio: float = 0.05
    max_retries: int = 40

    def __post_init__(self):
        if not 0 < self.ratio < 1:
            raise ValueError("ratio must be in (0, 1)")


def initial_pair(d):
    """The unique pair with k1 = d-1, k2 = d: (z^{d-1}, z^d)."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    q1 = np.zeros(d)
    q1[d - 1] = 1.0
    q2 = np.zeros(d + 1)
    q2[d] = 1.0
    return CanonicalPair(d=d, k1=d - 1, k2=d, q1=q1, q2=q2)


def permitted(i, pair):
    """Whether operation F^i keeps 0 <= k1 < k2 <= d."""
    if i == 1:
        return pair.k1 > 0
    if i == 2:
        return pair.k2 > pair.k1 + 1
    raise ValueError("operation index must be 1 or 2")


def apply_F(i, a, pair):
    """Add the term a*z^{k_i - 1} to q_i; k_i drops by one."""
    if not permitted(i, pair):
        raise NotPermitted(f"F^{i} not permitted on b({pair.k1}, {pair.k2})")
    if a <= 0:
        raise NonPositiveParameter("parameter must be strictly positive")
    if i == 1:
        q1 = pair.q1.copy()
        q1[pair.k1 - 1] = a
        return replace(pair, k1=pair.k1 - 1, q1=q1)
    q2 = pair.q2.copy()
    q2[pair.k2 - 1] = a
    return replace(pair, k2=pair.k2 - 1, q2=q2)


def lowest_coeff(pair):
    """Coefficient of the lowest-order Wronskian term,
    (k2 - k1) * a_{2,k2} * a_{1,k1}."""
    return (pair.k2 - pair.k1) * pair.q2[pair.k2] * pair.q1[pair.k1]


def _negative_roots(pair):
    """Simple negative roots of W(q1, q2) after stripping the root at 0.

    Returns None when the computed roots violate the expected pattern
    (real, simple, inside (-1, 0), geometrically separated).
    """
    w = pair.wronskian()
    k = pair.order
    body = w[k:]
    if body.size - 1 != 2 * pair.d - 2 - k:
        return None
    r = np.roots(body[::-1]) if body.size > 1 else np.array([])
    if r.size == 0:
        return np.array([])
    if np.abs(r.imag).max() > 1e-9 * (1 + np.abs(r).max()):
        return None
    x = np.sort(r.real)
    if x[0] <= -1 or x[-1] >= 0:
        return None
    mags = np.sort(np.abs(x))
    if np.any(mags[1:] < 10.0 * mags[:-1]):
        return None
    return x


def seed_from_ballot(sigma, d, schedule=SeedSchedule()):
    """Run the F-operations of a ballot sequence with a shrink schedule.

    The m-th inserted parameter starts at ratio^m and is shrunk by ratio
    until the Wronskian roots stay simple, inside (-1, 0), and separated
    by a factor >= 10 in magnitude.
    """
    if len(sigma) != 2 * d - 2 or not is_ballot(sigma):
        raise InvalidBallot(f"not a ballot sequence of length {2*d-2}: {sigma!r}")
    pair = initial_pair(d)
    for m, ch in enumerate(sigma, start=1):
        a = schedule.ratio ** m
        for _ in range(schedule.max_retries):
            candidate = apply_F(int(ch), a, pair)
            if _negative_roots(candidate) is not None:
                pair = candidate
                break
            a *= schedule.ratio
        else:
            raise ScheduleExhausted(
                f"no valid parameter found at step {m} of {sigma!r}")
    return replace(pair, sigma=sigma)

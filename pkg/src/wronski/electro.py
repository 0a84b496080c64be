"""Electrostatic model: fixed +1 charges, mobile -2 charges.

Unit positive charges sit at fixed real points a_j; movable charges of
size -2 sit at z_k.  Interactions are logarithmic, so equilibria are the
critical points of

    E = log [ prod_{j<k} |z_k - z_j|^2 / prod_{j,k} |z_k - a_j| ],

and the equilibrium condition for charge k reads

    2 sum_{j != k} 1/(z_k - z_j) - sum_j 1/(z_k - a_j) = 0.

Equilibria coincide with root sets of the lower-degree polynomial
solutions of the associated second order equation, which is how
solve_equilibrium cross-checks its Newton sweep.
"""

from dataclasses import dataclass

import numpy as np

from . import fuchs, poly
from .errors import Collision, NonzeroResidue, SharedRoot


@dataclass(frozen=True)
class ChargeConfig:
    fixed: np.ndarray
    mobile: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "fixed",
                           np.asarray(self.fixed, dtype=float))
        object.__setattr__(self, "mobile",
                           np.asarray(self.mobile, dtype=complex))


def _check_separation(c):
    pts = np.concatenate([c.fixed.astype(complex), c.mobile])
    m = c.mobile.size
    for i in range(pts.size):
        for j in range(i + 1, pts.size):
            if i < c.fixed.size and j < c.fixed.size:
                continue
            if abs(pts[i] - pts[j]) < 1e-12:
                raise Collision("charges closer than 1e-12")
    return m


def equilibrium_residual(c):
    """Force on each mobile charge; zero exactly at equilibria."""
    m = _check_separation(c)
    if m == 0:
        return np.zeros(0, dtype=complex)
    z = c.mobile
    inv, _ = _pair_inverses(z)
    da = z[:, None] - c.fixed[None, :]
    return 2 * inv.sum(axis=1) - (1.0 / da).sum(axis=1)


def energy(c):
    """Logarithm of the master function of the configuration."""
    m = _check_separation(c)
    if m == 0:
        return 0.0
    z = c.mobile
    num = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            num += 2 * np.log(abs(z[i] - z[j]))
    den = np.log(np.abs(z[:, None] - c.fixed[None, :])).sum()
    return float(num - den)


def _pair_inverses(z):
    """1/(z_k - z_j) and its square with zeroed diagonals."""
    dz = z[:, None] - z[None, :]
    np.fill_diagonal(dz, 1.0)
    inv = 1.0 / dz
    inv2 = inv * inv
    np.fill_diagonal(inv, 0.0)
    np.fill_diagonal(inv2, 0.0)
    return inv, inv2


def _residual_jacobian(z, fixed):
    """Holomorphic Jacobian of equilibrium_residual in the mobile charges."""
    m = z.size
    _, inv2 = _pair_inverses(z)
    da = z[:, None] - fixed[None, :]
    J = 2.0 * inv2
    J[np.arange(m), np.arange(m)] = -(2.0 * inv2).sum(axis=1) \
        + (1.0 / da ** 2).sum(axis=1)
    return J


def _multistart(fixed, m, budget, seed):
    n = fixed.size
    rng = np.random.default_rng(seed)
    L = 1.5 * (1 + np.abs(fixed).max())
    batch = 2000
    found = []
    done = 0
    while done < budget:
        b = min(batch, budget - done)
        done += b
        Z = rng.uniform(-L, L, size=(b, m)) \
            + 1j * rng.uniform(-L, L, size=(b, m))
        # half the starts on the real axis, where many equilibria live
        Z[: b // 2] = Z[: b // 2].real
        for _ in range(60):
            dz = Z[:, :, None] - Z[:, None, :]
            dz[:, np.arange(m), np.arange(m)] = 1.0
            inv = 1.0 / dz
            inv2 = inv * inv
            inv[:, np.arange(m), np.arange(m)] = 0.0
            inv2[:, np.arange(m), np.arange(m)] = 0.0
            da = Z[:, :, None] - fixed[None, None, :]
            F = 2 * inv.sum(axis=2) - (1.0 / da).sum(axis=2)
            J = 2.0 * inv2
            J[:, np.arange(m), np.arange(m)] = \
                -(2.0 * inv2).sum(axis=2) + (1.0 / da ** 2).sum(axis=2) + 1e-14
            try:
                step = np.linalg.solve(J, F[:, :, None])[:, :, 0]
            except np.linalg.LinAlgError:
                Z = Z + rng.normal(scale=1e-3, size=(b, m))
                continue
            Z = Z - np.clip(step.real, -L, L) - 1j * np.clip(step.imag, -L, L)
        found.append(Z)
    return np.concatenate(found) if found else np.empty((0, m), complex)


def _canonical(z):
    """Sort a mobile set lexicographically by (real, imag)."""
    order = np.lexsort((z.imag, z.real))
    return z[order]


def _is_equilibrium(fixed, z, tol=1e-9):
    try:
        c = ChargeConfig(fixed=fixed, mobile=z)
        return np.abs(equilibrium_residual(c)).max(initial=0.0) <= tol
    except Collision:
        return False


def solve_equilibrium(fixed, m, budget=20000, seed=0):
    """All isolated equilibria of m mobile charges among the fixed ones."""
    fixed = np.sort(np.asarray(fixed, dtype=float))
    n = fixed.size
    if not 0 <= 2 * m <= n:
        raise ValueError("no degree pair exists for this charge count")
    if m == 0:
        return [ChargeConfig(fixed=fixed, mobile=np.zeros(0, complex))]
    candidates = []
    s = n + 1 - 2 * m
    for sol in fuchs.bethe_solve(fixed, budget=0):
        if sol.s != s:
            continue
        lo, _ = fuchs.polynomial_solutions(fixed, sol.x)
        candidates.append(poly.roots(lo))
    if budget > 0:
        candidates.extend(_multistart(fixed, m, budget, seed))
    out = []
    for z in candidates:
        if z.size != m or not np.isfinite(z).all():
            continue
        z = _canonical(np.asarray(z, dtype=complex))
        if not _is_equilibrium(fixed, z):
            continue
        # conjugation closure (isolated equilibria are real-symmetric)
        zc = _canonical(z.conj())
        if np.abs(z - zc).max() > 1e-8:
            continue
        # isolation: non-isolated families have rank-deficient Jacobians
        J = _residual_jacobian(z, fixed)
        if not np.isfinite(J).all():
            continue
        sv = np.linalg.svd(J, compute_uv=False)
        if sv[0] / max(sv[-1], 1e-300) >= 1e10:
            continue
        if any(np.abs(z - prev.mobile).max() < 1e-6 for prev in out):
            continue
        out.append(ChargeConfig(fixed=fixed, mobile=z))
    out.sort(key=lambda c: tuple((v.real, v.imag) for v in c.mobile))
    return out


def second_solution(A, y1):
    """Second solution y2 = y1 * integral(A / y1^2) of A y'' - A' y' = ...

    The integrand's polynomial part integrates termwise; the double-pole
    parts integrate to -beta_k/(z - r_k).  Simple-pole residues must all
    vanish for the integral to be rational, which happens exactly when
    the roots of y1 are an equilibrium.
    """
    A = poly.as_poly(A)
    y1 = poly.as_poly(y1)
    r = poly.roots(y1)
    if r.size > 1:
        dz = r[:, None] - r[None, :]
        np.fill_diagonal(dz, np.inf)
        if np.abs(dz).min() < 1e-8:
            raise SharedRoot("roots of y1 must be simple")
    y1p = poly.derivative(y1)
    y1pp = poly.derivative(y1p)
    scale = np.abs(A).max()
    if r.size and np.abs(poly.polyval(A, r)).min() < 1e-10 * scale:
        raise SharedRoot("y1 shares a root with A")
    # residues of A/y1^2 at the double poles
    Ar, Apr = poly.polyval(A, r), poly.polyval(poly.derivative(A), r)
    d1, d2 = poly.polyval(y1p, r), poly.polyval(y1pp, r)
    alpha = (Apr * d1 - Ar * d2) / d1 ** 3
    if r.size and np.abs(alpha).max() > 1e-8 * (1 + scale):
        raise NonzeroResidue("integral of A/y1^2 is not rational here")
    beta = Ar / d1 ** 2
    # polynomial part of A / y1^2 by long division
    from numpy.polynomial import polynomial as P
    denom = P.polymul(y1, y1)
    q, _ = np.polydiv(A[::-1], denom[::-1]) if A.size >= denom.size \
        else (np.zeros(1), None)
    q = np.asarray(q, dtype=complex)[::-1]
    y2 = poly.polymul(y1, P.polyint(q))
    for rk, bk in zip(r, beta):
        y2 = poly.polysub(y2, bk * poly.deflate(y1, rk))
    y2 = poly.normalize(y2, tol=1e-9)
    y2 = y2 / y2[-1]
    return y2.real if np.abs(y2.imag).max() < 1e-9 else y2

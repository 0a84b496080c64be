"""Inverse Wronski solver.

A class of rational functions is represented concretely in a chart: a pair
(q1 monic of degree d-1, q2 monic of degree d with q2(z0) = 0) for a real
base point z0.  That leaves 2d-2 free real (in practice) coefficients, the
same as the number of prescribed critical points.  Newton's method inverts
the coefficient system W(q1, q2) = prod (z - r_j); predictor-corrector
continuation moves the target roots linearly; chart switching handles the
finitely many classes each base point cannot represent.

solve_all builds one branch per ballot sequence and carries each to the
requested critical points, returning every class.  Branch construction is
staged: every F-operation's newborn Wronskian root is continued out to its
prescribed position before the next operation fires, so only one root is
ever microscopic and each branch stays resolvable in double precision.
"""

from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial import polynomial as P

from . import poly
from .combinat import ballot_sequences, catalan
from .errors import (ChartDegenerate, CollisionDetected, CountMismatch,
                     NewtonDiverged, PathStuck, ScheduleExhausted,
                     SingularJacobian)
from .seeds import (CanonicalPair, SeedSchedule, apply_F, initial_pair,
                    seed_from_ballot)


@dataclass(frozen=True)
class Chart:
    base_point: float
    d: int


@dataclass(frozen=True)
class TrackOptions:
    newton_tol: float = 1e-12
    max_newton: int = 8
    dt_init: float = 0.05
    dt_min: float = 1e-9
    chart_retries: int = 5
    rng_seed: int = 0


@dataclass(frozen=True)
class PairClass:
    """A polynomial pair normalized in a chart, plus its branch label."""
    q1: np.ndarray
    q2: np.ndarray
    chart: Chart
    ballot: str = ""

    @property
    def d(self):
        return self.chart.d

    def wronskian(self):
        return poly.wronskian(self.q1, self.q2)

    def wronskian_roots(self):
        return np.sort_complex(poly.roots(self.wronskian()))

    def max_imag(self):
        scale = max(np.abs(self.q1).max(), np.abs(self.q2).max())
        im1 = np.abs(self.q1.imag).max() if np.iscomplexobj(self.q1) else 0.0
        im2 = np.abs(self.q2.imag).max() if np.iscomplexobj(self.q2) else 0.0
        return max(im1, im2) / scale

    def realified(self):
        return replace(self, q1=self.q1.real.copy(), q2=self.q2.real.copy())


def _unpack(u, chart):
    """Chart coordinates -> (q1, q2) coefficient arrays."""
    d = chart.d
    z0 = chart.base_point
    q1 = np.concatenate([u[: d - 1], [1.0]]).astype(complex)
    q2 = np.zeros(d + 1, dtype=complex)
    q2[d] = 1.0
    q2[1:d] = u[d - 1:]
    # q2(z0) = 0 pins the constant term.
    q2[0] = -P.polyval(z0, q2)
    return q1, q2


def _pack(pc):
    return np.concatenate([pc.q1[: pc.d - 1], pc.q2[1: pc.d]])


def pair_class(u, chart, ballot=""):
    q1, q2 = _unpack(np.asarray(u, dtype=complex), chart)
    return PairClass(q1=q1, q2=q2, chart=chart, ballot=ballot)


def _wronskian_padded(q1, q2, n):
    w = P.polysub(P.polymul(q1, P.polyder(q2)), P.polymul(P.polyder(q1), q2))
    out = np.zeros(n, dtype=complex)
    out[: min(n, w.size)] = w[:n]
    return out, w


def wronski_residual(pc, target_roots):
    """Coefficient mismatch W(pair) - prod(z - r_j), monic term dropped."""
    target = poly.from_roots(np.asarray(target_roots))
    return _residual(_pack(pc), pc.chart, target)


def _residual(u, chart, target_coeffs):
    d = chart.d
    n = 2 * d - 2
    q1, q2 = _unpack(u, chart)
    wlow, w = _wronskian_padded(q1, q2, n)
    if w.size <= n or abs(w[n]) < 1e-10:
        raise ChartDegenerate("Wronskian lost its leading coefficient")
    return wlow - target_coeffs[:n]


def _jacobian(u, chart):
    """Analytic Jacobian of the residual in chart coordinates.

    By bilinearity, the derivative in the j-th coefficient of q1 is
    W(z^j, q2); in the j-th coefficient of q2 it is W(q1, z^j) corrected
    for the constrained constant term, W(q1, z^j) - z0^j * W(q1, 1).
    """
    d = chart.d
    n = 2 * d - 2
    z0 = chart.base_point
    q1, q2 = _unpack(u, chart)
    J = np.zeros((n, n), dtype=complex)
    q2p = P.polyder(q2)
    q1p = P.polyder(q1)
    for j in range(d - 1):
        ej = np.zeros(j + 1, dtype=complex)
        ej[j] = 1.0
        col = P.polysub(P.polymul(ej, q2p), P.polymul(P.polyder(ej), q2))
        J[: min(n, col.size), j] = col[:n]
    w_const = np.zeros(n, dtype=complex)  # W(q1, 1) = -q1'
    w_const[: min(n, q1p.size)] = -q1p[:n]
    for j in range(1, d):
        ej = np.zeros(j + 1, dtype=complex)
        ej[j] = 1.0
        col = P.polysub(P.polymul(q1, P.polyder(ej)), P.polymul(q1p, ej))
        full = np.zeros(n, dtype=complex)
        full[: min(n, col.size)] = col[:n]
        J[:, d - 2 + j] = full - (z0 ** j) * w_const
    return J


def _lagrange_weights(rho):
    """Row scales w'(rho_j) * |rho_j| for w = prod (z - rho_k).

    Dividing W(u)(rho_j) by w'(rho_j) measures the displacement of the
    j-th Wronskian root; the extra |rho_j| factor makes it a relative
    displacement, which is what keeps the exponentially small thorn roots
    (and with them the branch identity) resolvable in double precision.
    """
    diff = rho[:, None] - rho[None, :]
    np.fill_diagonal(diff, 1.0)
    mags = np.abs(rho) + 1e-12 * (1.0 + np.abs(rho).max())
    return diff.prod(axis=1) * mags


def _residual_values(u, chart, rho, weights):
    """The same square system in Lagrange form: W(u)(rho_j) / w'(rho_j).

    Equivalent to the coefficientwise residual (a monic degree-(2d-2)
    difference is determined by its values at the 2d-2 target roots) but
    conditioned per root, which keeps branch identity readable when the
    roots span many orders of magnitude near the thorn.
    """
    q1, q2 = _unpack(u, chart)
    _, w = _wronskian_padded(q1, q2, 2 * chart.d - 2)
    if w.size != 2 * chart.d - 1:
        raise ChartDegenerate("Wronskian lost its leading coefficient")
    return P.polyval(rho, w) / weights


def _jacobian_values(u, chart, rho, weights):
    d = chart.d
    z0 = chart.base_point
    q1, q2 = _unpack(u, chart)
    n = 2 * d - 2
    J = np.zeros((n, n), dtype=complex)
    q2p = P.polyder(q2)
    q1p = P.polyder(q1)
    rho_pow = rho[:, None] ** np.arange(d + 1)[None, :]
    q1_v = P.polyval(rho, q1)
    q2_v = P.polyval(rho, q2)
    q1p_v = P.polyval(rho, q1p)
    q2p_v = P.polyval(rho, q2p)
    for j in range(d - 1):
        # W(z^j, q2) evaluated at the target roots.
        J[:, j] = (rho_pow[:, j] * q2p_v
                   - j * rho_pow[:, j - 1] * q2_v if j > 0
                   else rho_pow[:, 0] * q2p_v) / weights
    w_const = -q1p_v  # W(q1, 1)
    for j in range(1, d):
        col = q1_v * j * rho_pow[:, j - 1] - q1p_v * rho_pow[:, j]
        J[:, d - 2 + j] = (col - (z0 ** j) * w_const) / weights
    return J


def _noise_floor(u, chart, rho, weights):
    """Cancellation limit of the scaled residual rows.

    Evaluating the Wronskian at clustered roots loses eps * sum |c_i
    rho^i| to rounding; below that level the residual is pure noise and
    Newton cannot be asked to go further.
    """
    q1, q2 = _unpack(u, chart)
    _, w = _wronskian_padded(q1, q2, 2 * chart.d - 2)
    mag = P.polyval(np.abs(rho), np.abs(w))
    return 50 * np.finfo(float).eps * mag / np.abs(weights)


def _newton(u, chart, rho, opts, weights=None):
    rho = np.asarray(rho, dtype=complex)
    if weights is None:
        weights = _lagrange_weights(rho)
    tol = opts.newton_tol * 100
    for _ in range(opts.max_newton):
        r = _residual_values(u, chart, rho, weights)
        if np.all(np.abs(r) <= np.maximum(
                tol, _noise_floor(u, chart, rho, weights))):
            return u
        u = u - _equilibrated_solve(
            _jacobian_values(u, chart, rho, weights), r, u)
    r = _residual_values(u, chart, rho, weights)
    if np.all(np.abs(r) <= np.maximum(
            tol, _noise_floor(u, chart, rho, weights))):
        return u
    raise NewtonDiverged("Newton did not converge")


def _equilibrated_solve(J, r, u):
    """Solve J x = r with columns scaled by coefficient magnitude.

    Near the thorn the unknowns span many orders of magnitude; scaling by
    |u_i| makes the solve (and its condition estimate) act on relative
    coefficient changes, which is the well-conditioned formulation there.
    """
    umax = np.abs(u).max()
    colscale = np.abs(u) + 1e-14 * (umax if umax > 0 else 1.0)
    Js = J * colscale[None, :]
    colnorm = np.abs(Js).max(axis=0)
    if np.any(colnorm == 0):
        raise SingularJacobian("Jacobian has a zero column")
    Js = Js / colnorm[None, :]
    s = np.linalg.svd(Js, compute_uv=False)
    if s[-1] == 0 or s[0] / s[-1] > 1e12:
        raise SingularJacobian("Jacobian condition estimate above 1e12")
    return np.linalg.solve(Js, r) / colnorm * colscale


def newton_polish(pc, target_roots, opts=TrackOptions()):
    """Newton-correct a pair class onto the given target critical points."""
    rho = np.sort(np.asarray(target_roots))
    u = _newton(_pack(pc), pc.chart, rho, opts)
    return pair_class(u, pc.chart, pc.ballot)


def to_chart(f1, f2, chart):
    """Renormalize a spanning pair into chart form.

    Raises ChartDegenerate when the class has no representative with
    q2 monic of degree d vanishing at the base point and q1 monic of
    degree d-1; that happens for finitely many base points per class.
    """
    d = chart.d
    z0 = chart.base_point
    f1 = np.asarray(f1, dtype=complex)
    f2 = np.asarray(f2, dtype=complex)
    width = max(f1.size, f2.size, d + 1)
    a = np.zeros(width, dtype=complex)
    b = np.zeros(width, dtype=complex)
    a[: f1.size] = f1
    b[: f2.size] = f2
    v1, v2 = P.polyval(z0, a), P.polyval(z0, b)
    # Combination vanishing at the base point.
    g2 = v2 * a - v1 * b
    if np.abs(g2).max() == 0.0 \
            or np.abs(g2[d + 1:]).max(initial=0.0) > 1e-9 * np.abs(g2).max() \
            or abs(g2[d]) < 1e-9 * np.abs(g2).max():
        raise ChartDegenerate("no monic degree-d representative vanishes here")
    g2 = g2 / g2[d]
    # Complementary element of degree exactly d-1.
    h = a if abs(v1) <= abs(v2) else b
    g1 = h - h[d] * g2
    if np.abs(g1[d:]).max(initial=0.0) > 1e-9 * np.abs(g1).max() \
            or abs(g1[d - 1]) < 1e-9 * np.abs(g1).max():
        raise ChartDegenerate("no monic degree-(d-1) complement here")
    g1 = g1 / g1[d - 1]
    return g1[:d], g2[: d + 1]


def from_seed(seed):
    """Wrap a thorn seed in the base-point-0 chart."""
    chart = Chart(base_point=0.0, d=seed.d)
    return PairClass(q1=seed.q1.astype(complex), q2=seed.q2.astype(complex),
                     chart=chart, ballot=seed.sigma)


def _roots_consistent(u, chart, rho):
    """Check that the tracked pair's Wronskian roots sit on the path.

    Guards against branch jumping: every interpolated root must have the
    tracked Wronskian root within a fraction of its gap to the others.
    """
    q1, q2 = _unpack(u, chart)
    w = poly.wronskian(q1, q2)
    if w.size != rho.size + 1:
        return False
    try:
        actual = poly.roots(w)
    except Exception:
        return False
    diff = np.abs(rho[:, None] - rho[None, :])
    np.fill_diagonal(diff, np.inf)
    gaps = diff.min(axis=1)
    order = np.argsort(rho.real)
    actual_sorted = actual[np.argsort(actual.real)]
    dist = np.abs(actual_sorted - rho[order])
    return bool(np.all(dist <= 0.3 * gaps[order]))


def _switch_chart(pc, roots_now, rng):
    d = pc.d
    for _ in range(100):
        z0 = rng.uniform(-3.0, 3.0)
        if np.abs(np.asarray(roots_now) - z0).min() < 1e-2:
            continue
        try:
            g1, g2 = to_chart(pc.q1, pc.q2, Chart(base_point=z0, d=d))
        except ChartDegenerate:
            continue
        return PairClass(q1=g1, q2=g2, chart=Chart(base_point=z0, d=d),
                         ballot=pc.ballot)
    raise PathStuck("could not find a usable chart base point")


def track(pc, roots_start, roots_end, opts=TrackOptions()):
    """Continue a class along linear motion of its Wronskian roots."""
    start = np.sort(np.asarray(roots_start, dtype=float))
    end = np.sort(np.asarray(roots_end, dtype=float))
    if start.size != end.size:
        raise CollisionDetected("root lists have different lengths")
    for arr in (start, end):
        if arr.size > 1 and np.diff(arr).min() < 1e-10:
            raise CollisionDetected("interpolated roots collide")
    rng = np.random.default_rng(opts.rng_seed)
    rates = end - start
    u = _pack(pc)
    chart = pc.chart
    t, dt = 0.0, opts.dt_init
    switches = 0
    while t < 1.0:
        step = min(dt, 1.0 - t)
        roots_t = (start + t * rates).astype(complex)
        rho_next = (start + (t + step) * rates).astype(complex)
        try:
            # Euler predictor on the implicit system W(u)(rho_j(t)) = 0.
            weights = _lagrange_weights(roots_t)
            q1, q2 = _unpack(u, chart)
            _, w = _wronskian_padded(q1, q2, 2 * pc.d - 2)
            wp_v = P.polyval(roots_t, P.polyder(w))
            rhs = -(wp_v * rates) / weights
            J = _jacobian_values(u, chart, roots_t, weights)
            du = _equilibrated_solve(J, rhs, u) * step
            u_next = _newton(u + du, chart, rho_next, opts)
            if not _roots_consistent(u_next, chart, rho_next):
                raise NewtonDiverged("corrector left the tracked branch")
        except (NewtonDiverged, SingularJacobian, ChartDegenerate,
                np.linalg.LinAlgError):
            dt = step / 2
            # Near t = 0 the thorn roots span many orders of magnitude and
            # legitimately need steps below dt_min; the underflow trigger
            # is relative to the distance already travelled.
            if dt < opts.dt_min * max(t, opts.dt_min):
                if switches >= opts.chart_retries:
                    raise PathStuck(
                        f"step size underflow after {switches} chart switches")
                switches += 1
                cur = pair_class(u, chart, pc.ballot)
                cur = _switch_chart(cur, roots_t.real, rng)
                chart = cur.chart
                u = _pack(cur)
                dt = opts.dt_init
            continue
        u = u_next
        t += step
        dt = min(2 * dt, opts.dt_init)
    return pair_class(u, chart, pc.ballot)


def _affine_into_unit(points):
    """Order-preserving affine map with image inside (-0.95, -0.05)."""
    pmin, pmax = points.min(), points.max()
    alpha = 0.9 / (pmax - pmin)
    beta = -0.95 - alpha * pmin
    return alpha, beta


def _staged_unpack(u, d, k1, k2):
    """Coordinates of the b(k1, k2) vanishing-pattern chart."""
    q1 = np.zeros(d, dtype=complex)
    q1[d - 1] = 1.0
    q1[k1: d - 1] = u[: d - 1 - k1]
    q2 = np.zeros(d + 1, dtype=complex)
    q2[d] = 1.0
    q2[k2:d] = u[d - 1 - k1:]
    return q1, q2


def _staged_pack(pair):
    return np.concatenate([pair.q1[pair.k1: pair.d - 1],
                           pair.q2[pair.k2: pair.d]]).astype(complex)


def _staged_body(q1, q2, k):
    """W(q1, q2) / z^k; the division is structurally exact."""
    w = P.polysub(P.polymul(q1, P.polyder(q2)), P.polymul(P.polyder(q1), q2))
    return w[k:]


def _staged_residual(u, d, k1, k2, rho, weights):
    q1, q2 = _staged_unpack(u, d, k1, k2)
    body = _staged_body(q1, q2, k1 + k2 - 1)
    return P.polyval(rho, body) / weights


def _staged_jacobian(u, d, k1, k2, rho, weights):
    k = k1 + k2 - 1
    q1, q2 = _staged_unpack(u, d, k1, k2)
    m = rho.size
    J = np.zeros((m, m), dtype=complex)
    col = 0
    for j in range(k1, d - 1):
        ej = np.zeros(j + 1, dtype=complex)
        ej[j] = 1.0
        body = _staged_body(ej, q2, k)
        J[:, col] = P.polyval(rho, body) / weights
        col += 1
    for j in range(k2, d):
        ej = np.zeros(j + 1, dtype=complex)
        ej[j] = 1.0
        body = _staged_body(q1, ej, k)
        J[:, col] = P.polyval(rho, body) / weights
        col += 1
    return J


def _staged_noise_floor(u, d, k1, k2, rho, weights):
    q1, q2 = _staged_unpack(u, d, k1, k2)
    body = _staged_body(q1, q2, k1 + k2 - 1)
    mag = P.polyval(np.abs(rho), np.abs(body))
    return 50 * np.finfo(float).eps * mag / np.abs(weights)


def _staged_newton(u, d, k1, k2, rho, opts, weights=None):
    if weights is None:
        weights = _lagrange_weights(rho)
    tol = opts.newton_tol * 100
    for _ in range(opts.max_newton):
        r = _staged_residual(u, d, k1, k2, rho, weights)
        if np.all(np.abs(r) <= np.maximum(
                tol, _staged_noise_floor(u, d, k1, k2, rho, weights))):
            return u
        u = u - _equilibrated_solve(
            _staged_jacobian(u, d, k1, k2, rho, weights), r, u)
    r = _staged_residual(u, d, k1, k2, rho, weights)
    if np.all(np.abs(r) <= np.maximum(
            tol, _staged_noise_floor(u, d, k1, k2, rho, weights))):
        return u
    raise NewtonDiverged("staged Newton did not converge")


def _staged_roots(pair):
    """Negative simple roots of W(pair) after stripping the root at 0."""
    body = _staged_body(pair.q1.astype(complex), pair.q2.astype(complex),
                        pair.order)
    if body.size < 2:
        return np.array([])
    r = np.roots(body[::-1].astype(complex))
    return r[np.argsort(r.real)]


def _track_staged(u, d, k1, k2, start, end, opts):
    """Linear root homotopy inside one b(k1, k2) chart."""
    rates = end - start
    t, dt = 0.0, opts.dt_init
    while t < 1.0:
        step = min(dt, 1.0 - t)
        rho_t = start + t * rates
        rho_n = start + (t + step) * rates
        try:
            weights = _lagrange_weights(rho_t)
            q1, q2 = _staged_unpack(u, d, k1, k2)
            body = _staged_body(q1, q2, k1 + k2 - 1)
            rhs = -(P.polyval(rho_t, P.polyder(body)) * rates) / weights
            J = _staged_jacobian(u, d, k1, k2, rho_t, weights)
            du = _equilibrated_solve(J, rhs, u) * step
            u_next = _staged_newton(u + du, d, k1, k2, rho_n, opts)
        except (NewtonDiverged, SingularJacobian, np.linalg.LinAlgError):
            dt = step / 2
            if dt < opts.dt_min * max(t, opts.dt_min):
                raise PathStuck("staged step size underflow")
            continue
        u = u_next
        t += step
        dt = min(2 * dt, opts.dt_init)
    return u


def _birth_ok(roots_now, placed, span):
    """Did apply_F create exactly one new simple real root nearest zero,
    leaving the placed roots in position?"""
    m = roots_now.size
    if m != placed.size + 1:
        return False
    if np.abs(roots_now.imag).max(initial=0.0) > 1e-7 * (1.0 + span):
        return False
    r = np.sort(roots_now.real)
    if r[-1] >= 0 or (placed.size and r[-1] <= placed[-1]):
        return False
    if placed.size:
        gaps = np.diff(np.concatenate([placed, [0.0]]))
        if np.abs(r[:-1] - placed).max() > 0.3 * gaps.min():
            return False
    return True


def build_branch(sigma, mapped, d, opts=TrackOptions(),
                 schedule=SeedSchedule()):
    """Construct the sigma-branch class with Wronskian roots at `mapped`.

    Staged version of the thorn construction: after every F-operation the
    newborn root is immediately continued from its small birth position
    to the next prescribed root, inside the b(k1, k2) chart whose
    vanishing pattern pins the remaining root multiplicity at 0.  Only one
    root is ever microscopic, which keeps every branch resolvable in
    double precision.
    """
    mapped = np.sort(np.asarray(mapped, dtype=float))
    if mapped[-1] >= 0 or mapped[0] <= -1:
        raise ValueError("staged targets must lie in (-1, 0)")
    span = np.abs(mapped).max()
    pair = initial_pair(d)
    for m, ch in enumerate(sigma, start=1):
        a = schedule.ratio
        placed = mapped[: m - 1]
        for _ in range(schedule.max_retries):
            cand = apply_F(int(ch), a, pair)
            born = _staged_roots(cand)
            if _birth_ok(born, placed, span):
                break
            a *= schedule.ratio
        else:
            raise ScheduleExhausted(
                f"no valid birth parameter at step {m} of {sigma!r}")
        u = _track_staged(_staged_pack(cand), d, cand.k1, cand.k2,
                          np.sort(born.real), mapped[:m], opts)
        q1, q2 = _staged_unpack(u, d, cand.k1, cand.k2)
        pair = CanonicalPair(d=d, k1=cand.k1, k2=cand.k2,
                             q1=q1, q2=q2, sigma=sigma[:m])
    return PairClass(q1=pair.q1.astype(complex), q2=pair.q2.astype(complex),
                     chart=Chart(base_point=0.0, d=d), ballot=sigma)


def solve_branch(sigma, points, d, opts=TrackOptions(),
                 schedule=SeedSchedule()):
    """Build one ballot branch and carry it to the given critical points."""
    points = np.sort(np.asarray(points, dtype=float))
    alpha, beta = _affine_into_unit(points)
    mapped = alpha * points + beta
    tracked = build_branch(sigma, mapped, d, opts, schedule)
    # Undo the affine map: substitute z -> alpha*z + beta in both
    # polynomials, which carries the Wronskian roots back onto points.
    f1 = poly.compose_affine(tracked.q1, alpha, beta)
    f2 = poly.compose_affine(tracked.q2, alpha, beta)
    rng = np.random.default_rng(opts.rng_seed + 1)
    for attempt in range(50):
        z0 = 0.0 if attempt == 0 else rng.uniform(-3.0, 3.0)
        if np.abs(points - z0).min() < 1e-2:
            continue
        try:
            g1, g2 = to_chart(f1, f2, Chart(base_point=z0, d=d))
            pc = PairClass(q1=g1, q2=g2, chart=Chart(base_point=z0, d=d),
                           ballot=sigma)
            return newton_polish(pc, points, opts)
        except (ChartDegenerate, NewtonDiverged, SingularJacobian):
            continue
    raise PathStuck(f"could not renormalize branch {sigma!r}")


def solve_all(points, d, opts=TrackOptions(), schedule=SeedSchedule(),
              jobs=1):
    """All classes of degree-d rational functions critical exactly at points.

    Returns catalan(d) pair classes sorted by ballot label; raises
    CountMismatch if deduplication does not yield exactly that many.
    """
    points = np.asarray(points, dtype=float)
    if points.size != 2 * d - 2:
        raise ValueError(f"need {2 * d - 2} points for degree {d}")
    if np.unique(points).size != points.size:
        raise ValueError("points must be distinct")
    sigmas = ballot_sequences(d)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            classes = list(pool.map(_solve_branch_star,
                                    [(s, points, d, opts, schedule)
                                     for s in sigmas]))
    else:
        classes = [solve_branch(s, points, d, opts, schedule)
                   for s in sigmas]
    logs = []
    distinct = []
    for pc in classes:
        dup = next((q for q in distinct if poly.span_equivalent(
            (pc.q1, pc.q2), (q.q1, q.q2), tol=1e-6)), None)
        if dup is None:
            distinct.append(pc)
        else:
            logs.append(f"branch {pc.ballot} duplicates {dup.ballot}")
    if len(distinct) != catalan(d):
        raise CountMismatch(
            f"expected {catalan(d)} classes, got {len(distinct)}", logs)
    return sorted(distinct, key=lambda pc: pc.ballot)


def _solve_branch_star(args):
    return solve_branch(*args)

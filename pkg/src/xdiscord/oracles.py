"""Slow, independent reference computations used only for verification.

Nothing in the analytic path imports this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import IntegrationError, InvalidStateError
from .linalg import (
    SIGMA_Y,
    check_density_matrix,
    dagger,
    hermitian_eigenvalues,
    matrix_sqrt_psd,
    partial_trace,
    swap_qubits,
    von_neumann_entropy,
)

# --- time evolution -------------------------------------------------------------


@dataclass(frozen=True)
class OdeSettings:
    """Fixed-step RK4 settings.

    Every ``renormalize_every`` steps the running operator is replaced by the
    unitary factor of its polar decomposition; ``tolerance`` bounds the
    unitarity drift seen before that projection.
    """

    step: float = 1e-4
    renormalize_every: int = 1000
    tolerance: float = 1e-8

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")


def _rk4_step(h_of_t, t: float, dt: float, u: np.ndarray) -> np.ndarray:
    h0 = h_of_t(t)
    hm = h_of_t(t + dt / 2)
    h1 = h_of_t(t + dt)
    k1 = -1j * (h0 @ u)
    k2 = -1j * (hm @ (u + dt / 2 * k1))
    k3 = -1j * (hm @ (u + dt / 2 * k2))
    k4 = -1j * (h1 @ (u + dt * k3))
    return u + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _polar_unitary(u: np.ndarray) -> np.ndarray:
    w, _, vh = np.linalg.svd(u)
    return w @ vh


def _unitarity_defect(u: np.ndarray) -> float:
    d = dagger(u) @ u - np.eye(u.shape[0])
    return float(np.max(np.abs(d))) if np.all(np.isfinite(d)) else math.inf


def ode_trajectory(h_of_t, times, settings: OdeSettings = OdeSettings(),
                   u0: np.ndarray | None = None) -> np.ndarray:
    """Integrate ``i dU/dt = H(t) U`` and return ``U`` at each of ``times``.

    ``times`` must be non-decreasing and start at or after 0. Between samples
    the interval is cut into equal steps no longer than ``settings.step``.
    """
    times = np.asarray(times, dtype=float)
    if times.size and (times[0] < 0 or np.any(np.diff(times) < 0)):
        raise ValueError("times must be non-negative and sorted")
    dim = h_of_t(0.0).shape[0]
    u = np.eye(dim, dtype=complex) if u0 is None else np.array(u0, dtype=complex)
    out = np.empty((times.size, dim, dim), dtype=complex)
    t = 0.0
    since_projection = 0
    for k, target in enumerate(times):
        span = target - t
        n = int(math.ceil(span / settings.step - 1e-9)) if span > 0 else 0
        dt = span / n if n else 0.0
        for i in range(n):
            u = _rk4_step(h_of_t, t + i * dt, dt, u)
            since_projection += 1
            if since_projection >= settings.renormalize_every:
                defect = _unitarity_defect(u)
                if defect > settings.tolerance:
                    raise IntegrationError(
                        f"unitarity drift {defect:.3g} at t={t + (i + 1) * dt:.6g}"
                    )
                u = _polar_unitary(u)
                since_projection = 0
        t = target
        defect = _unitarity_defect(u)
        if defect > settings.tolerance:
            raise IntegrationError(f"unitarity drift {defect:.3g} at t={t:.6g}")
        out[k] = u
    return out


def ode_propagate(h_of_t, final_time: float, settings: OdeSettings = OdeSettings()) -> np.ndarray:
    """``U(final_time)`` from fixed-step RK4."""
    if final_time < 0:
        raise ValueError("final_time must be non-negative")
    return ode_trajectory(h_of_t, [final_time], settings)[0]


# --- measurement-based discord ------------------------------------------------


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective qubit measurement ``{V|0><0|V^H, V|1><1|V^H}``.

    ``V|0> = cos(theta)|0> + e^{i phi} sin(theta)|1>``; ``theta`` in
    ``[0, pi/2]`` and ``phi`` in ``[0, 2 pi)`` cover every measurement axis.
    """

    theta: float
    phi: float

    def vectors(self) -> tuple[np.ndarray, np.ndarray]:
        c, s = math.cos(self.theta), math.sin(self.theta)
        e = complex(math.cos(self.phi), math.sin(self.phi))
        return np.array([c, e * s]), np.array([-np.conj(e) * s, c])

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        return tuple(np.outer(v, np.conj(v)) for v in self.vectors())


_BRANCH_CUTOFF = 1e-14


def conditional_entropy_measured(rho, basis: MeasurementBasis) -> float:
    """``sum_k p_k S(rho_k)`` after measuring qubit B in ``basis``.

    Outcomes with probability below 1e-14 contribute nothing.
    """
    a = check_density_matrix(rho, atol=1e-10)
    total = 0.0
    for proj in basis.projectors():
        op = np.kron(np.eye(2), proj)
        post = op @ a @ op
        p = float(np.real(np.trace(post)))
        if p < _BRANCH_CUTOFF:
            continue
        total += p * von_neumann_entropy(partial_trace(post / p, keep="A"), atol=1e-10)
    return min(max(total, 0.0), 1.0)


def _binary_entropy_of_2x2(m00, m11, m01):
    """Entropy in bits of normalized 2x2 Hermitian blocks (vectorised)."""
    half_gap = np.sqrt(((m00 - m11) / 2) ** 2 + np.abs(m01) ** 2)
    mean = (m00 + m11) / 2
    out = np.zeros_like(mean)
    for lam in (mean + half_gap, mean - half_gap):
        lam = np.clip(lam, 0.0, 1.0)
        pos = lam > 0
        out[pos] -= lam[pos] * np.log2(lam[pos])
    return out


def _conditional_entropy_batch(rho: np.ndarray, thetas, phis) -> np.ndarray:
    """Conditional entropy for many bases at once; ``thetas``/``phis`` broadcast."""
    thetas, phis = np.broadcast_arrays(np.asarray(thetas, float), np.asarray(phis, float))
    c, s = np.cos(thetas), np.sin(thetas)
    e = np.exp(1j * phis)
    # (b, d) x (a, a') layout so that <v|_B rho |v>_B is one matrix product
    kernel = rho.reshape(2, 2, 2, 2).transpose(1, 3, 0, 2).reshape(4, 4)
    total = np.zeros(thetas.shape)
    for v0, v1 in ((c, e * s), (-np.conj(e) * s, c)):
        w = np.stack([np.conj(v0) * v0, np.conj(v0) * v1, np.conj(v1) * v0, np.conj(v1) * v1], axis=-1)
        blk = (w @ kernel).reshape(thetas.shape + (2, 2))
        p = np.real(blk[..., 0, 0] + blk[..., 1, 1])
        safe = np.where(p < _BRANCH_CUTOFF, 1.0, p)
        ent = _binary_entropy_of_2x2(
            np.real(blk[..., 0, 0]) / safe, np.real(blk[..., 1, 1]) / safe, blk[..., 0, 1] / safe
        )
        total += np.where(p < _BRANCH_CUTOFF, 0.0, p * ent)
    return total


def _h2(lam: float) -> float:
    return -lam * math.log2(lam) if lam > 0.0 else 0.0


def _scalar_objective(rho: np.ndarray):
    """Scalar ``(theta, phi) -> conditional entropy``; same formula as the batch version."""
    k = rho.reshape(2, 2, 2, 2).transpose(1, 3, 0, 2).reshape(4, 4).tolist()

    def value(theta: float, phi: float) -> float:
        c, s = math.cos(theta), math.sin(theta)
        e = complex(math.cos(phi), math.sin(phi))
        total = 0.0
        for v0, v1 in ((c, e * s), (-e.conjugate() * s, c)):
            w00, w01 = v0.conjugate() * v0, v0.conjugate() * v1
            w10, w11 = v1.conjugate() * v0, v1.conjugate() * v1
            m00 = (w00 * k[0][0] + w01 * k[1][0] + w10 * k[2][0] + w11 * k[3][0]).real
            m01 = w00 * k[0][1] + w01 * k[1][1] + w10 * k[2][1] + w11 * k[3][1]
            m11 = (w00 * k[0][3] + w01 * k[1][3] + w10 * k[2][3] + w11 * k[3][3]).real
            p = m00 + m11
            if p < _BRANCH_CUTOFF:
                continue
            half_gap = math.sqrt(((m00 - m11) / (2 * p)) ** 2 + abs(m01 / p) ** 2)
            hi = min(max(0.5 + half_gap, 0.0), 1.0)
            lo = min(max(0.5 - half_gap, 0.0), 1.0)
            total += p * (_h2(hi) + _h2(lo))
        return total

    return value


def minimal_conditional_entropy(rho, grid: tuple[int, int] = (60, 120), refine: bool = True) -> float:
    """Minimum over B-measurements of the conditional entropy of A.

    The angle grid is ``theta = i*(pi/2)/n_theta`` (``i = 0..n_theta``) and
    ``phi = j*2pi/n_phi`` (``j < n_phi``), so doubling either count nests the
    old grid. With ``refine`` a Nelder-Mead search (200 iterations, tolerance
    1e-10) starts from each of the three best grid points.
    """
    a = check_density_matrix(rho, atol=1e-10)
    n_theta, n_phi = grid
    thetas = np.arange(n_theta + 1) * (np.pi / 2) / n_theta
    phis = np.arange(n_phi) * (2 * np.pi) / n_phi
    values = _conditional_entropy_batch(a, thetas[:, None], phis[None, :])
    best = float(values.min())
    if refine:
        flat = np.argsort(values, axis=None, kind="stable")[:3]

        scalar = _scalar_objective(a)

        def objective(x):
            return scalar(x[0], x[1])

        for idx in flat:
            i, j = np.unravel_index(idx, values.shape)
            res = minimize(
                objective,
                x0=np.array([thetas[i], phis[j]]),
                method="Nelder-Mead",
                options={"maxiter": 200, "xatol": 1e-10, "fatol": 1e-10,
                         "initial_simplex": np.array([[thetas[i], phis[j]],
                                                      [thetas[i] + np.pi / (4 * n_theta), phis[j]],
                                                      [thetas[i], phis[j] + np.pi / n_phi]])},
            )
            best = min(best, float(res.fun))
    return max(best, 0.0)


def mutual_information_general(rho) -> float:
    """``S(A) + S(B) - S(AB)`` from eigen-decompositions."""
    a = check_density_matrix(rho, atol=1e-10)
    return (
        von_neumann_entropy(partial_trace(a, "A"), atol=1e-10)
        + von_neumann_entropy(partial_trace(a, "B"), atol=1e-10)
        - von_neumann_entropy(a, atol=1e-10)
    )


def classical_correlations_bruteforce(rho, grid=(60, 120), refine=True, subsystem="B") -> float:
    a = check_density_matrix(rho, atol=1e-10)
    if subsystem == "A":
        a = swap_qubits(a)
    s_a = von_neumann_entropy(partial_trace(a, "A"), atol=1e-10)
    return max(s_a - minimal_conditional_entropy(a, grid, refine), 0.0)


def discord_bruteforce(rho, grid: tuple[int, int] = (60, 120), refine: bool = True,
                       subsystem: str = "B") -> float:
    """Discord by direct optimisation over projective measurements on ``subsystem``.

    Works for any two-qubit state, X-shaped or not. The result is clamped at 0.
    """
    a = check_density_matrix(rho, atol=1e-10)
    if subsystem == "A":
        a = swap_qubits(a)
    mi = mutual_information_general(a)
    cc = classical_correlations_bruteforce(a, grid, refine)
    return max(mi - cc, 0.0)


# --- concurrence ---------------------------------------------------------------

_YY = np.kron(SIGMA_Y, SIGMA_Y)


def wootters_concurrence_general(rho) -> float:
    """Wootters concurrence from the eigenvalues of ``rho * rho~``.

    The eigenvalues are taken from the Hermitian similar matrix
    ``sqrt(rho) rho~ sqrt(rho)``; negatives down to -1e-10 are clamped.
    """
    a = check_density_matrix(rho, atol=1e-10)
    tilde = _YY @ np.conj(a) @ _YY
    root = matrix_sqrt_psd(a)
    lam = hermitian_eigenvalues(root @ tilde @ root)
    if lam[0] < -1e-10:
        raise InvalidStateError(f"rho*rho~ has eigenvalue {lam[0]:.3g}")
    sq = np.sqrt(np.clip(lam, 0.0, None))[::-1]
    return float(max(0.0, sq[0] - sq[1] - sq[2] - sq[3]))

"""Small dense complex linear algebra for one- and two-qubit operators.

Everything here works on 2x2 or 4x4 numpy arrays. The basis ordering for two
spins is ``|++>, |+->, |-+>, |-->`` with ``sigma_z|+> = +|+>``, i.e. the usual
``np.kron`` ordering with ``|+>`` as index 0.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ContractViolation, InvalidStateError

HERMITIAN_ATOL = 1e-10
PSD_ATOL = 1e-10
DENSITY_ATOL = 1e-12

_OFFDIAG_TOL = 1e-13
_MAX_SWEEPS = 50

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a complex square array of dimension 2 or 4."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in (2, 4):
        raise ContractViolation(f"expected a 2x2 or 4x4 matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def _offdiag_norm(a: np.ndarray) -> float:
    d = np.diag(np.diag(a))
    return float(np.linalg.norm(a - d))


def hermitian_eigh(m, atol: float = HERMITIAN_ATOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a Hermitian matrix with cyclic complex Jacobi rotations.

    Returns ``(w, v)`` with ascending real eigenvalues ``w`` and unitary ``v``
    whose columns are the matching eigenvectors, so ``m = v @ diag(w) @ v^H``.
    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``1e-13 * max(1, ||m||_F)``.
    """
    a = as_matrix(m).copy()
    if np.max(np.abs(a - dagger(a))) > atol:
        raise ContractViolation("matrix is not Hermitian within %g" % atol)
    a = 0.5 * (a + dagger(a))
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = _OFFDIAG_TOL * max(1.0, float(np.linalg.norm(a)))

    for _ in range(_MAX_SWEEPS):
        if _offdiag_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                # negligible pivots cannot hold up convergence; skipping them
                # also keeps theta finite
                if mag <= 1e-6 * threshold:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # rotation V = diag-phase(q) @ real Givens(p, q)
                vpp, vpq = c, s
                vqp, vqq = -s * np.conj(phase), c * np.conj(phase)

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * vpp + col_q * vqp
                a[:, q] = col_p * vpq + col_q * vqq
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = np.conj(vpp) * row_p + np.conj(vqp) * row_q
                a[q, :] = np.conj(vpq) * row_p + np.conj(vqq) * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = vec_p * vpp + vec_q * vqp
                v[:, q] = vec_p * vpq + vec_q * vqq

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian 2x2 or 4x4 matrix."""
    return hermitian_eigh(m, atol)[0]


def check_density_matrix(rho, atol: float = DENSITY_ATOL) -> np.ndarray:
    """Validate ``rho`` as a density matrix and return it as a complex array.

    Hermiticity and unit trace are checked to ``atol``; positivity allows
    eigenvalues down to ``-1e-10``.
    """
    a = as_matrix(rho)
    if np.max(np.abs(a - dagger(a))) > atol:
        raise InvalidStateError("density matrix is not Hermitian")
    tr = np.trace(a)
    if abs(tr - 1.0) > atol:
        raise InvalidStateError(f"density matrix trace is {tr.real:.15g}, expected 1")
    if hermitian_eigenvalues(a)[0] < -PSD_ATOL:
        raise InvalidStateError("density matrix has a negative eigenvalue")
    return a


def _entropy_from_eigenvalues(w) -> float:
    total = 0.0
    for lam in w:
        if lam < -PSD_ATOL:
            raise InvalidStateError(f"negative eigenvalue {lam:.3g} in entropy")
        if lam > 0.0:
            total -= lam * math.log2(lam)
    return max(total, 0.0)


def von_neumann_entropy(rho, atol: float = DENSITY_ATOL) -> float:
    """Von Neumann entropy in bits, with ``0 log 0 = 0``.

    Eigenvalues in ``[-1e-10, 0)`` are treated as zero; anything more negative
    raises :class:`InvalidStateError`.
    """
    a = as_matrix(rho)
    if abs(np.trace(a) - 1.0) > atol:
        raise InvalidStateError("entropy requires a unit-trace state")
    return _entropy_from_eigenvalues(hermitian_eigenvalues(a))


def partial_trace(rho, keep: str = "A") -> np.ndarray:
    """Reduce a two-qubit state to qubit ``'A'`` (first) or ``'B'`` (second)."""
    a = check_density_matrix(rho, atol=max(DENSITY_ATOL, 1e-10))
    if a.shape != (4, 4):
        raise ContractViolation("partial trace needs a 4x4 two-qubit state")
    t = a.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("abcb->ac", t)
    if keep == "B":
        return np.einsum("abad->bd", t)
    raise ContractViolation(f"keep must be 'A' or 'B', not {keep!r}")


def swap_qubits(rho) -> np.ndarray:
    """Exchange the roles of the two qubits."""
    t = as_matrix(rho).reshape(2, 2, 2, 2)
    return t.transpose(1, 0, 3, 2).reshape(4, 4)


def purity(rho) -> float:
    a = as_matrix(rho)
    return float(np.real(np.trace(a @ a)))


def matrix_sqrt_psd(rho) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    w, v = hermitian_eigh(rho)
    w = np.where(w < 0.0, 0.0, w)
    return (v * np.sqrt(w)) @ dagger(v)

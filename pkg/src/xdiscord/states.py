"""X-states, their five-parameter Bloch form, Bell states and Bell mixtures."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, DomainError, InvalidStateError

STATE_ATOL = 1e-12

# index pairs of the eight entries that vanish in an X-state
OFF_X_ENTRIES = ((0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2))


@dataclass(frozen=True)
class XState:
    """Two-qubit density matrix with support on the diagonal and anti-diagonal.

    ``rho41 = conj(rho14)`` and ``rho32 = conj(rho23)`` are implied.
    Construction validates unit trace and positivity.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex = 0.0
    rho23: complex = 0.0

    def __post_init__(self):
        for name in ("rho11", "rho22", "rho33", "rho44"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "rho14", complex(self.rho14))
        object.__setattr__(self, "rho23", complex(self.rho23))

        diag = (self.rho11, self.rho22, self.rho33, self.rho44)
        if not all(np.isfinite(diag)) or not np.isfinite(self.rho14) or not np.isfinite(self.rho23):
            raise InvalidStateError("X-state entries must be finite")
        if abs(sum(diag) - 1.0) > STATE_ATOL:
            raise InvalidStateError(f"populations sum to {sum(diag):.15g}, expected 1")
        if min(diag) < -STATE_ATOL:
            raise InvalidStateError("negative population")
        if self.rho11 * self.rho44 < abs(self.rho14) ** 2 - STATE_ATOL:
            raise InvalidStateError("rho11*rho44 < |rho14|^2: state is not positive")
        if self.rho22 * self.rho33 < abs(self.rho23) ** 2 - STATE_ATOL:
            raise InvalidStateError("rho22*rho33 < |rho23|^2: state is not positive")

    @property
    def canonical(self) -> bool:
        """True when both coherences are real and non-negative."""
        return (
            self.rho14.imag == 0.0
            and self.rho23.imag == 0.0
            and self.rho14.real >= 0.0
            and self.rho23.real >= 0.0
        )

    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = self.rho11, self.rho22, self.rho33, self.rho44
        m[0, 3], m[3, 0] = self.rho14, np.conj(self.rho14)
        m[1, 2], m[2, 1] = self.rho23, np.conj(self.rho23)
        return m

    @classmethod
    def from_matrix(cls, m, atol: float = 1e-10) -> "XState":
        """Read an X-state from a 4x4 matrix, refusing off-X entries above ``atol``."""
        a = np.asarray(m, dtype=complex)
        if a.shape != (4, 4):
            raise ContractViolation(f"expected a 4x4 matrix, got {a.shape}")
        leak = max(abs(a[i, j]) for i, j in OFF_X_ENTRIES)
        if leak > atol:
            raise InvalidStateError(f"matrix is not X-shaped (off-X entry {leak:.3g})")
        if np.max(np.abs(a - a.conj().T)) > atol:
            raise InvalidStateError("matrix is not Hermitian")
        return cls(a[0, 0].real, a[1, 1].real, a[2, 2].real, a[3, 3].real, a[0, 3], a[1, 2])

    def purity(self) -> float:
        return (
            self.rho11**2 + self.rho22**2 + self.rho33**2 + self.rho44**2
            + 2.0 * abs(self.rho14) ** 2 + 2.0 * abs(self.rho23) ** 2
        )

    def scaled_sum(self, weight: float, other: "XState") -> tuple:
        """Entries of ``weight*self + (1-weight)*other`` (unvalidated tuple)."""
        w, u = weight, 1.0 - weight
        return (
            w * self.rho11 + u * other.rho11,
            w * self.rho22 + u * other.rho22,
            w * self.rho33 + u * other.rho33,
            w * self.rho44 + u * other.rho44,
            w * self.rho14 + u * other.rho14,
            w * self.rho23 + u * other.rho23,
        )


@dataclass(frozen=True)
class BlochParams:
    """Five-parameter normal form of a canonical X-state.

    The state is ``(I + r sz(x)I + s I(x)sz + c1 sx(x)sx + c2 sy(x)sy + c3 sz(x)sz)/4``.
    """

    r: float
    s: float
    c1: float
    c2: float
    c3: float

    def astuple(self) -> tuple[float, float, float, float, float]:
        return (self.r, self.s, self.c1, self.c2, self.c3)


def canonicalize(x: XState) -> XState:
    """Replace both coherences by their moduli.

    This is the effect of a diagonal local unitary on each qubit, so every
    correlation measure is unchanged. A zero coherence stays zero.
    """
    return XState(x.rho11, x.rho22, x.rho33, x.rho44, abs(x.rho14), abs(x.rho23))


def swap_subsystems(x: XState) -> XState:
    """Relabel qubit A as B and vice versa (exchanges r and s)."""
    return XState(x.rho11, x.rho33, x.rho22, x.rho44, x.rho14, np.conj(x.rho23))


def bloch_params(x: XState) -> BlochParams:
    if not x.canonical:
        raise ContractViolation("bloch_params needs a canonical X-state; call canonicalize first")
    a14, a23 = abs(x.rho14), abs(x.rho23)
    return BlochParams(
        r=x.rho11 + x.rho22 - x.rho33 - x.rho44,
        s=x.rho11 - x.rho22 + x.rho33 - x.rho44,
        c1=2.0 * (a23 + a14),
        c2=2.0 * (a23 - a14),
        c3=x.rho11 - x.rho22 - x.rho33 + x.rho44,
    )


def from_bloch(b: BlochParams) -> XState:
    """Rebuild the X-state; raises :class:`InvalidStateError` if it is not positive."""
    r, s, c1, c2, c3 = b.astuple()
    return XState(
        (1 + r + s + c3) / 4,
        (1 + r - s - c3) / 4,
        (1 - r + s - c3) / 4,
        (1 - r - s + c3) / 4,
        (c1 - c2) / 4,
        (c1 + c2) / 4,
    )


class Bell(enum.Enum):
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


_BELL_XSTATES = {
    Bell.PHI_PLUS: XState(0.5, 0.0, 0.0, 0.5, 0.5, 0.0),
    Bell.PHI_MINUS: XState(0.5, 0.0, 0.0, 0.5, -0.5, 0.0),
    Bell.PSI_PLUS: XState(0.0, 0.5, 0.5, 0.0, 0.0, 0.5),
    Bell.PSI_MINUS: XState(0.0, 0.5, 0.5, 0.0, 0.0, -0.5),
}


def bell_xstate(kind: Bell) -> XState:
    return _BELL_XSTATES[Bell(kind)]


def bell_state(kind: Bell) -> np.ndarray:
    """Projector onto a Bell state as a 4x4 density matrix."""
    return bell_xstate(kind).matrix()


class BellMixture(enum.Enum):
    """Two-component Bell mixtures ``p*first + (1-p)*second``."""

    PHI_PLUS_PSI_PLUS = "phi+psi+"
    PHI_PLUS_PSI_MINUS = "phi+psi-"
    PHI_MINUS_PSI_PLUS = "phi-psi+"
    PHI_MINUS_PSI_MINUS = "phi-psi-"
    PHI_PLUS_PHI_MINUS = "phi+phi-"
    PSI_PLUS_PSI_MINUS = "psi+psi-"

    @property
    def components(self) -> tuple[Bell, Bell]:
        first, second = self.value[:4], self.value[4:]
        return Bell(first), Bell(second)


@dataclass(frozen=True)
class BellMixtureSpec:
    kind: BellMixture
    p: float

    def __post_init__(self):
        object.__setattr__(self, "kind", BellMixture(self.kind))
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"mixing parameter p={self.p} outside [0, 1]")


def bell_mixture(spec: BellMixtureSpec) -> XState:
    first, second = spec.kind.components
    return XState(*bell_xstate(first).scaled_sum(spec.p, bell_xstate(second)))


def random_xstate(rng: np.random.Generator, canonical: bool = False) -> XState:
    """Draw an X-state: Dirichlet populations, coherences uniform within the positivity disc."""
    pops = rng.dirichlet(np.ones(4))
    m14 = rng.uniform() * np.sqrt(pops[0] * pops[3])
    m23 = rng.uniform() * np.sqrt(pops[1] * pops[2])
    if canonical:
        return XState(*pops, m14, m23)
    ph14, ph23 = rng.uniform(-np.pi, np.pi, size=2)
    return XState(*pops, m14 * np.exp(1j * ph14), m23 * np.exp(1j * ph23))

"""Exact dynamics of two coupled spins driven by local z-fields.

Units: hbar = 1 and couplings in units of a reference energy ``c``; time ``t``
is in ``hbar/c``. The Hamiltonian

    H = w1(t) sz1 + w2(t) sz2 + gxx sx1 sx2 + gyy sy1 sy2 + gzz sz1 sz2
        + gxy sx1 sy2 + gyx sy1 sx2

leaves span{|++>, |-->} ("plus" block) and span{|+->, |-+>} ("minus" block)
invariant. Inside each block it acts as ``[[W, G], [G*, -W]] +/- gzz`` with
``W_pm = w1 +/- w2`` and ``G_pm = (gxx -/+ gyy) - i(+/-gxy + gyx)``, so the
evolution is ``exp(-/+ i gzz t) [[a, b], [-b*, a*]]`` per block. The drives
below give ``a`` and ``b`` in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z
from .states import BellMixtureSpec, XState, bell_xstate

PLUS, MINUS = +1, -1


@dataclass(frozen=True)
class CouplingConstants:
    gxx: float
    gyy: float
    gzz: float = 0.0
    gxy: float = 0.0
    gyx: float = 0.0

    @classmethod
    def standard(cls, c: float = 1.0, gzz: float = 0.0) -> "CouplingConstants":
        """``gxx = gyy = 2 gxy = 2 gyx = c``: |G+| = c, |G-| = 2c, phases -pi/2 and 0."""
        return cls(gxx=c, gyy=c, gzz=gzz, gxy=c / 2, gyx=c / 2)

    @classmethod
    def swapped(cls, c: float = 1.0, gzz: float = 0.0) -> "CouplingConstants":
        """``gxx = -gyy = 2 gxy = -2 gyx = c``: exchanges the roles of the two blocks."""
        return cls(gxx=c, gyy=-c, gzz=gzz, gxy=c / 2, gyx=-c / 2)

    def gamma(self, block: int) -> complex:
        """Complex block coupling ``G_+`` (``block=+1``) or ``G_-`` (``block=-1``)."""
        if block == PLUS:
            return complex(self.gxx - self.gyy, -(self.gxy + self.gyx))
        return complex(self.gxx + self.gyy, -(-self.gxy + self.gyx))

    def with_gzz(self, gzz: float) -> "CouplingConstants":
        return CouplingConstants(self.gxx, self.gyy, gzz, self.gxy, self.gyx)


def gamma_phase_arctan(couplings: CouplingConstants, block: int) -> float:
    """Coupling phase from ``-arctan[(+/-gxy + gyx)/(gxx -/+ gyy)]``.

    Agrees with ``angle(G)`` only when ``gxx -/+ gyy > 0`` (or in the limit
    where it is zero); elsewhere the arctan lands on the wrong branch, so the
    propagators use ``np.angle``.
    """
    if block == PLUS:
        num, den = couplings.gxy + couplings.gyx, couplings.gxx - couplings.gyy
    else:
        num, den = -couplings.gxy + couplings.gyx, couplings.gxx + couplings.gyy
    if den == 0.0:
        return -math.copysign(math.pi / 2, num) if num else 0.0
    return -math.atan(num / den)


# --- drives -----------------------------------------------------------------


@dataclass(frozen=True)
class ConstantDrive:
    """Static field: ``W(t) = omega``."""

    omega: float = 0.0
    tag = "const"

    def field(self, gamma: complex, t):
        return self.omega + 0.0 * np.asarray(t, dtype=float)

    def amplitudes(self, gamma: complex, t):
        nu = math.hypot(self.omega, abs(gamma))
        t = np.asarray(t, dtype=float)
        if nu == 0.0:
            return np.ones_like(t, dtype=complex), np.zeros_like(t, dtype=complex)
        cos, sin = np.cos(nu * t), np.sin(nu * t)
        return cos - 1j * (self.omega / nu) * sin, -1j * (gamma / nu) * sin

    def block_quantities(self, gamma: complex, t):
        """``(Re[a b*], a^2 - b^2)`` in closed form."""
        nu = math.hypot(self.omega, abs(gamma))
        t = np.asarray(t, dtype=float)
        if nu == 0.0:
            return np.zeros_like(t), np.ones_like(t, dtype=complex)
        cos, sin = np.cos(nu * t), np.sin(nu * t)
        w, g = self.omega / nu, gamma / nu
        re_ab = g.imag * sin * cos + w * g.real * sin**2
        diff = (cos - 1j * w * sin) ** 2 + g**2 * sin**2
        return re_ab, diff

    def label(self) -> str:
        return f"const({self.omega:g})"


@dataclass(frozen=True)
class SechDrive:
    """Rosen-Zener-type pulse ``W(t) = 2|G| sech(2|G| t)``."""

    tag = "sech"

    def field(self, gamma: complex, t):
        g = abs(gamma)
        return 2.0 * g / np.cosh(2.0 * g * np.asarray(t, dtype=float))

    def amplitudes(self, gamma: complex, t):
        tau = abs(gamma) * np.asarray(t, dtype=float)
        th = np.tanh(tau)
        norm = np.sqrt(1.0 + th**2)  # sqrt(cosh 2tau)/cosh tau
        common = np.arctan(th)
        phi_a = -common - tau
        phi_b = np.angle(gamma) - common + tau - np.pi / 2
        return np.exp(1j * phi_a) / norm, th / norm * np.exp(1j * phi_b)

    def block_quantities(self, gamma: complex, t):
        tau = abs(gamma) * np.asarray(t, dtype=float)
        phase = np.angle(gamma)
        arg = 2.0 * tau + phase
        re_ab = 0.5 * np.tanh(2.0 * tau) * np.sin(arg)
        diff = (np.cos(arg) - 1j * np.sin(arg) / np.cosh(2.0 * tau)) * np.exp(
            1j * phase - 2j * np.arctan(np.tanh(tau))
        )
        return re_ab, diff

    def label(self) -> str:
        return "sech"


@dataclass(frozen=True)
class BrightDrive:
    """Growing pulse ``W(t) = |G|/2 (3 sech(|G| t) - cosh(|G| t))``.

    The field grows like ``cosh``; far from ``t = 0`` it is enormous and the
    phases oscillate on the scale ``sinh(|G| t)``.
    """

    tag = "bright"

    def field(self, gamma: complex, t):
        g = abs(gamma)
        tau = g * np.asarray(t, dtype=float)
        return 0.5 * g * (3.0 / np.cosh(tau) - np.cosh(tau))

    def amplitudes(self, gamma: complex, t):
        tau = abs(gamma) * np.asarray(t, dtype=float)
        common = np.arctan(np.tanh(tau / 2.0))
        half_sinh = 0.5 * np.sinh(tau)
        phi_a = -common - half_sinh
        phi_b = np.angle(gamma) - common + half_sinh - np.pi / 2
        return np.exp(1j * phi_a) / np.cosh(tau), np.tanh(tau) * np.exp(1j * phi_b)

    def block_quantities(self, gamma: complex, t):
        tau = abs(gamma) * np.asarray(t, dtype=float)
        phase = np.angle(gamma)
        re_ab = np.tanh(tau) / np.cosh(tau) * np.sin(phase + np.sinh(tau))
        diff = (
            1.0 / np.cosh(tau) ** 2 + np.exp(2j * (phase + np.sinh(tau))) * np.tanh(tau) ** 2
        ) * np.exp(-2j * np.arctan(np.tanh(tau / 2.0)) - 1j * np.sinh(tau))
        return re_ab, diff

    def label(self) -> str:
        return "bright"


Drive = ConstantDrive | SechDrive | BrightDrive

DRIVES = {"const": ConstantDrive, "sech": SechDrive, "bright": BrightDrive}


@dataclass(frozen=True)
class ScenarioConfig:
    """Couplings plus one solvable drive per invariant block."""

    couplings: CouplingConstants = field(default_factory=CouplingConstants.standard)
    drive_plus: Drive = field(default_factory=ConstantDrive)
    drive_minus: Drive = field(default_factory=ConstantDrive)

    def drive(self, block: int) -> Drive:
        return self.drive_plus if block == PLUS else self.drive_minus

    def label(self) -> str:
        return f"{self.drive_plus.label()}/{self.drive_minus.label()}"

    def time_scale(self) -> float:
        """|G+|, the factor converting ``t`` to the scaled time ``tau+``."""
        g = abs(self.couplings.gamma(PLUS))
        return g if g > 0.0 else 1.0

    def time_from_tau(self, tau_plus):
        return np.asarray(tau_plus, dtype=float) / self.time_scale()


def constant_scenario(omega_plus: float, couplings: CouplingConstants | None = None,
                      omega_minus: float | None = None) -> ScenarioConfig:
    """Static fields with ``W- = 2 W+`` unless ``omega_minus`` is given."""
    if omega_minus is None:
        omega_minus = 2.0 * omega_plus
    return ScenarioConfig(
        couplings or CouplingConstants.standard(),
        ConstantDrive(float(omega_plus)),
        ConstantDrive(float(omega_minus)),
    )


def sech_scenario(plus: str = "sech", minus: str = "sech",
                  couplings: CouplingConstants | None = None) -> ScenarioConfig:
    """One of the four pulse combinations; ``plus``/``minus`` are ``'sech'`` or ``'bright'``."""
    return ScenarioConfig(couplings or CouplingConstants.standard(), DRIVES[plus](), DRIVES[minus]())


# --- propagators --------------------------------------------------------------


@dataclass(frozen=True)
class PropagatorPair:
    """SU(2) amplitudes of both blocks at one instant (the gzz phase is kept apart)."""

    a_plus: complex
    b_plus: complex
    a_minus: complex
    b_minus: complex

    @classmethod
    def identity(cls) -> "PropagatorPair":
        return cls(1.0 + 0j, 0j, 1.0 + 0j, 0j)

    def block(self, block: int) -> tuple[complex, complex]:
        return (self.a_plus, self.b_plus) if block == PLUS else (self.a_minus, self.b_minus)

    def unitarity_defect(self) -> float:
        return max(
            abs(abs(self.a_plus) ** 2 + abs(self.b_plus) ** 2 - 1.0),
            abs(abs(self.a_minus) ** 2 + abs(self.b_minus) ** 2 - 1.0),
        )


def propagator(cfg: ScenarioConfig, t: float) -> PropagatorPair:
    a_p, b_p = cfg.drive_plus.amplitudes(cfg.couplings.gamma(PLUS), t)
    a_m, b_m = cfg.drive_minus.amplitudes(cfg.couplings.gamma(MINUS), t)
    return PropagatorPair(complex(a_p), complex(b_p), complex(a_m), complex(b_m))


def block_amplitudes(cfg: ScenarioConfig, block: int, t):
    """Vectorised ``(a, b)`` for one block over an array of times."""
    return cfg.drive(block).amplitudes(cfg.couplings.gamma(block), t)


def block_fields(cfg: ScenarioConfig, t) -> tuple:
    """``(W+, W-)`` at time(s) ``t``."""
    return (
        cfg.drive_plus.field(cfg.couplings.gamma(PLUS), t),
        cfg.drive_minus.field(cfg.couplings.gamma(MINUS), t),
    )


def field_profile(cfg: ScenarioConfig, t) -> tuple:
    """Local fields ``(w1, w2)`` realising the configured drives."""
    w_plus, w_minus = block_fields(cfg, t)
    return 0.5 * (w_plus + w_minus), 0.5 * (w_plus - w_minus)


_SZ1 = np.kron(SIGMA_Z, IDENTITY_2)
_SZ2 = np.kron(IDENTITY_2, SIGMA_Z)
_PAIRS = {
    "gxx": np.kron(SIGMA_X, SIGMA_X),
    "gyy": np.kron(SIGMA_Y, SIGMA_Y),
    "gzz": np.kron(SIGMA_Z, SIGMA_Z),
    "gxy": np.kron(SIGMA_X, SIGMA_Y),
    "gyx": np.kron(SIGMA_Y, SIGMA_X),
}


def coupling_hamiltonian(couplings: CouplingConstants) -> np.ndarray:
    """Time-independent spin-spin part of H as a 4x4 matrix."""
    return sum(getattr(couplings, name) * op for name, op in _PAIRS.items())


def hamiltonian(cfg: ScenarioConfig, t: float) -> np.ndarray:
    """Full 4x4 Hamiltonian built directly from Pauli products."""
    w1, w2 = field_profile(cfg, t)
    return float(w1) * _SZ1 + float(w2) * _SZ2 + coupling_hamiltonian(cfg.couplings)


def hamiltonian_function(cfg: ScenarioConfig):
    """``t -> H(t)`` with the coupling part precomputed."""
    hc = coupling_hamiltonian(cfg.couplings)

    def h(t: float) -> np.ndarray:
        w1, w2 = field_profile(cfg, t)
        return float(w1) * _SZ1 + float(w2) * _SZ2 + hc

    return h


def full_evolution_operator(pair: PropagatorPair, gzz: float, t: float) -> np.ndarray:
    """Assemble the 4x4 evolution operator from the block amplitudes."""
    u = np.zeros((4, 4), dtype=complex)
    ph_plus = np.exp(-1j * gzz * t)
    ph_minus = np.exp(1j * gzz * t)
    a, b = pair.a_plus, pair.b_plus
    u[0, 0], u[0, 3] = ph_plus * a, ph_plus * b
    u[3, 0], u[3, 3] = -ph_plus * np.conj(b), ph_plus * np.conj(a)
    a, b = pair.a_minus, pair.b_minus
    u[1, 1], u[1, 2] = ph_minus * a, ph_minus * b
    u[2, 1], u[2, 2] = -ph_minus * np.conj(b), ph_minus * np.conj(a)
    return u


def _evolve_block(p_hi, p_lo, coh, a, b):
    # (a, b) acting on [[p_hi, coh], [coh*, p_lo]]
    cross = 2.0 * (a * np.conj(b) * coh).real
    hi = abs(a) ** 2 * p_hi + abs(b) ** 2 * p_lo + cross
    lo = abs(b) ** 2 * p_hi + abs(a) ** 2 * p_lo - cross
    new_coh = a * a * coh - b * b * np.conj(coh) - a * b * (p_hi - p_lo)
    return hi, lo, new_coh


def evolve_xstate(x0: XState, pair: PropagatorPair) -> XState:
    """Evolved X-state ``U x0 U^H`` written entry by entry."""
    r11, r44, r14 = _evolve_block(x0.rho11, x0.rho44, x0.rho14, pair.a_plus, pair.b_plus)
    r22, r33, r23 = _evolve_block(x0.rho22, x0.rho33, x0.rho23, pair.a_minus, pair.b_minus)
    return XState(r11, r22, r33, r44, r14, r23)


def _evolved_bell_entries(sign: int, re_ab, diff):
    # (high population, low population, coherence) of a Bell projector in its block
    return 0.5 + sign * re_ab, 0.5 - sign * re_ab, sign * diff / 2.0


def evolved_mixture_closed_form(spec: BellMixtureSpec, cfg: ScenarioConfig, t: float) -> XState:
    """Evolved Bell mixture from the closed-form ``Re[a b*]`` and ``a^2 - b^2`` of each block."""
    quantities = {
        block: cfg.drive(block).block_quantities(cfg.couplings.gamma(block), t)
        for block in (PLUS, MINUS)
    }
    entries = np.zeros(4)
    coh = {PLUS: 0j, MINUS: 0j}
    first, second = spec.kind.components
    for bell, weight in ((first, spec.p), (second, 1.0 - spec.p)):
        x = bell_xstate(bell)
        if x.rho11 > 0:
            block, sign, slots = PLUS, int(np.sign(x.rho14.real)), (0, 3)
        else:
            block, sign, slots = MINUS, int(np.sign(x.rho23.real)), (1, 2)
        re_ab, diff = quantities[block]
        hi, lo, c = _evolved_bell_entries(sign, float(re_ab), complex(diff))
        entries[slots[0]] += weight * hi
        entries[slots[1]] += weight * lo
        coh[block] += weight * c
    return XState(*entries, coh[PLUS], coh[MINUS])

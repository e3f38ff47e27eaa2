"""Closed-form correlation measures for X-states.

All entropies are in bits. Discord is measured on qubit B; use
:func:`xdiscord.states.swap_subsystems` for the A-measured value.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .errors import DomainError, InconsistencyError
from .states import BlochParams, XState, bloch_params, canonicalize

log = logging.getLogger(__name__)

_CLAMP = 1e-12
_TIE = 1e-12
_NEG_WARN = 1e-9
_NEG_FAIL = 1e-6


def _xlog2x(x: float) -> float:
    if x <= 0.0:
        return 0.0
    return x * math.log2(x)


def f_binary_entropy(t: float) -> float:
    """``-(1-t)/2 log2(1-t) - (1+t)/2 log2(1+t)`` on ``0 <= t <= 1``.

    ``S = 1 + f(|v|)`` is the entropy of a qubit with Bloch vector length ``|v|``.
    Arguments within 1e-12 of the interval are clamped.
    """
    if t > 1.0 + _CLAMP or t < -_CLAMP or math.isnan(t):
        raise DomainError(f"f(t) needs 0 <= t <= 1, got {t!r}")
    t = min(max(t, 0.0), 1.0)
    return -0.5 * _xlog2x(1.0 - t) - 0.5 * _xlog2x(1.0 + t)


def _marginal_entropy(z: float) -> float:
    # f is even, so the sign of the Bloch component is irrelevant
    return 1.0 + f_binary_entropy(abs(z))


def _root(x: float) -> float:
    if x < -_CLAMP:
        raise DomainError(f"negative radicand {x:.3g}")
    return math.sqrt(max(x, 0.0))


def concurrence_x(b: BlochParams) -> float:
    """Wootters concurrence of the X-state with Bloch parameters ``b``."""
    r, s, c1, c2, c3 = b.astuple()
    root_a = _root((1 + c3) ** 2 - (r + s) ** 2)
    root_b = _root((1 - c3) ** 2 - (r - s) ** 2)
    # square roots of the eigenvalues of rho * rho~
    sq = (
        abs(c1 - c2 - root_a) / 4,
        abs(c1 - c2 + root_a) / 4,
        abs(c1 + c2 - root_b) / 4,
        abs(c1 + c2 + root_b) / 4,
    )
    return max(2 * max(sq) - sum(sq), 0.0)


def _eigen_pairs(b: BlochParams) -> tuple[float, float, float, float]:
    r, s, c1, c2, c3 = b.astuple()
    du = math.sqrt((r - s) ** 2 + (c1 + c2) ** 2)
    dv = math.sqrt((r + s) ** 2 + (c1 - c2) ** 2)
    u_plus, u_minus = (1 - c3 + du) / 4, (1 - c3 - du) / 4
    v_plus, v_minus = (1 + c3 + dv) / 4, (1 + c3 - dv) / 4
    for lam in (u_minus, v_minus):
        if lam < -_CLAMP:
            raise DomainError(f"X-state eigenvalue {lam:.3g} is negative")
    return u_plus, u_minus, v_plus, v_minus


def _mutual_information_bloch(b: BlochParams) -> float:
    return (
        _marginal_entropy(b.r) + _marginal_entropy(b.s)
        + sum(_xlog2x(lam) for lam in _eigen_pairs(b))
    )


def mutual_information(x: XState) -> float:
    """Quantum mutual information ``S(A) + S(B) - S(AB)`` in bits."""
    return max(_mutual_information_bloch(bloch_params(x)), 0.0)


def conditional_entropy_candidates(b: BlochParams) -> tuple[float, float, float]:
    """The three candidate minima of the B-measured conditional entropy.

    ``S1`` corresponds to a sigma_z measurement on B, ``S2``/``S3`` to sigma_x
    and sigma_y. Zero numerators follow ``0 log 0 = 0``.
    """
    r, s, c1, c2, c3 = b.astuple()
    s1 = 0.0
    for num, den in (
        (1 + r + s + c3, 2 * (1 + s)),
        (1 - r + s - c3, 2 * (1 + s)),
        (1 + r - s - c3, 2 * (1 - s)),
        (1 - r - s + c3, 2 * (1 - s)),
    ):
        if num <= 0.0 or den <= 0.0:
            if num < -_CLAMP:
                raise DomainError(f"negative population {num / 4:.3g} in S1")
            continue
        s1 -= num / 4 * math.log2(num / den)
    s2 = 1.0 + f_binary_entropy(math.hypot(r, c1))
    s3 = 1.0 + f_binary_entropy(math.hypot(r, c2))
    return s1, s2, s3


def minimal_candidate(candidates) -> tuple[int, float]:
    """1-based index and value of the smallest candidate; ties go to the lowest index."""
    best = 0
    for i in range(1, len(candidates)):
        if candidates[i] < candidates[best] - _TIE:
            best = i
    return best + 1, candidates[best]


def classical_correlations(x: XState) -> float:
    """Classical correlations ``S(A) - min(S1, S2, S3)`` for a canonical X-state."""
    bloch_params(x)
    return full_report(x).classical_correlations


def quantum_discord(x: XState) -> float:
    """B-measured quantum discord of a canonical X-state, in bits."""
    bloch_params(x)  # enforces the canonical precondition
    return full_report(x).discord


@dataclass(frozen=True)
class CorrelationReport:
    concurrence: float
    mutual_information: float
    classical_correlations: float
    discord: float
    entropy_candidates: tuple[float, float, float]
    argmin_candidate: int


def full_report(x: XState) -> CorrelationReport:
    """Every closed-form measure of ``x``; the state is canonicalized first.

    Values are clamped so that ``0 <= CC <= I`` and ``D = I - CC`` holds exactly.
    """
    b = bloch_params(canonicalize(x))
    conc = concurrence_x(b)
    mi = _mutual_information_bloch(b)
    cands = conditional_entropy_candidates(b)
    idx, smin = minimal_candidate(cands)
    cc = _marginal_entropy(b.r) - smin

    raw_d = mi - cc
    if raw_d < -_NEG_FAIL:
        raise InconsistencyError(f"negative discord {raw_d:.3g} for {b}")
    for name, value in (("mutual information", mi), ("classical correlations", cc), ("discord", raw_d)):
        if value < -_NEG_WARN:
            log.warning("%s %.3g below zero before clamping for %s", name, value, b)

    mi = max(mi, 0.0)
    cc = min(max(cc, 0.0), mi)
    discord = mi - cc
    if discord > 1.0:
        cc = mi - 1.0
        discord = 1.0
    return CorrelationReport(
        concurrence=min(conc, 1.0),
        mutual_information=mi,
        classical_correlations=cc,
        discord=discord,
        entropy_candidates=cands,
        argmin_candidate=idx,
    )

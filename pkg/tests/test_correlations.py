import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xdiscord.correlations import (
    classical_correlations,
    concurrence_x,
    conditional_entropy_candidates,
    f_binary_entropy,
    full_report,
    minimal_candidate,
    mutual_information,
    quantum_discord,
)
from xdiscord.errors import ContractViolation, DomainError
from xdiscord.linalg import partial_trace, von_neumann_entropy
from xdiscord.oracles import (
    classical_correlations_bruteforce,
    discord_bruteforce,
    mutual_information_general,
    wootters_concurrence_general,
)
from xdiscord.states import (
    Bell,
    BellMixture,
    BellMixtureSpec,
    BlochParams,
    XState,
    bell_mixture,
    bell_xstate,
    bloch_params,
    canonicalize,
    from_bloch,
    random_xstate,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
PHI_PLUS = bell_xstate(Bell.PHI_PLUS)
MIXED = from_bloch(BlochParams(0, 0, 0, 0, 0))
SIGMA_XX = from_bloch(BlochParams(0, 0, 1, 0, 0))


def f_reference(t):
    mp.mp.dps = 40
    t = mp.mpf(t)
    total = mp.mpf(0)
    for u in (1 - t, 1 + t):
        if u > 0:
            total -= u / 2 * mp.log(u, 2)
    return float(total)


def random_pure_xstate(rng):
    # a|++> + b|--> or a|+-> + b|-+>
    a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
    n = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    a, b = a / n, b / n
    if rng.uniform() < 0.5:
        return XState(abs(a) ** 2, 0, 0, abs(b) ** 2, a * np.conj(b), 0)
    return XState(0, abs(a) ** 2, abs(b) ** 2, 0, 0, a * np.conj(b))


def test_f_examples():
    assert f_binary_entropy(0.0) == 0.0
    assert f_binary_entropy(1.0) == -1.0
    assert f_binary_entropy(0.6) == pytest.approx(-0.27807, abs=5e-6)
    assert f_binary_entropy(0.6) == pytest.approx(f_reference("0.6"), abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.0, max_value=1.0))
def test_f_against_high_precision(t):
    assert f_binary_entropy(t) == pytest.approx(f_reference(t), abs=1e-14)


@pytest.mark.parametrize("t", [1.0 + 1e-9, -0.5, float("nan")])
def test_f_domain(t):
    with pytest.raises(DomainError):
        f_binary_entropy(t)


def test_f_clamps_tiny_excursions():
    assert f_binary_entropy(1.0 + 1e-13) == -1.0


def test_concurrence_examples():
    assert concurrence_x(BlochParams(0, 0, 1, -1, 1)) == pytest.approx(1.0, abs=1e-15)
    assert concurrence_x(BlochParams(0, 0, 0, 0, 0)) == 0.0
    for p in (0.0, 0.2, 0.5, 0.8, 1.0):
        b = bloch_params(bell_mixture(BellMixtureSpec(BellMixture.PHI_PLUS_PSI_PLUS, p)))
        assert concurrence_x(b) == pytest.approx(abs(2 * p - 1), abs=1e-15)


def test_mutual_information_examples():
    assert mutual_information(PHI_PLUS) == pytest.approx(2.0, abs=1e-15)
    assert mutual_information(MIXED) == pytest.approx(0.0, abs=1e-15)
    assert mutual_information(SIGMA_XX) == pytest.approx(1.0, abs=1e-15)


def test_candidate_examples():
    assert conditional_entropy_candidates(BlochParams(0, 0, 1, 0, 0)) == pytest.approx((1, 0, 1), abs=1e-15)
    assert conditional_entropy_candidates(BlochParams(0, 0, 0, 0, 0)) == pytest.approx((1, 1, 1), abs=1e-15)
    s1, s2, s3 = conditional_entropy_candidates(BlochParams(0, 0, 1, -1, 1))
    assert (s2, s3) == pytest.approx((0, 0), abs=1e-15)
    assert min(s1, s2, s3) == pytest.approx(0.0, abs=1e-15)


def test_candidates_match_measured_entropies():
    # S1, S2, S3 are the conditional entropies after sigma_z, sigma_x, sigma_y on B
    from xdiscord.oracles import MeasurementBasis, conditional_entropy_measured

    rng = np.random.default_rng(31)
    bases = (MeasurementBasis(0.0, 0.0), MeasurementBasis(math.pi / 4, 0.0), MeasurementBasis(math.pi / 4, math.pi / 2))
    for _ in range(50):
        x = random_xstate(rng, canonical=True)
        got = conditional_entropy_candidates(bloch_params(x))
        want = [conditional_entropy_measured(x.matrix(), basis) for basis in bases]
        assert np.allclose(got, want, atol=1e-12)


def test_minimal_candidate_tie_breaks_low():
    assert minimal_candidate((0.3, 0.3, 0.5)) == (1, 0.3)
    assert minimal_candidate((0.5, 0.2, 0.2 + 1e-13)) == (2, 0.2)
    assert minimal_candidate((0.5, 0.2, 0.1)) == (3, 0.1)


def test_classical_correlations_examples():
    assert classical_correlations(PHI_PLUS) == pytest.approx(1.0, abs=1e-15)
    assert classical_correlations(SIGMA_XX) == pytest.approx(1.0, abs=1e-15)
    diag = XState(0.4, 0.1, 0.3, 0.2)
    assert classical_correlations(diag) == pytest.approx(classical_correlations_bruteforce(diag.matrix()), abs=1e-6)


def test_discord_examples():
    assert quantum_discord(PHI_PLUS) == pytest.approx(1.0, abs=1e-15)
    assert quantum_discord(SIGMA_XX) == pytest.approx(0.0, abs=1e-15)
    assert quantum_discord(XState(0.4, 0.1, 0.3, 0.2)) == pytest.approx(0.0, abs=1e-15)
    assert discord_bruteforce(SIGMA_XX.matrix()) == pytest.approx(0.0, abs=1e-6)


def test_entry_points_require_canonical():
    with pytest.raises(ContractViolation):
        quantum_discord(bell_xstate(Bell.PHI_MINUS))
    with pytest.raises(ContractViolation):
        classical_correlations(bell_xstate(Bell.PSI_MINUS))


def test_report_examples():
    rep = full_report(PHI_PLUS)
    assert (rep.concurrence, rep.mutual_information, rep.classical_correlations, rep.discord) == pytest.approx(
        (1, 2, 1, 1), abs=1e-15)
    rep = full_report(MIXED)
    assert (rep.concurrence, rep.mutual_information, rep.classical_correlations, rep.discord) == pytest.approx(
        (0, 0, 0, 0), abs=1e-15)
    rep = full_report(bell_mixture(BellMixtureSpec(BellMixture.PHI_PLUS_PSI_PLUS, 0.5)))
    assert (rep.concurrence, rep.mutual_information, rep.classical_correlations, rep.discord) == pytest.approx(
        (0, 1, 1, 0), abs=1e-15)


def test_report_accepts_phased_states():
    rep = full_report(bell_xstate(Bell.PSI_MINUS))
    assert (rep.concurrence, rep.discord) == pytest.approx((1, 1), abs=1e-15)


def test_endpoints_for_product_diagonal_states():
    for pa, pb in ((0.3, 0.6), (1.0, 0.5), (0.5, 0.5)):
        x = XState(pa * pb, pa * (1 - pb), (1 - pa) * pb, (1 - pa) * (1 - pb))
        rep = full_report(x)
        assert (rep.concurrence, rep.mutual_information, rep.classical_correlations, rep.discord) == pytest.approx(
            (0, 0, 0, 0), abs=1e-12)


def test_bell_endpoints():
    for kind in Bell:
        rep = full_report(bell_xstate(kind))
        assert (rep.concurrence, rep.mutual_information, rep.classical_correlations, rep.discord) == pytest.approx(
            (1, 2, 1, 1), abs=1e-14)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_report_ranges_and_identity(seed):
    rep = full_report(random_xstate(np.random.default_rng(seed)))
    assert 0.0 <= rep.concurrence <= 1.0
    assert 0.0 <= rep.discord <= 1.0
    assert 0.0 <= rep.classical_correlations <= rep.mutual_information <= 2.0
    assert rep.discord == pytest.approx(rep.mutual_information - rep.classical_correlations, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_mutual_information_eigen_route(seed):
    x = random_xstate(np.random.default_rng(seed))
    assert mutual_information(canonicalize(x)) == pytest.approx(mutual_information_general(x.matrix()), abs=1e-10)


def test_pure_states_discord_is_marginal_entropy():
    rng = np.random.default_rng(41)
    for _ in range(200):
        x = random_pure_xstate(rng)
        s_a = von_neumann_entropy(partial_trace(x.matrix(), "A"))
        rep = full_report(x)
        assert rep.discord == pytest.approx(s_a, abs=1e-6)
        # entanglement entropy from concurrence
        lam = (1 + math.sqrt(max(0.0, 1 - rep.concurrence**2))) / 2
        h = -sum(v * math.log2(v) for v in (lam, 1 - lam) if v > 0)
        assert rep.discord == pytest.approx(h, abs=1e-6)


def test_local_phase_invariance():
    rng = np.random.default_rng(51)
    for _ in range(20):
        x = random_xstate(rng)
        assert full_report(x) == full_report(canonicalize(x))
        assert discord_bruteforce(x.matrix()) == pytest.approx(discord_bruteforce(canonicalize(x).matrix()), abs=1e-6)


def test_diagonal_states_have_zero_discord():
    rng = np.random.default_rng(61)
    for _ in range(30):
        x = XState(*rng.dirichlet(np.ones(4)))
        assert quantum_discord(x) <= 1e-9
        assert discord_bruteforce(x.matrix()) <= 1e-9


def test_oracle_equivalence_sample():
    rng = np.random.default_rng(71)
    n, within = 300, 0
    for _ in range(n):
        x = random_xstate(rng)
        rep = full_report(x)
        assert rep.concurrence == pytest.approx(wootters_concurrence_general(x.matrix()), abs=1e-10)
        within += abs(rep.discord - discord_bruteforce(x.matrix())) <= 1e-3
    assert within / n >= 0.99

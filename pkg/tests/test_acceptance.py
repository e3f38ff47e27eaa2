"""Acceptance criteria 1-12, each at its stated tolerance.

Every test records its outcome before asserting, so the terminal summary
lists one pass/fail line per criterion whatever happens.
"""

import csv
import math

import numpy as np
import pytest

from conftest import record
from xdiscord.correlations import full_report, mutual_information
from xdiscord.dynamics import (
    MINUS,
    PLUS,
    CouplingConstants,
    ScenarioConfig,
    block_amplitudes,
    constant_scenario,
    evolve_xstate,
    full_evolution_operator,
    hamiltonian_function,
    propagator,
)
from xdiscord.errors import IntegrationError
from xdiscord.experiments import run_preset, tau_grid
from xdiscord.linalg import partial_trace, von_neumann_entropy
from xdiscord.oracles import OdeSettings, discord_bruteforce, ode_trajectory, wootters_concurrence_general
from xdiscord.states import (
    OFF_X_ENTRIES,
    Bell,
    BellMixture,
    BellMixtureSpec,
    XState,
    bell_mixture,
    bell_xstate,
    bloch_params,
    canonicalize,
    random_xstate,
)
from xdiscord.verification import BRIGHT_SPAN, standard_scenarios

SCENARIOS = standard_scenarios()
NAMES = list(SCENARIOS)
TAUS = tau_grid(10.0, 2000)

_trajectories = {}


def rk4_trajectory(name):
    """RK4 operators on the 2000-point grid, or the integration error; computed once."""
    if name not in _trajectories:
        cfg = SCENARIOS[name]
        try:
            _trajectories[name] = ode_trajectory(hamiltonian_function(cfg), cfg.time_from_tau(TAUS),
                                                 OdeSettings(step=1e-4))
        except IntegrationError as exc:
            _trajectories[name] = exc
    return _trajectories[name]


def analytic_operator(cfg, t):
    return full_evolution_operator(propagator(cfg, t), cfg.couplings.gzz, t)


@pytest.mark.parametrize("name", NAMES)
def test_c01_unitarity(name):
    cfg = SCENARIOS[name]
    t = cfg.time_from_tau(TAUS)
    worst = 0.0
    for block in (PLUS, MINUS):
        a, b = block_amplitudes(cfg, block, t)
        worst = max(worst, float(np.max(np.abs(np.abs(a) ** 2 + np.abs(b) ** 2 - 1))))
    assert record(1, worst <= 1e-10, f"max ||a|^2+|b|^2-1| = {worst:.2e}", name)


@pytest.mark.parametrize("name", NAMES)
def test_c02_propagator_vs_rk4(name):
    cfg = SCENARIOS[name]
    numeric = rk4_trajectory(name)
    if isinstance(numeric, IntegrationError):
        record(2, False, f"RK4 (step 1e-4) breaks down: {numeric}", name)
        pytest.fail(f"{name}: {numeric}")
    worst = max(
        float(np.max(np.abs(analytic_operator(cfg, float(t)) - u)))
        for t, u in zip(cfg.time_from_tau(TAUS), numeric)
    )
    assert record(2, worst <= 1e-6, f"sup-norm {worst:.2e}", name)


@pytest.mark.parametrize("name", NAMES)
def test_c03_x_structure_preserved(name):
    cfg = SCENARIOS[name]
    rng = np.random.default_rng(3)
    states = [random_xstate(rng).matrix() for _ in range(100)]
    numeric = rk4_trajectory(name)
    if isinstance(numeric, IntegrationError):
        # the growing pulse outruns RK4 beyond tau+ ~ 3.3; check where it is still valid
        numeric = ode_trajectory(hamiltonian_function(cfg), cfg.time_from_tau(np.linspace(0, BRIGHT_SPAN, 301)))
        span = BRIGHT_SPAN
    else:
        numeric = numeric[::10]
        span = 10.0
    worst = 0.0
    for u in numeric:
        for rho in states:
            evolved = u @ rho @ u.conj().T
            worst = max(worst, max(abs(evolved[i, j]) for i, j in OFF_X_ENTRIES))
    assert record(3, worst < 1e-10, f"max off-X entry {worst:.2e} over tau+ in [0, {span:g}]", name)


def test_c04_concurrence_equivalence():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(10_000):
        x = random_xstate(rng)
        worst = max(worst, abs(full_report(x).concurrence - wootters_concurrence_general(x.matrix())))
    assert record(4, worst <= 1e-10, f"max |C_x - C_wootters| = {worst:.2e} over 10^4 states")


def test_c05_discord_equivalence():
    rng = np.random.default_rng(5)
    n = 10_000
    exceedances = []
    for _ in range(n):
        x = random_xstate(rng)
        dev = abs(full_report(x).discord - discord_bruteforce(x.matrix()))
        if dev > 1e-3:
            exceedances.append((dev, bloch_params(canonicalize(x)).astuple()))
    for dev, b in exceedances:
        print(f"discord exceedance {dev:.3e} at (r, s, c1, c2, c3) = {tuple(round(v, 6) for v in b)}")
    fraction = 1 - len(exceedances) / n
    assert record(5, fraction >= 0.99,
                  f"{fraction:.2%} within 1e-3 over 10^4 states, {len(exceedances)} exceedances")


@pytest.mark.parametrize("name", NAMES)
def test_c06_stationary_mixtures(name):
    cfg = SCENARIOS[name]
    worst = 0.0
    for kind in (BellMixture.PHI_PLUS_PHI_MINUS, BellMixture.PSI_PLUS_PSI_MINUS):
        x0 = bell_mixture(BellMixtureSpec(kind, 0.5))
        ref = full_report(x0)
        for t in cfg.time_from_tau(TAUS):
            rep = full_report(evolve_xstate(x0, propagator(cfg, float(t))))
            worst = max(worst, abs(rep.concurrence - ref.concurrence), abs(rep.discord - ref.discord))
    assert record(6, worst <= 1e-10, f"max drift of C, D = {worst:.2e}", name)


def test_c07_field_free_endpoints():
    cfg = constant_scenario(0.0)
    psi = bell_mixture(BellMixtureSpec(BellMixture.PHI_PLUS_PSI_PLUS, 0.0))
    phi = bell_mixture(BellMixtureSpec(BellMixture.PHI_PLUS_PSI_PLUS, 1.0))
    dev_psi = dev_phi = 0.0
    for tau in TAUS:
        pair = propagator(cfg, float(cfg.time_from_tau(tau)))
        rep = full_report(evolve_xstate(psi, pair))
        dev_psi = max(dev_psi, abs(rep.concurrence - 1), abs(rep.discord - 1))
        dev_phi = max(dev_phi, abs(full_report(evolve_xstate(phi, pair)).concurrence - abs(math.cos(2 * tau))))
    zeros = [math.pi / 4 + k * math.pi / 2 for k in range(7)]
    touch = max(
        full_report(evolve_xstate(phi, propagator(cfg, float(cfg.time_from_tau(tau))))).concurrence for tau in zeros
    )
    ok = dev_psi <= 1e-9 and dev_phi <= 1e-9 and touch <= 1e-9
    assert record(7, ok, f"Psi+ dev {dev_psi:.1e}, Phi+ vs |cos 2tau+| {dev_phi:.1e}, C at zeros {touch:.1e}")


def test_c08_coupling_swap_symmetry():
    std = constant_scenario(0.0, CouplingConstants.standard())
    swp = constant_scenario(0.0, CouplingConstants.swapped())
    phi, psi = bell_xstate(Bell.PHI_PLUS), bell_xstate(Bell.PSI_PLUS)
    worst = 0.0
    # compare at equal physical time; the two presets scale tau+ differently
    for t in np.linspace(0.0, 10.0, 2000):
        ps, pw = propagator(std, t), propagator(swp, t)
        a_phi, a_psi = full_report(evolve_xstate(phi, ps)), full_report(evolve_xstate(psi, ps))
        b_phi, b_psi = full_report(evolve_xstate(phi, pw)), full_report(evolve_xstate(psi, pw))
        worst = max(
            worst,
            abs(a_phi.concurrence - b_psi.concurrence), abs(a_phi.discord - b_psi.discord),
            abs(a_psi.concurrence - b_phi.concurrence), abs(a_psi.discord - b_phi.discord),
            abs(b_phi.concurrence - 1), abs(b_phi.discord - 1),
            abs(b_psi.concurrence - abs(math.cos(2 * t))),
        )
    assert record(8, worst <= 1e-9, f"max curve mismatch {worst:.2e}")


@pytest.mark.parametrize("name", NAMES + ["const-0-swapped"])
def test_c09_gzz_invariance(name):
    if name == "const-0-swapped":
        base = constant_scenario(0.0, CouplingConstants.swapped())
    else:
        base = SCENARIOS[name]
    rng = np.random.default_rng(9)
    initial = [bell_mixture(BellMixtureSpec(BellMixture.PHI_PLUS_PSI_PLUS, 0.3)), random_xstate(rng)]
    worst = 0.0
    for tau in TAUS[::10]:
        series = []
        for gzz in (0.0, 0.5, 3.0):
            cfg = ScenarioConfig(base.couplings.with_gzz(gzz), base.drive_plus, base.drive_minus)
            t = float(cfg.time_from_tau(tau))
            u = analytic_operator(cfg, t)
            series.append([full_report(XState.from_matrix(u @ x.matrix() @ u.conj().T)) for x in initial])
        for other in series[1:]:
            for r0, r1 in zip(series[0], other):
                worst = max(worst, *(abs(a - b) for a, b in zip(
                    (r0.concurrence, r0.discord, r0.mutual_information, r0.classical_correlations),
                    (r1.concurrence, r1.discord, r1.mutual_information, r1.classical_correlations))))
    assert record(9, worst <= 1e-10, f"max report change {worst:.2e}", name)


def test_c10_sudden_death_and_revival(tmp_path):
    result = run_preset("fig4", tmp_path, make_svg=False)
    intervals = result.sudden_death[BellMixture.PHI_PLUS_PSI_PLUS.value].get("0.5", [])
    with open(tmp_path / "fig4_phi_plus_psi_plus.csv") as fh:
        c = [float(r["concurrence"]) for r in csv.DictReader(fh) if float(r["p"]) == 0.5]
    detail = (f"{len(intervals)} zero intervals reported; p=0.5 has {sum(v == 0.0 for v in c)} exact zeros, "
              f"max C = {max(c):.4f}")
    assert record(10, len(intervals) >= 1, detail)


def test_c11_diagonal_states_have_zero_discord():
    rng = np.random.default_rng(11)
    worst_analytic = worst_oracle = 0.0
    for _ in range(1000):
        x = XState(*rng.dirichlet(np.ones(4)))
        worst_analytic = max(worst_analytic, full_report(x).discord)
        worst_oracle = max(worst_oracle, discord_bruteforce(x.matrix()))
    ok = worst_analytic <= 1e-9 and worst_oracle <= 1e-9
    assert record(11, ok, f"max D analytic {worst_analytic:.1e}, oracle {worst_oracle:.1e}")


def test_c12_entropy_consistency():
    rng = np.random.default_rng(12)
    worst = 0.0
    for _ in range(1000):
        x = random_xstate(rng)
        rho = x.matrix()
        eigen_route = (von_neumann_entropy(partial_trace(rho, "A")) + von_neumann_entropy(partial_trace(rho, "B"))
                       - von_neumann_entropy(rho))
        worst = max(worst, abs(mutual_information(canonicalize(x)) - eigen_route))
    assert record(12, worst <= 1e-10, f"max |I_bloch - I_eigen| = {worst:.2e}")

"""Command-line front end: ``xdiscord {evolve,sweep,run-preset,verify,report}``.

Exit status: 0 success, 1 usage error, 2 validation failure, 3 verification failure.
Every option may also come from a JSON document given with ``--config``;
explicit flags take precedence over the file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict

import numpy as np

from .correlations import full_report
from .dynamics import (
    CouplingConstants,
    ScenarioConfig,
    constant_scenario,
    field_profile,
    propagator,
    evolve_xstate,
    sech_scenario,
)
from .errors import InvalidStateError, XDiscordError
from .experiments import (
    DEFAULT_P_VALUES,
    DEFAULT_POINTS,
    DEFAULT_TAU_MAX,
    PRESETS,
    run_preset,
    sweep,
    tau_grid,
    write_csv,
)
from .linalg import check_density_matrix
from .oracles import discord_bruteforce, mutual_information_general, wootters_concurrence_general
from .states import OFF_X_ENTRIES, BellMixture, BellMixtureSpec, XState, bell_mixture
from .verification import SUITES, verify

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_VERIFICATION = 0, 1, 2, 3

SCENARIOS = {
    "constant": None,
    "sech-sech": ("sech", "sech"),
    "sech-bright": ("sech", "bright"),
    "bright-sech": ("bright", "sech"),
    "bright-bright": ("bright", "bright"),
    "case1": ("sech", "sech"),
    "case2": ("sech", "bright"),
}

DEFAULTS = {
    "scenario": "constant",
    "omega_plus": 0.0,
    "omega_minus": None,
    "couplings": "standard",
    "coupling_c": 1.0,
    "gxx": None,
    "gyy": None,
    "gxy": None,
    "gyx": None,
    "gzz": 0.0,
    "mixture": BellMixture.PHI_PLUS_PSI_PLUS.value,
    "p": list(DEFAULT_P_VALUES),
    "tau_max": DEFAULT_TAU_MAX,
    "n_points": DEFAULT_POINTS,
    "tau": [0.0],
    "state": None,
    "out": "-",
    "jobs": 1,
    "preset": None,
    "outdir": ".",
    "no_svg": False,
    "suite": "all",
    "samples": None,
    "seed": 0,
    "step": 1e-4,
    "oracle": False,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- argument types -------------------------------------------------------------


def _finite(flag: str):
    def conv(text):
        try:
            v = float(text)
        except (TypeError, ValueError):
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")
        if not math.isfinite(v):
            raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
        return v
    return conv


def _probability(text):
    v = _finite("--p")(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{v:g} is outside [0, 1]")
    return v


def _positive(flag: str):
    def conv(text):
        v = _finite(flag)(text)
        if v <= 0.0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
        return v
    return conv


def _nonneg(flag: str):
    def conv(text):
        v = _finite(flag)(text)
        if v < 0.0:
            raise argparse.ArgumentTypeError(f"must be non-negative, got {text!r}")
        return v
    return conv


def _count(flag: str, minimum: int = 1):
    def conv(text):
        try:
            v = int(text)
        except (TypeError, ValueError):
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}, got {text!r}")
        return v
    return conv


def _choice(flag: str, options):
    def conv(text):
        if text not in options:
            raise argparse.ArgumentTypeError(f"invalid choice {text!r} (choose from {', '.join(options)})")
        return text
    return conv


_MIXTURES = tuple(m.value for m in BellMixture)

# converter per option, shared by flags and config-file values
CONVERTERS = {
    "scenario": _choice("--scenario", tuple(SCENARIOS)),
    "omega_plus": _finite("--omega-plus"),
    "omega_minus": _finite("--omega-minus"),
    "couplings": _choice("--couplings", ("standard", "swapped")),
    "coupling_c": _finite("--coupling-c"),
    "gxx": _finite("--gxx"),
    "gyy": _finite("--gyy"),
    "gxy": _finite("--gxy"),
    "gyx": _finite("--gyx"),
    "gzz": _finite("--gzz"),
    "mixture": _choice("--mixture", _MIXTURES),
    "p": _probability,
    "tau_max": _positive("--tau-max"),
    "n_points": _count("--n-points", 2),
    "tau": _nonneg("--tau"),
    "jobs": _count("--jobs"),
    "samples": _count("--samples"),
    "seed": _count("--seed", 0),
    "step": _positive("--step"),
    "suite": _choice("--suite", SUITES + ("all",)),
}
_LIST_OPTIONS = {"p", "tau"}


# --- parser -----------------------------------------------------------------------


def _scenario_group(parser):
    g = parser.add_argument_group("scenario")
    g.add_argument("--scenario", type=CONVERTERS["scenario"], metavar="|".join(SCENARIOS),
                   help="field drive per block; case1 = sech-sech, case2 = sech-bright")
    g.add_argument("--omega-plus", type=CONVERTERS["omega_plus"], help="static field W+ (constant scenario)")
    g.add_argument("--omega-minus", type=CONVERTERS["omega_minus"], help="static field W- (default 2 W+)")
    g.add_argument("--couplings", type=CONVERTERS["couplings"], metavar="standard|swapped",
                   help="coupling preset; standard: gxx = gyy = 2gxy = 2gyx = c")
    g.add_argument("--coupling-c", type=CONVERTERS["coupling_c"], help="scale c of the coupling preset")
    for name in ("gxx", "gyy", "gxy", "gyx"):
        g.add_argument(f"--{name}", type=CONVERTERS[name], help="explicit coupling (overrides the preset)")
    g.add_argument("--gzz", type=CONVERTERS["gzz"], help="zz coupling (only adds block phases)")


def _time_group(parser):
    parser.add_argument("--tau-max", type=CONVERTERS["tau_max"], help="end of the tau+ axis")
    parser.add_argument("--n-points", type=CONVERTERS["n_points"], help="points on the tau+ axis")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="JSON document with option values")

    parser = _Parser(prog="xdiscord", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("evolve", parents=[common], help="evolve one initial state to given times")
    _scenario_group(p)
    p.add_argument("--mixture", type=CONVERTERS["mixture"], metavar="|".join(_MIXTURES))
    p.add_argument("--p", type=CONVERTERS["p"], nargs="*", help="mixing weight (exactly one)")
    p.add_argument("--state", metavar="FILE", help="initial X-state as JSON 4x4 [re, im] array")
    p.add_argument("--tau", type=CONVERTERS["tau"], nargs="*", help="tau+ values to report")
    p.add_argument("--out", help="output file ('-' for stdout)")

    p = sub.add_parser("sweep", parents=[common], help="CSV time series over a p-list")
    _scenario_group(p)
    p.add_argument("--mixture", type=CONVERTERS["mixture"], metavar="|".join(_MIXTURES))
    p.add_argument("--p", type=CONVERTERS["p"], nargs="*", help="mixing weights")
    _time_group(p)
    p.add_argument("--jobs", type=CONVERTERS["jobs"], help="worker processes")
    p.add_argument("--out", help="output CSV ('-' for stdout)")

    p = sub.add_parser("run-preset", parents=[common], help="reproduce a figure configuration")
    p.add_argument("preset", nargs="?", metavar="|".join(PRESETS))
    p.add_argument("--outdir", help="directory for CSV, SVG and summary files")
    p.add_argument("--no-svg", action="store_true", default=None, help="skip SVG output")
    p.add_argument("--jobs", type=CONVERTERS["jobs"], help="worker processes")

    p = sub.add_parser("verify", parents=[common], help="closed forms against the oracles")
    p.add_argument("--suite", type=CONVERTERS["suite"], metavar="|".join(SUITES + ("all",)))
    p.add_argument("--samples", type=CONVERTERS["samples"], help="random states per suite")
    p.add_argument("--seed", type=CONVERTERS["seed"])
    p.add_argument("--tau-max", type=CONVERTERS["tau_max"])
    p.add_argument("--n-points", type=CONVERTERS["n_points"], help="comparison points for the propagator suite")
    p.add_argument("--step", type=CONVERTERS["step"], help="RK4 step")
    p.add_argument("--out", help="JSON report file ('-' for stdout)")

    p = sub.add_parser("report", parents=[common], help="correlations of one density matrix")
    p.add_argument("state", nargs="?", metavar="FILE", help="JSON 4x4 [re, im] array ('-' for stdin)")
    p.add_argument("--oracle", action="store_true", default=None, help="also run the brute-force oracles")
    p.add_argument("--out", help="output file ('-' for stdout)")

    return parser


# --- option resolution ---------------------------------------------------------


def _load_config(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"--config: invalid JSON in {path}: {exc}")
    if not isinstance(doc, dict):
        raise UsageError("--config: top level must be an object")
    out = {}
    for key, value in doc.items():
        name = key.replace("-", "_")
        if name not in DEFAULTS:
            raise UsageError(f"--config: unknown option {key!r}")
        if name == "couplings" and isinstance(value, dict):
            for g, v in value.items():
                if g not in ("gxx", "gyy", "gxy", "gyx", "gzz"):
                    raise UsageError(f"--config: unknown coupling {g!r}")
                out[g] = _convert(g, v)
            continue
        out[name] = _convert(name, value)
    return out


def _convert(name, value):
    conv = CONVERTERS.get(name)
    try:
        if name in _LIST_OPTIONS:
            items = value if isinstance(value, list) else [value]
            return [conv(str(v)) for v in items]
        if conv is None or value is None:
            return value
        return conv(str(value))
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"--config: {name.replace('_', '-')}: {exc}")


def resolve(args: argparse.Namespace) -> dict:
    """Defaults, then the config file, then explicit flags."""
    opts = dict(DEFAULTS)
    if getattr(args, "config", None):
        opts.update(_load_config(args.config))
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        opts[key] = value
    for key in _LIST_OPTIONS:
        if isinstance(opts[key], list) and not opts[key]:
            raise UsageError(f"--{key}: empty list")
    return opts


def scenario_from(opts: dict) -> ScenarioConfig:
    c = opts["coupling_c"]
    base = CouplingConstants.swapped(c) if opts["couplings"] == "swapped" else CouplingConstants.standard(c)
    couplings = CouplingConstants(
        gxx=base.gxx if opts["gxx"] is None else opts["gxx"],
        gyy=base.gyy if opts["gyy"] is None else opts["gyy"],
        gzz=opts["gzz"],
        gxy=base.gxy if opts["gxy"] is None else opts["gxy"],
        gyx=base.gyx if opts["gyx"] is None else opts["gyx"],
    )
    drives = SCENARIOS[opts["scenario"]]
    if drives is None:
        return constant_scenario(opts["omega_plus"], couplings, opts["omega_minus"])
    if couplings.gamma(+1) == 0 or couplings.gamma(-1) == 0:
        raise UsageError("pulse scenarios need nonzero transverse couplings in both blocks")
    return sech_scenario(*drives, couplings=couplings)


# --- I/O helpers -------------------------------------------------------------------


def _open_out(path):
    if path in (None, "-"):
        return _NoClose(sys.stdout)
    return open(path, "w", newline="")


class _NoClose:
    def __init__(self, stream):
        self.stream = stream

    def __enter__(self):
        return self.stream

    def __exit__(self, *exc):
        self.stream.flush()
        return False


def _emit_json(obj, path) -> None:
    with _open_out(path) as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def _json_default(o):
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def read_density_matrix(source) -> np.ndarray:
    """Parse a 4x4 array of ``[re, im]`` pairs (optionally under key ``"rho"``)."""
    try:
        if source in (None, "-"):
            doc = json.load(sys.stdin)
        else:
            with open(source) as fh:
                doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read state file {source}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"state file is not valid JSON: {exc}")
    if isinstance(doc, dict):
        doc = doc.get("rho")
    try:
        arr = np.asarray(doc, dtype=float)
    except (TypeError, ValueError):
        raise InvalidStateError("density matrix must be a 4x4 array of [re, im] pairs")
    if arr.shape != (4, 4, 2):
        raise InvalidStateError(f"density matrix must have shape 4x4x2, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidStateError("density matrix has non-finite entries")
    return check_density_matrix(arr[..., 0] + 1j * arr[..., 1])


def _state_entries(x: XState) -> dict:
    return {
        "rho11": x.rho11, "rho22": x.rho22, "rho33": x.rho33, "rho44": x.rho44,
        "rho14": [x.rho14.real, x.rho14.imag], "rho23": [x.rho23.real, x.rho23.imag],
    }


def _is_x_shaped(rho: np.ndarray, atol: float = 1e-12) -> bool:
    return bool(max(abs(rho[i, j]) for i, j in OFF_X_ENTRIES) <= atol)


# --- subcommands --------------------------------------------------------------------


def cmd_evolve(opts) -> int:
    cfg = scenario_from(opts)
    if opts["state"] is not None:
        rho = read_density_matrix(opts["state"])
        if not _is_x_shaped(rho):
            raise InvalidStateError("initial state is not an X-state")
        x0 = XState.from_matrix(rho)
        origin = {"state_file": opts["state"]}
    else:
        if len(opts["p"]) != 1:
            raise UsageError("--p: evolve takes exactly one value")
        mixture = BellMixture(opts["mixture"])
        x0 = bell_mixture(BellMixtureSpec(mixture, opts["p"][0]))
        origin = {"mixture": mixture.value, "p": opts["p"][0]}
    out = []
    for tau in sorted(opts["tau"]):
        t = float(cfg.time_from_tau(tau))
        pair = propagator(cfg, t)
        x = evolve_xstate(x0, pair)
        w1, w2 = field_profile(cfg, t)
        out.append({
            "tau_plus": tau,
            "t": t,
            "fields": {"omega1": float(w1), "omega2": float(w2)},
            "propagator": {k: [v.real, v.imag] for k, v in asdict(pair).items()},
            "state": _state_entries(x),
            "report": asdict(full_report(x)),
        })
    _emit_json({"scenario": cfg.label(), "couplings": asdict(cfg.couplings), **origin, "series": out},
               opts["out"])
    return EXIT_OK


def cmd_sweep(opts) -> int:
    cfg = scenario_from(opts)
    rows = sweep(cfg, BellMixture(opts["mixture"]), opts["p"],
                 tau_grid(opts["tau_max"], opts["n_points"]), workers=opts["jobs"])
    with _open_out(opts["out"]) as fh:
        write_csv(rows, fh)
    return EXIT_OK


def cmd_run_preset(opts) -> int:
    name = opts["preset"]
    if name is None:
        raise UsageError("missing preset name")
    if name not in PRESETS:
        raise UsageError(f"unknown preset {name!r} (choose from {', '.join(PRESETS)})")
    result = run_preset(name, opts["outdir"], make_svg=not opts["no_svg"], workers=opts["jobs"])
    _emit_json({"preset": name, "files": result.files, "sudden_death_intervals": result.sudden_death}, "-")
    return EXIT_OK


def cmd_verify(opts) -> int:
    report = verify(opts["suite"], opts["samples"], opts["seed"], opts["tau_max"], opts["step"], opts["n_points"])
    _emit_json(report, opts["out"])
    return EXIT_OK if report["passed"] else EXIT_VERIFICATION


def cmd_report(opts) -> int:
    rho = read_density_matrix(opts["state"])
    out = {"x_state": _is_x_shaped(rho)}
    if out["x_state"]:
        out["analytic"] = asdict(full_report(XState.from_matrix(rho)))
    elif not opts["oracle"]:
        raise InvalidStateError("state is not an X-state; the analytic path needs one (use --oracle)")
    if opts["oracle"]:
        mi = mutual_information_general(rho)
        d = discord_bruteforce(rho)
        out["oracle"] = {
            "concurrence": wootters_concurrence_general(rho),
            "mutual_information": mi,
            "classical_correlations": mi - d,
            "discord": d,
        }
    _emit_json(out, opts["out"])
    return EXIT_OK


COMMANDS = {
    "evolve": cmd_evolve,
    "sweep": cmd_sweep,
    "run-preset": cmd_run_preset,
    "verify": cmd_verify,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = resolve(args)
        return COMMANDS[args.command](opts)
    except UsageError as exc:
        print(f"xdiscord {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except XDiscordError as exc:
        print(f"xdiscord {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"xdiscord {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

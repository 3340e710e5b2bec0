"""``isotau`` command-line front end.

Every command prints one JSON report on stdout.  Complex numbers are
written as ``[re, im]`` and every report carries ``schemaVersion``.
Diagnostics go to stderr.  Exit codes:

    0  success
    2  invalid configuration or malformed input
    3  non-generic data (GenericityError and its relatives)
    4  a pole was met on the integration path
    5  a tolerance check failed
"""

from __future__ import annotations

import argparse
import cmath
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .errors import (
    DegenerateError,
    GenericityError,
    PoleEncountered,
    PoleError,
    ResonanceError,
    ToleranceError,
    ValidityError,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_GENERICITY = 3
EXIT_POLE = 4
EXIT_TOLERANCE = 5

TOL_MIN, TOL_MAX = 1e-14, 1e-2
T_MIN = 8.0
T0_MAX = 0.01

COMMANDS = ("specfun-eval", "pvi-asymp", "pvi-upsilon", "pvi-verify",
            "pii-upsilon", "pii-verify", "pii-hm-check", "pii-chi")

SPECFUN_NAMES = ("gamma", "loggamma", "digamma", "barnesg", "logbarnesg",
                 "ghat", "logghat", "dilog", "hyp2f1")


class ConfigError(Exception):
    """Bad flags or an input file that cannot be used."""


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    tol: float | None = None
    T: float | None = None
    t0: float | None = None
    output_format: str = "json"
    csv: str | None = None
    max_rel_error: float | None = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.tol is not None and not TOL_MIN <= self.tol <= TOL_MAX:
            raise ConfigError(f"tolerance {self.tol!r} outside [{TOL_MIN}, {TOL_MAX}]")
        if self.t0 is not None and not 0.0 < self.t0 <= T0_MAX:
            raise ConfigError(f"t0 {self.t0!r} outside (0, {T0_MAX}]")
        if self.T is not None and not self.T >= T_MIN:
            raise ConfigError(f"T {self.T!r} must be at least {T_MIN}")
        if self.max_rel_error is not None and not self.max_rel_error > 0:
            raise ConfigError("--max-rel-error must be positive")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"unknown output format {self.output_format!r}")


# ---------------------------------------------------------------------------
# serialization helpers


def cpair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _to_complex(value, name):
    from .specfun import parse_complex

    if isinstance(value, bool):
        raise ConfigError(f"{name}: expected a number")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 \
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(value[0], value[1])
    if isinstance(value, str):
        try:
            return parse_complex(value)
        except ValueError as exc:
            raise ConfigError(f"{name}: {exc}") from None
    raise ConfigError(f"{name}: expected a number, a string or a [re, im] pair")


def _load_json(path):
    if path is None:
        raise ConfigError("an input file is required for this command")
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: malformed JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return data


def load_monodromy(path):
    """PVI monodromy point from a JSON file.

    Accepted keys: theta0, thetat, theta1, thetaInf (or a four-entry
    ``theta`` list), sigma, and one of eta or expIEta.
    """
    from .pvi_monodromy import PVIMonodromy, ThetaData

    d = _load_json(path)
    if "theta" in d:
        th = d["theta"]
        if not isinstance(th, list) or len(th) != 4:
            raise ConfigError("theta must be a list of four numbers")
        theta = [_to_complex(x, f"theta[{k}]") for k, x in enumerate(th)]
    else:
        try:
            theta = [_to_complex(d[k], k) for k in ("theta0", "thetat", "theta1", "thetaInf")]
        except KeyError as exc:
            raise ConfigError(f"missing key {exc.args[0]!r}") from None
    if "sigma" not in d:
        raise ConfigError("missing key 'sigma'")
    sigma = _to_complex(d["sigma"], "sigma")
    if "expIEta" in d:
        return PVIMonodromy.create(ThetaData(*theta), sigma, exp_i_eta=_to_complex(d["expIEta"], "expIEta"))
    if "eta" in d:
        return PVIMonodromy.create(ThetaData(*theta), sigma, eta=_to_complex(d["eta"], "eta"))
    raise ConfigError("one of 'eta' or 'expIEta' is required")


def load_stokes(path):
    """PII Stokes data from {s1, s2}, {s1, s3} or all three."""
    from .pii import PIIStokes

    d = _load_json(path)
    if "s1" not in d:
        raise ConfigError("missing key 's1'")
    s1 = _to_complex(d["s1"], "s1")
    has2, has3 = "s2" in d, "s3" in d
    try:
        if has2 and has3:
            return PIIStokes(s1, _to_complex(d["s2"], "s2"), _to_complex(d["s3"], "s3"))
        if has2:
            return PIIStokes.from_s1_s2(s1, _to_complex(d["s2"], "s2"))
        if has3:
            return PIIStokes.from_s1_s3(s1, _to_complex(d["s3"], "s3"))
    except GenericityError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError("one of 's2' or 's3' is required")


def _load_pii_point(path):
    """Either Stokes data or exponents {mu, nu, eta} directly."""
    d = _load_json(path)
    if "mu" in d or "nu" in d:
        try:
            return None, tuple(_to_complex(d[k], k) for k in ("mu", "nu", "eta"))
        except KeyError as exc:
            raise ConfigError(f"missing key {exc.args[0]!r}") from None
    from .pii import exponents_from_stokes

    s = load_stokes(path)
    e = exponents_from_stokes(s)
    return s, (e.mu, e.nu, e.eta)


def default_tol(fallback: float) -> float:
    env = os.environ.get("ISOTAU_TOL")
    if env is None or env.strip() == "":
        return fallback
    try:
        return float(env)
    except ValueError:
        raise ConfigError(f"ISOTAU_TOL={env!r} is not a number") from None


def _log(msg: str) -> None:
    print(f"isotau: {msg}", file=sys.stderr)


# ---------------------------------------------------------------------------
# commands; each returns (report, exit status)


def cmd_specfun_eval(cfg: RunConfig):
    from . import specfun as sf

    fn = cfg.extra["fn"]
    z = cfg.extra["z"]
    if fn == "hyp2f1":
        a, b, c = (cfg.extra[k] for k in ("a", "b", "c"))
        if None in (a, b, c):
            raise ConfigError("hyp2f1 needs --a, --b and --c")
        value = sf.hyp2f1(a, b, c, z)
        params = {"a": cpair(a), "b": cpair(b), "c": cpair(c)}
    else:
        table = {
            "gamma": sf.gamma, "loggamma": sf.log_gamma, "digamma": sf.digamma,
            "barnesg": sf.barnes_g, "logbarnesg": sf.log_barnes_g,
            "ghat": sf.g_hat, "logghat": sf.log_g_hat, "dilog": sf.dilog,
        }
        value = table[fn](z)
        params = {}
    report = {"fn": fn, "z": cpair(z), "value": cpair(value)}
    report.update(params)
    return report, EXIT_OK


def _expansion_dict(e):
    return {
        "exponent": cpair(e.exponent),
        "coeffPlus": cpair(e.coeffPlus),
        "coeffMinus": cpair(e.coeffMinus),
        "coeffLinear": cpair(e.coeffLinear),
        "kappa": cpair(e.kappa),
        "sigma": cpair(e.sigma),
    }


def cmd_pvi_asymp(cfg: RunConfig):
    from .pvi_monodromy import crossing
    from .pvi_tau import tau_expansion_one, tau_expansion_zero

    m = load_monodromy(cfg.input)
    c = crossing(m)
    report = {
        "atZero": _expansion_dict(tau_expansion_zero(m)),
        "atOne": _expansion_dict(tau_expansion_one(m, c)),
        "sigmaBar": cpair(c.sigmaBar),
        "expIEtaBar": cpair(c.exp_i_etaBar),
    }
    t = cfg.extra.get("t")
    if t is not None:
        if not 0.0 < t < 1.0:
            raise ConfigError("--t must lie in (0, 1)")
        e0 = tau_expansion_zero(m)
        e1 = tau_expansion_one(m, c)
        report["t"] = t
        report["logTauZero"] = cpair(e0.log_tau(t))
        report["logTauOne"] = cpair(e1.log_tau(1.0 - t))
    return report, EXIT_OK


def cmd_pvi_upsilon(cfg: RunConfig):
    from .pvi_monodromy import crossing
    from .pvi_tau import log_upsilon_pvi, upsilon_ingredients

    m = load_monodromy(cfg.input)
    c = crossing(m)
    ing = upsilon_ingredients(m, c)
    lg = log_upsilon_pvi(m, c)
    report = {
        "upsilon": cpair(cmath.exp(lg)),
        "logUpsilon": cpair(lg),
        "sigmaBar": cpair(c.sigmaBar),
        "varsigma": cpair(ing.varsigma),
    }
    return report, EXIT_OK


def cmd_pvi_verify(cfg: RunConfig):
    from .pvi_schlesinger import upsilon_numeric, write_trajectory_csv

    m = load_monodromy(cfg.input)
    tol = cfg.tol
    t0 = cfg.t0 if cfg.t0 is not None else 1e-4
    limit = cfg.max_rel_error if cfg.max_rel_error is not None else 2e-2
    res = upsilon_numeric(m, t0=t0, tol=tol)
    traj = res.trajectory
    report = {
        "upsilonNumeric": cpair(res.value),
        "upsilonClosedForm": cpair(res.closed_form),
        "relError": res.rel_error,
        "polesDetected": [],
        "t0": t0,
        "tol": tol,
        "steps": int(len(traj.t) - 1),
        "retries": traj.retries,
        "spectrumDrift": traj.spectrum_drift(),
        "sumDrift": traj.sum_drift(),
    }
    if cfg.csv:
        write_trajectory_csv(traj, cfg.csv)
        _log(f"trajectory written to {cfg.csv}")
    _log(f"relative error {res.rel_error:.3e} against limit {limit:.1e}")
    return report, (EXIT_OK if res.rel_error <= limit else EXIT_TOLERANCE)


def cmd_pii_upsilon(cfg: RunConfig):
    from .pii import log_upsilon_pii_from_exponents

    s, (mu, nu, eta) = _load_pii_point(cfg.input)
    lg = log_upsilon_pii_from_exponents(mu, nu, eta)
    report = {
        "upsilon": cpair(cmath.exp(lg)),
        "logUpsilon": cpair(lg),
        "mu": cpair(mu),
        "nu": cpair(nu),
        "eta": cpair(eta),
    }
    if s is not None:
        report["stokes"] = {"s1": cpair(s.s1), "s2": cpair(s.s2), "s3": cpair(s.s3)}
    return report, EXIT_OK


def cmd_pii_verify(cfg: RunConfig):
    from .pii import upsilon_pii_numeric, write_trajectory_csv

    s = load_stokes(cfg.input)
    T = cfg.T if cfg.T is not None else 40.0
    if T < 25.0:
        raise ConfigError("pii verify needs T >= 25 for the asymptotic initial data")
    limit = cfg.max_rel_error if cfg.max_rel_error is not None else 1e-2
    res = upsilon_pii_numeric(s, T=T, tol=cfg.tol)
    traj = res.trajectory
    report = {
        "upsilonNumeric": cpair(res.value),
        "upsilonClosedForm": cpair(res.closed_form),
        "relError": res.rel_error,
        "relErrorUncorrected": res.raw_rel_error,
        "polesDetected": [],
        "T": T,
        "tol": cfg.tol,
        "steps": int(len(traj.t) - 1),
        "retries": traj.retries,
        "hamiltonianDrift": traj.hamiltonian_drift(),
        "actionIdentityResidual": traj.action_identity_residual(),
    }
    if cfg.csv:
        write_trajectory_csv(traj, cfg.csv)
        _log(f"trajectory written to {cfg.csv}")
    _log(f"relative error {res.rel_error:.3e} against limit {limit:.1e}")
    return report, (EXIT_OK if res.rel_error <= limit else EXIT_TOLERANCE)


def cmd_pii_hm_check(cfg: RunConfig):
    from .pii import hastings_mcleod_check

    T = cfg.T if cfg.T is not None else 12.0
    limit = cfg.max_rel_error if cfg.max_rel_error is not None else 1e-3
    rep = hastings_mcleod_check(T=T, tol=min(cfg.tol, 1e-10))
    report = {
        "upsilonNumeric": cpair(rep.value),
        "upsilonReference": cpair(rep.reference),
        "relError": rep.relError,
        "T": rep.T,
        "nodes": rep.nodes,
        "minimumU": rep.minimum_u,
    }
    _log(f"relative error {rep.relError:.3e} against limit {limit:.1e}")
    return report, (EXIT_OK if rep.relError <= limit else EXIT_TOLERANCE)


def cmd_pii_chi(cfg: RunConfig):
    from .pii import chi_and_periodicity

    s = load_stokes(cfg.input)
    rep = chi_and_periodicity(s)
    report = {
        "chi": cpair(rep.chi),
        "residualMinus": rep.residualMinus,
        "residualPlus": rep.residualPlus,
        "upsilonRatioResidual": rep.upsilonRatioResidual,
        "expIRhoMinus": cpair(rep.expIRhoMinus),
        "expIRhoPlus": cpair(rep.expIRhoPlus),
    }
    worst = max(rep.residualMinus, rep.residualPlus, rep.upsilonRatioResidual)
    return report, (EXIT_OK if worst <= cfg.tol else EXIT_TOLERANCE)


HANDLERS = {
    "specfun-eval": cmd_specfun_eval,
    "pvi-asymp": cmd_pvi_asymp,
    "pvi-upsilon": cmd_pvi_upsilon,
    "pvi-verify": cmd_pvi_verify,
    "pii-upsilon": cmd_pii_upsilon,
    "pii-verify": cmd_pii_verify,
    "pii-hm-check": cmd_pii_hm_check,
    "pii-chi": cmd_pii_chi,
}

DEFAULT_TOL = {
    "pvi-verify": 1e-10,
    "pii-verify": 1e-11,
    "pii-hm-check": 1e-13,
    "pii-chi": 1e-10,
}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isotau", description="Tau-function connection constants for PVI and PII.")
    p.add_argument("--version", action="version", version=f"isotau {__version__}")
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    g = top.add_parser("specfun", help="special functions")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    e = sub.add_parser("eval", help="evaluate one function at one point")
    e.add_argument("--fn", required=True, choices=SPECFUN_NAMES)
    e.add_argument("--z", required=True, help='complex argument such as "0.3+0.2i"')
    e.add_argument("--a")
    e.add_argument("--b")
    e.add_argument("--c")

    g = top.add_parser("pvi", help="Painleve VI")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    a = sub.add_parser("asymp", help="short-distance expansions at t = 0 and t = 1")
    a.add_argument("--monodromy", required=True)
    a.add_argument("--t", type=float, help="also evaluate both log tau expansions at this t")
    u = sub.add_parser("upsilon", help="closed-form connection constant")
    u.add_argument("--monodromy", required=True)
    v = sub.add_parser("verify", help="Schlesinger integration cross-check")
    v.add_argument("--monodromy", required=True)
    v.add_argument("--t0", type=float, default=1e-4)
    v.add_argument("--tol", type=float)
    v.add_argument("--max-rel-error", type=float)
    v.add_argument("--csv", help="write the trajectory to this CSV file")

    g = top.add_parser("pii", help="Painleve II")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    u = sub.add_parser("upsilon", help="closed-form connection constant")
    u.add_argument("--stokes", required=True, help="{s1, s2 | s3} or exponents {mu, nu, eta}")
    v = sub.add_parser("verify", help="ODE integration cross-check on [-T, T]")
    v.add_argument("--stokes", required=True)
    v.add_argument("--T", type=float, default=40.0)
    v.add_argument("--tol", type=float)
    v.add_argument("--max-rel-error", type=float)
    v.add_argument("--csv", help="write t, Re/Im u, v, H to this CSV file")
    h = sub.add_parser("hm-check", help="Hastings-McLeod constant")
    h.add_argument("--T", type=float, default=12.0)
    h.add_argument("--tol", type=float)
    h.add_argument("--max-rel-error", type=float)
    c = sub.add_parser("chi", help="chi and its quasi-periodicity residuals")
    c.add_argument("--stokes", required=True)
    c.add_argument("--tol", type=float)
    return p


def config_from_args(ns) -> RunConfig:
    command = f"{ns.group}-{ns.action}"
    cfg = RunConfig(command=command)
    cfg.input = getattr(ns, "monodromy", None) or getattr(ns, "stokes", None)
    cfg.T = getattr(ns, "T", None)
    cfg.t0 = getattr(ns, "t0", None)
    cfg.csv = getattr(ns, "csv", None)
    if cfg.csv:
        cfg.output_format = "csv"
    cfg.max_rel_error = getattr(ns, "max_rel_error", None)
    tol = getattr(ns, "tol", None)
    if tol is None and command in DEFAULT_TOL:
        tol = default_tol(DEFAULT_TOL[command])
    cfg.tol = tol
    if command == "specfun-eval":
        cfg.extra["fn"] = ns.fn
        cfg.extra["z"] = _to_complex(ns.z, "--z")
        for k in ("a", "b", "c"):
            val = getattr(ns, k)
            cfg.extra[k] = None if val is None else _to_complex(val, f"--{k}")
    if command == "pvi-asymp":
        cfg.extra["t"] = ns.t
    cfg.validate()
    return cfg


def run(cfg: RunConfig):
    """Execute a validated configuration; returns (report, exit status)."""
    report, status = HANDLERS[cfg.command](cfg)
    out = {"schemaVersion": SCHEMA_VERSION, "command": cfg.command}
    out.update(report)
    return out, status


def _emit(report) -> None:
    sys.stdout.write(json.dumps(report, indent=2, allow_nan=True) + "\n")
    sys.stdout.flush()


def main(argv=None) -> int:
    cfg = None
    try:
        cfg = config_from_args(build_parser().parse_args(argv))
        report, status = run(cfg)
    except ConfigError as exc:
        _log(f"invalid configuration: {exc}")
        return EXIT_CONFIG
    except ValidityError as exc:
        _log(f"invalid configuration: {exc}")
        return EXIT_CONFIG
    except (GenericityError, DegenerateError, ResonanceError, PoleError) as exc:
        _log(f"non-generic data: {exc}")
        return EXIT_GENERICITY
    except PoleEncountered as exc:
        loc = "unknown" if exc.location is None else repr(exc.location)
        _log(f"pole encountered at t = {loc}: {exc}")
        poles = [] if exc.location is None else [float(exc.location)]
        _emit({"schemaVersion": SCHEMA_VERSION, "command": cfg.command, "polesDetected": poles})
        return EXIT_POLE
    except ToleranceError as exc:
        _log(f"tolerance failure: {exc}")
        return EXIT_TOLERANCE
    except ValueError as exc:
        _log(f"invalid configuration: {exc}")
        return EXIT_CONFIG
    _emit(report)
    return status


if __name__ == "__main__":
    sys.exit(main())

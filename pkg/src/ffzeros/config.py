"""Run configuration: line-oriented config files plus flag overrides.

Config files are INI-style sections of key = value lines.  Inline test
function coefficients use indented continuation lines of the form
"n, re[, im]" under a single coeffs key:

    [field]
    q = 3

    [modulus]
    Q = search:4

    [test_function]
    coeffs =
        0, 1
        1, 0.5, 0
        -1, 0.5, 0

    [run]
    seed = 0
    threads = 2

Built-in families are named instead: family = geometric (or cauchy)
with n_max.  Command-line flags override file values.  Everything is
validated into a RunConfig before any computation starts; any problem
raises ConfigError (exit code 2).
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass

from . import algebra, characters, statistics
from .errors import ConfigError

_SECTIONS = {
    "field": {"p", "e", "q", "ext_modulus"},
    "modulus": {"q"},
    "run": {"cache_dir", "seed", "threads", "out"},
    "test_function": {"family", "n_max", "coeffs"},
    "test_function_1": {"family", "n_max", "coeffs"},
    "test_function_2": {"family", "n_max", "coeffs"},
    "montgomery": {"n_min", "n_max", "zero_powers", "theta1", "theta2"},
    "rmt": {"powers", "mc_samples", "mc_dim"},
}

FAMILY_BUILDERS = {
    "geometric": statistics.geometric_family,
    "cauchy": statistics.cauchy_family,
}


@dataclass
class RunConfig:
    """Fully validated inputs for one CLI command."""

    field: algebra.FieldSpec
    Q: characters.Modulus
    cache_dir: str | None
    out_dir: str
    seed: int
    threads: int
    psi: statistics.TestFunction1D | None = None
    psi_pair: statistics.TestFunction2D | None = None
    explicit_check: bool = False
    n_min: int = 0
    n_max: int = 0
    zero_powers: tuple = ()
    theta1: float = 0.5
    theta2: float = 0.5
    rmt_powers: tuple = ()
    mc_samples: int = 2000
    mc_dim: int = 0


def read_config_file(path):
    """Parse and shape-check a config file into {section: {key: value}}."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"config file {path} is not valid: {exc}") from exc
    out = {}
    for section in parser.sections():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown config section [{section}]")
        body = dict(parser[section])
        unknown = set(body) - _SECTIONS[section]
        if unknown:
            raise ConfigError(
                f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}"
            )
        out[section] = body
    return out


def _to_int(value, what):
    try:
        return int(str(value).strip())
    except ValueError as exc:
        raise ConfigError(f"{what} must be an integer, got {value!r}") from exc


def _to_float(value, what):
    try:
        return float(str(value).strip())
    except ValueError as exc:
        raise ConfigError(f"{what} must be a number, got {value!r}") from exc


def _int_list(value, what):
    parts = [p for p in str(value).replace(",", " ").split() if p]
    if not parts:
        raise ConfigError(f"{what} must list at least one integer")
    return tuple(_to_int(p, what) for p in parts)


def _build_field(sections, flags):
    body = dict(sections.get("field", {}))
    if getattr(flags, "q", None) is not None:
        body = {"q": str(flags.q)}
    if not body:
        raise ConfigError("no field given; set [field] in the config or pass --q")
    if "q" in body and ("p" in body or "e" in body):
        raise ConfigError("[field] takes either q or p/e, not both")
    if "q" in body:
        qval = _to_int(body["q"], "field size q")
        fac = algebra._factor_int(qval) if qval >= 2 else {}
        if len(fac) != 1:
            raise ConfigError(f"field size must be a prime power, got {qval}")
        ((p, e),) = fac.items()
    else:
        p = _to_int(body.get("p", "0"), "field characteristic p")
        e = _to_int(body.get("e", "1"), "extension degree e")
    ext = None
    if "ext_modulus" in body:
        ext = _parse_poly_text(body["ext_modulus"], "ext_modulus")
    try:
        return algebra.field_make(p, e, ext)
    except (ValueError, AssertionError) as exc:
        raise ConfigError(f"invalid field: {exc}") from exc


def _parse_poly_text(text, what):
    text = str(text).strip()
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise ConfigError(
            f"{what} must be comma-separated integer coefficients, got {text!r}"
        ) from exc


def _build_modulus(field, sections, flags):
    text = None
    if sections.get("modulus", {}).get("q") is not None:
        text = sections["modulus"]["q"]
    if getattr(flags, "Q", None) is not None:
        text = flags.Q
    if text is None:
        raise ConfigError("no modulus given; set [modulus] Q or pass --Q")
    text = str(text).strip()
    try:
        if text.startswith("search:"):
            d = _to_int(text[len("search:") :], "modulus search degree")
            return characters.modulus_search(field, d)
        return characters.modulus_make(field, _parse_poly_text(text, "Q"))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"invalid modulus: {exc}") from exc


def _parse_coeff_lines(text, q):
    coeffs = {}
    for raw in str(text).splitlines():
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) not in (2, 3):
            raise ConfigError(f"coefficient line must be n, re[, im]: {raw!r}")
        n = _to_int(parts[0], "coefficient frequency")
        re = _to_float(parts[1], "coefficient real part")
        im = _to_float(parts[2], "coefficient imag part") if len(parts) == 3 else 0.0
        if n in coeffs:
            raise ConfigError(f"duplicate coefficient frequency {n}")
        coeffs[n] = complex(re, im)
    if not coeffs:
        raise ConfigError("empty coefficient list")
    return statistics.TestFunction1D(coeffs, q)


def _build_test_function(section, q, flag_family=None, flag_nmax=None, where=""):
    body = dict(section or {})
    if flag_family is not None:
        body.pop("coeffs", None)
        body["family"] = flag_family
    if flag_nmax is not None:
        body["n_max"] = str(flag_nmax)
    if not body:
        return None
    if "coeffs" in body and "family" in body:
        raise ConfigError(f"{where}: give either family or coeffs, not both")
    if "coeffs" in body:
        return _parse_coeff_lines(body["coeffs"], q)
    if "family" not in body:
        raise ConfigError(f"{where}: a family needs the family key")
    name = str(body["family"]).strip().lower()
    if name not in FAMILY_BUILDERS:
        known = ", ".join(sorted(FAMILY_BUILDERS))
        raise ConfigError(f"{where}: unknown family {name!r} (known: {known})")
    if "n_max" not in body:
        raise ConfigError(f"{where}: built-in family needs n_max")
    n_max = _to_int(body["n_max"], "n_max")
    if n_max < 0:
        raise ConfigError(f"{where}: n_max must be >= 0")
    return FAMILY_BUILDERS[name](q, n_max)


def build_config(command, flags):
    """Merge config file and flags into a validated RunConfig."""
    sections = {}
    if getattr(flags, "config", None):
        sections = read_config_file(flags.config)
    field = _build_field(sections, flags)
    Q = _build_modulus(field, sections, flags)
    run = dict(sections.get("run", {}))
    cache_dir = getattr(flags, "cache_dir", None) or run.get("cache_dir") or None
    out_dir = getattr(flags, "out", None) or run.get("out") or "."
    seed_val = getattr(flags, "seed", None)
    seed = _to_int(seed_val if seed_val is not None else run.get("seed", 0), "seed")
    thr_val = getattr(flags, "threads", None)
    if thr_val is None:
        thr_val = run.get("threads")
    threads = _to_int(thr_val, "threads") if thr_val is not None else (
        os.cpu_count() or 1
    )
    if threads < 1:
        raise ConfigError("threads must be >= 1")
    cfg = RunConfig(
        field=field,
        Q=Q,
        cache_dir=cache_dir,
        out_dir=out_dir,
        seed=seed,
        threads=threads,
    )
    q = field.q
    d = Q.d

    if command == "onelevel":
        psi = _build_test_function(
            sections.get("test_function"),
            q,
            getattr(flags, "family", None),
            getattr(flags, "n_max", None),
            where="[test_function]",
        )
        if psi is None:
            raise ConfigError("onelevel needs a test function (section or flags)")
        cfg.psi = psi
        cfg.explicit_check = bool(getattr(flags, "explicit_check", False))
    elif command == "twolevel":
        flag_family = getattr(flags, "family", None)
        flag_nmax = getattr(flags, "n_max", None)
        s1 = sections.get("test_function_1")
        s2 = sections.get("test_function_2")
        if "test_function" in sections and not (s1 or s2):
            raise ConfigError(
                "twolevel needs the pair [test_function_1]/[test_function_2], "
                "not a single [test_function]"
            )
        psi1 = _build_test_function(
            s1, q, flag_family, flag_nmax, where="[test_function_1]"
        )
        psi2 = _build_test_function(
            s2, q, flag_family, flag_nmax, where="[test_function_2]"
        )
        if psi1 is None or psi2 is None:
            raise ConfigError("twolevel needs both factor test functions")
        cfg.psi_pair = statistics.TestFunction2D(psi1, psi2)
    elif command == "montgomery":
        body = dict(sections.get("montgomery", {}))
        n_min = getattr(flags, "n_min", None)
        if n_min is None:
            n_min = body.get("n_min", 1)
        n_max = getattr(flags, "n_max", None)
        if n_max is None:
            n_max = body.get("n_max", 3 * d)
        cfg.n_min = _to_int(n_min, "n_min")
        cfg.n_max = _to_int(n_max, "n_max")
        if not 1 <= cfg.n_min <= cfg.n_max <= 3 * d:
            raise ConfigError(
                f"montgomery range must satisfy 1 <= n_min <= n_max <= {3 * d}"
            )
        zp = getattr(flags, "zero_powers", None)
        if zp is None:
            zp = body.get("zero_powers")
        cfg.zero_powers = (
            _int_list(zp, "zero_powers") if zp is not None else tuple(range(3 * d + 1))
        )
        if any(n < 0 for n in cfg.zero_powers):
            raise ConfigError("zero_powers must be >= 0")
        cfg.theta1 = _to_float(body.get("theta1", 0.5), "theta1")
        cfg.theta2 = _to_float(body.get("theta2", 0.5), "theta2")
    elif command == "rmt":
        body = dict(sections.get("rmt", {}))
        powers = getattr(flags, "powers", None)
        if powers is None:
            powers = body.get("powers")
        cfg.rmt_powers = (
            _int_list(powers, "powers") if powers is not None else tuple(range(1, 7))
        )
        if any(n < 1 for n in cfg.rmt_powers):
            raise ConfigError("rmt powers must be >= 1")
        samples = getattr(flags, "mc_samples", None)
        if samples is None:
            samples = body.get("mc_samples", 2000)
        cfg.mc_samples = _to_int(samples, "mc_samples")
        if cfg.mc_samples < 2:
            raise ConfigError("mc_samples must be >= 2")
        dim = getattr(flags, "mc_dim", None)
        if dim is None:
            dim = body.get("mc_dim", d - 1)
        cfg.mc_dim = _to_int(dim, "mc_dim")
        if cfg.mc_dim < 1:
            raise ConfigError("mc_dim must be >= 1")
    return cfg

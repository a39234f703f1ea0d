"""Command-line interface.

Subcommands: zeros | onelevel | twolevel | montgomery | rmt | cache-info.
Every command reads an optional config file, applies flag overrides,
computes, and writes CSV / structured-text reports into --out.  All
numeric fields carry 17 significant digits, reports contain no
timestamps or machine state, and family reductions are index-ordered,
so outputs are byte-identical across thread counts and across warm and
cold caches.

Exit codes: 0 success, 2 usage or config error, 3 numeric-invariant
violation, 4 cache corruption.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import cache, config, montgomery, statistics
from .errors import CacheCorruptionError, ConfigError, NumericInvariantError


def f17(x):
    return f"{float(x):.17g}"


def _write_text(path, lines):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def _poly_text(coeffs):
    return ",".join(str(c) for c in coeffs)


def _prepare_family(cfg):
    """Family L-data through the cache when one is configured."""
    Q = cfg.Q
    if cfg.cache_dir:
        table_hit = cache.load_unitgroup(cfg.cache_dir, Q)
        fam = cache.load_family(cfg.cache_dir, Q)
        if fam is None:
            fam = Q.family_data(threads=cfg.threads)
            cache.save_family(cfg.cache_dir, Q, fam)
        if not table_hit:
            cache.save_unitgroup(cfg.cache_dir, Q)
        return fam
    return Q.family_data(threads=cfg.threads)


def _header_lines(cfg, command, fam):
    return [
        f"command {command}",
        f"q {cfg.field.q}",
        f"modulus {_poly_text(cfg.Q.coeffs)}",
        f"family_size {len(fam)}",
    ]


def _psi_label(psi):
    return f"support_{-psi.n_max}_{psi.n_max}_terms_{len(psi.support)}"


# ----------------------------------------------------------------------
# commands


def cmd_zeros(cfg):
    fam = _prepare_family(cfg)
    logq = math.log(cfg.field.q)
    rows = ["character_index,angle_index,theta,gamma,rh_residual"]
    for L in fam.all_ldata():
        for j in range(L.degree):
            theta = float(L.eigenangles[j])
            rows.append(
                f"{L.chi_index},{j},{f17(theta)},{f17(theta / logq)},"
                f"{f17(L.rh_residuals[j])}"
            )
    out = _write_text(Path(cfg.out_dir) / "zeros.csv", rows)
    print(f"wrote {out}")
    return 0


def cmd_onelevel(cfg):
    fam = _prepare_family(cfg)
    Q = cfg.Q
    psi = cfg.psi
    mean_rep = statistics.family_f1_report(Q, psi, threads=cfg.threads)
    var_rep = statistics.family_f1_variance(Q, psi, threads=cfg.threads)
    rows = ["character_index,statistic,value_re,value_im"]
    for k in sorted(mean_rep.per_chi):
        v = mean_rep.per_chi[k]
        rows.append(f"{k},f1,{f17(v.real)},{f17(v.imag)}")
    check_max = None
    if cfg.explicit_check:
        resid = statistics.family_explicit_residuals(Q, psi, threads=cfg.threads)
        for k in sorted(resid):
            rows.append(f"{k},explicit_residual,{f17(resid[k])},0")
        check_max = max(resid.values())
    per_chi_path = _write_text(Path(cfg.out_dir) / "onelevel_per_chi.csv", rows)

    lines = _header_lines(cfg, "onelevel", fam)
    lines.append(f"test_function {_psi_label(psi)}")
    lines += [
        "statistic onelevel_mean",
        f"empirical_re {f17(mean_rep.empirical_mean.real)}",
        f"empirical_im {f17(mean_rep.empirical_mean.imag)}",
        f"exact_oracle_re {f17(mean_rep.extras['exact_oracle'].real)}",
        f"exact_oracle_im {f17(mean_rep.extras['exact_oracle'].imag)}",
        f"oracle_gap {f17(mean_rep.extras['oracle_gap'])}",
        f"theory_main_re {f17(mean_rep.theory_main.real)}",
        f"theory_main_im {f17(mean_rep.theory_main.imag)}",
        f"error_scale {f17(mean_rep.bound)}",
        f"ratio {f17(mean_rep.extras['ratio'])}",
        "statistic onelevel_variance",
        f"empirical {f17(var_rep.empirical_variance)}",
        f"theory_main {f17(var_rep.theory_main.real)}",
        f"error_scale {f17(var_rep.bound)}",
        f"ratio {f17(var_rep.extras['ratio'])}",
    ]
    if check_max is not None:
        lines.append(f"explicit_check_max {f17(check_max)}")
    summary_path = _write_text(Path(cfg.out_dir) / "onelevel_summary.txt", lines)
    print(f"wrote {per_chi_path}")
    print(f"wrote {summary_path}")
    return 0


def cmd_twolevel(cfg):
    fam = _prepare_family(cfg)
    Q = cfg.Q
    psi = cfg.psi_pair
    rep = statistics.family_f2_report(Q, psi, threads=cfg.threads)
    lds = fam.all_ldata()
    direct = {L.chi_index: statistics.f2_direct(L, psi) for L in lds}
    rows = ["character_index,statistic,value_re,value_im"]
    for k in sorted(rep.per_chi):
        v = rep.per_chi[k]
        rows.append(f"{k},f2_full_minus_diag,{f17(v.real)},{f17(v.imag)}")
    for k in sorted(direct):
        v = direct[k]
        rows.append(f"{k},f2_distinct_pairs,{f17(v.real)},{f17(v.imag)}")
    per_chi_path = _write_text(Path(cfg.out_dir) / "twolevel_per_chi.csv", rows)
    gap = max(abs(rep.per_chi[k] - direct[k]) for k in direct)

    lines = _header_lines(cfg, "twolevel", fam)
    lines.append(f"test_function_1 {_psi_label(psi.psi1)}")
    lines.append(f"test_function_2 {_psi_label(psi.psi2)}")
    lines += [
        "statistic twolevel_mean",
        f"empirical_re {f17(rep.empirical_mean.real)}",
        f"empirical_im {f17(rep.empirical_mean.imag)}",
        f"theory_main_re {f17(rep.theory_main.real)}",
        f"theory_main_im {f17(rep.theory_main.imag)}",
        f"c2gamma_re {f17(rep.extras['c2gamma'].real)}",
        f"c2gamma_im {f17(rep.extras['c2gamma'].imag)}",
        f"diag_mean_exact_re {f17(rep.extras['diag_mean_exact'].real)}",
        f"diag_mean_exact_im {f17(rep.extras['diag_mean_exact'].imag)}",
        f"error_scale {f17(rep.bound)}",
        f"ratio {f17(rep.extras['ratio'])}",
        f"max_direct_gap {f17(gap)}",
    ]
    summary_path = _write_text(Path(cfg.out_dir) / "twolevel_summary.txt", lines)
    print(f"wrote {per_chi_path}")
    print(f"wrote {summary_path}")
    return 0


def cmd_montgomery(cfg):
    fam = _prepare_family(cfg)
    Q = cfg.Q
    report = montgomery.deviation_and_theta(Q, range(cfg.n_min, cfg.n_max + 1))
    rows = [
        "n,psi_progression,psi_over_phi_num,psi_over_phi_den,deviation,theta_hat"
    ]
    for r in report.rows:
        theta = "" if r.theta_hat is None else f17(r.theta_hat)
        rows.append(
            f"{r.n},{r.psi},{r.expected.numerator},{r.expected.denominator},"
            f"{r.deviation},{theta}"
        )
    dev_path = _write_text(Path(cfg.out_dir) / "montgomery_deviation.csv", rows)

    scale = montgomery.zero_sum_scale(Q, cfg.theta1, cfg.theta2)
    zrows = ["n,zero_sum_re,zero_sum_im,scale,ratio"]
    max_imag = 0.0
    for n in cfg.zero_powers:
        z = montgomery.zero_sum(Q, n, family=fam)
        max_imag = max(max_imag, abs(z.imag))
        zrows.append(
            f"{n},{f17(z.real)},{f17(z.imag)},{f17(scale)},{f17(abs(z.real) / scale)}"
        )
    zs_path = _write_text(Path(cfg.out_dir) / "montgomery_zerosum.csv", zrows)

    lines = _header_lines(cfg, "montgomery", fam)
    lines += [
        f"n_min {cfg.n_min}",
        f"n_max {cfg.n_max}",
        "theta_hat_min "
        + ("" if report.theta_hat_min is None else f17(report.theta_hat_min)),
        "bt_ratio_max "
        + (
            ""
            if report.bt_ratio_max is None
            else f"{report.bt_ratio_max.numerator}/{report.bt_ratio_max.denominator}"
        ),
        f"theta1 {f17(cfg.theta1)}",
        f"theta2 {f17(cfg.theta2)}",
        f"zero_sum_scale {f17(scale)}",
        f"max_zero_sum_imag {f17(max_imag)}",
    ]
    summary_path = _write_text(Path(cfg.out_dir) / "montgomery_summary.txt", lines)
    print(f"wrote {dev_path}")
    print(f"wrote {zs_path}")
    print(f"wrote {summary_path}")
    return 0


def cmd_rmt(cfg):
    fam = _prepare_family(cfg)
    Q = cfg.Q
    lds = fam.all_ldata()
    F = len(lds)
    dim = Q.d - 1
    powers = tuple(sorted(set(cfg.rmt_powers)))
    T = statistics._family_traces(lds, max(powers))
    mc = statistics.haar_trace_moments(cfg.mc_dim, powers, cfg.mc_samples, cfg.seed)
    rows = [
        "n,family_trace_re,family_trace_im,family_abs2,ds_trace,ds_abs2,"
        "mc_trace_re,mc_trace_im,mc_trace_se,mc_abs2,mc_abs2_se"
    ]
    for n in powers:
        col = T[:, n]
        fmean = complex(
            math.fsum(col.real) / F,
            math.fsum(col.imag) / F,
        )
        fabs2 = math.fsum(np.abs(col) ** 2) / F
        rows.append(
            ",".join(
                [
                    str(n),
                    f17(fmean.real),
                    f17(fmean.imag),
                    f17(fabs2),
                    f17(statistics.ds_moment(n, dim)),
                    f17(statistics.ds_abs2(n, dim)),
                    f17(mc.mean_trace[n].real),
                    f17(mc.mean_trace[n].imag),
                    f17(mc.se_trace[n]),
                    f17(mc.mean_abs2[n]),
                    f17(mc.se_abs2[n]),
                ]
            )
        )
    trace_path = _write_text(Path(cfg.out_dir) / "rmt_trace.csv", rows)

    grid = ["j,k,family_re,family_im,ds_value"]
    for j in powers:
        for k in powers:
            prod = T[:, j] * np.conj(T[:, k])
            gmean = complex(
                math.fsum(prod.real) / F,
                math.fsum(prod.imag) / F,
            )
            grid.append(
                f"{j},{k},{f17(gmean.real)},{f17(gmean.imag)},"
                f"{f17(statistics.ds_pair(j, k, dim))}"
            )
    pair_path = _write_text(Path(cfg.out_dir) / "rmt_pair.csv", grid)

    lines = _header_lines(cfg, "rmt", fam)
    lines += [
        "powers " + ",".join(str(n) for n in powers),
        f"mc_dim {cfg.mc_dim}",
        f"mc_samples {cfg.mc_samples}",
        f"seed {cfg.seed}",
    ]
    summary_path = _write_text(Path(cfg.out_dir) / "rmt_summary.txt", lines)
    print(f"wrote {trace_path}")
    print(f"wrote {pair_path}")
    print(f"wrote {summary_path}")
    return 0


def cmd_cache_info(flags):
    sections = {}
    if getattr(flags, "config", None):
        sections = config.read_config_file(flags.config)
    cache_dir = flags.cache_dir or sections.get("run", {}).get("cache_dir")
    if not cache_dir:
        raise ConfigError("cache-info needs --cache-dir or [run] cache_dir")
    rows = cache.cache_info(cache_dir)
    print("file kind version key records status")
    for r in rows:
        print(
            f"{r['file']} {r['kind']} {r['version']} {r['key']} "
            f"{r['records']} {r['status']}"
        )
    return 0


# ----------------------------------------------------------------------
# argument parsing and dispatch


def _add_common(sub):
    sub.add_argument("--config", help="path to a config file")
    sub.add_argument("--q", type=int, help="field size (prime power)")
    sub.add_argument("--Q", help="modulus coefficients c0,c1,... or search:d")
    sub.add_argument("--cache-dir", dest="cache_dir", help="cache directory")
    sub.add_argument("--threads", type=int, help="worker thread count")
    sub.add_argument("--seed", type=int, help="random seed")
    sub.add_argument("--out", help="output directory (default .)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ffzeros",
        description="Zeros of Dirichlet L-functions over F_q(T) and their statistics",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("zeros", help="export eigenangles for the whole family")
    _add_common(s)

    s = subs.add_parser("onelevel", help="1-level density report")
    _add_common(s)
    s.add_argument("--family", choices=sorted(config.FAMILY_BUILDERS))
    s.add_argument("--n-max", dest="n_max", type=int)
    s.add_argument(
        "--explicit-check",
        dest="explicit_check",
        action="store_true",
        help="add per-character explicit-formula residuals",
    )

    s = subs.add_parser("twolevel", help="2-level density report")
    _add_common(s)
    s.add_argument("--family", choices=sorted(config.FAMILY_BUILDERS))
    s.add_argument("--n-max", dest="n_max", type=int)

    s = subs.add_parser("montgomery", help="progression deviations and zero sums")
    _add_common(s)
    s.add_argument("--n-min", dest="n_min", type=int)
    s.add_argument("--n-max", dest="n_max", type=int)
    s.add_argument("--zero-powers", dest="zero_powers", help="e.g. 0,1,2,3")

    s = subs.add_parser("rmt", help="trace moments against Haar predictions")
    _add_common(s)
    s.add_argument("--powers", help="trace powers, e.g. 1,2,3")
    s.add_argument("--mc-samples", dest="mc_samples", type=int)
    s.add_argument("--mc-dim", dest="mc_dim", type=int)

    s = subs.add_parser("cache-info", help="describe cache files")
    s.add_argument("--config", help="path to a config file")
    s.add_argument("--cache-dir", dest="cache_dir", help="cache directory")

    return parser


_COMMANDS = {
    "zeros": cmd_zeros,
    "onelevel": cmd_onelevel,
    "twolevel": cmd_twolevel,
    "montgomery": cmd_montgomery,
    "rmt": cmd_rmt,
}


def main(argv=None):
    parser = build_parser()
    flags = parser.parse_args(argv)
    try:
        if flags.command == "cache-info":
            return cmd_cache_info(flags)
        cfg = config.build_config(flags.command, flags)
        return _COMMANDS[flags.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericInvariantError as exc:
        print(f"numeric invariant violated: {exc}", file=sys.stderr)
        return 3
    except CacheCorruptionError as exc:
        print(f"cache corruption: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())

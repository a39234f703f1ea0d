"""Cache round trips, tamper detection, and config validation."""

import numpy as np
import pytest

from ffzeros import algebra, cache, characters, config
from ffzeros.errors import CacheCorruptionError, ConfigError


# ----------------------------------------------------------------------
# unit-group table cache


def test_unitgroup_round_trip(tmp_path, K3):
    Q = characters.modulus_make(K3, (1, 0, 1))
    t = Q.table()
    path = cache.save_unitgroup(tmp_path, Q)
    assert path.exists()

    fresh = characters.modulus_make(K3, (1, 0, 1))
    assert cache.load_unitgroup(tmp_path, fresh)
    assert fresh.table().generator == t.generator
    assert np.array_equal(fresh.table().dlog_by_code, t.dlog_by_code)


def test_unitgroup_miss_returns_false(tmp_path, K3):
    Q = characters.modulus_make(K3, (1, 0, 1))
    assert not cache.load_unitgroup(tmp_path, Q)


def test_unitgroup_tamper_detected(tmp_path, K3):
    Q = characters.modulus_make(K3, (1, 0, 1))
    path = cache.save_unitgroup(tmp_path, Q)
    body = path.read_text()
    # swap two dlog values: still a permutation, but not a homomorphism
    lines = body.splitlines()
    idx = next(i for i, ln in enumerate(lines) if ln.startswith("dlog "))
    vals = lines[idx].split()
    vals[2], vals[3] = vals[3], vals[2]
    lines[idx] = " ".join(vals)
    path.write_text("\n".join(lines) + "\n")

    fresh = characters.modulus_make(K3, (1, 0, 1))
    with pytest.raises(CacheCorruptionError):
        cache.load_unitgroup(tmp_path, fresh)


def test_unitgroup_truncation_detected(tmp_path, K3):
    Q = characters.modulus_make(K3, (1, 0, 1))
    path = cache.save_unitgroup(tmp_path, Q)
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    with pytest.raises(CacheCorruptionError):
        cache.load_unitgroup(tmp_path, characters.modulus_make(K3, (1, 0, 1)))


def test_unitgroup_stale_version_recomputes(tmp_path, K3):
    Q = characters.modulus_make(K3, (1, 0, 1))
    path = cache.save_unitgroup(tmp_path, Q)
    text = path.read_text()
    path.write_text(text.replace("unitgroup 1", "unitgroup 0", 1))
    # stale format is a miss, not an error
    assert not cache.load_unitgroup(tmp_path, characters.modulus_make(K3, (1, 0, 1)))


def test_unitgroup_key_mismatch_is_corruption(tmp_path, K3, K5):
    # a file renamed across moduli must not be accepted silently
    Qa = characters.modulus_make(K3, (1, 0, 1))
    Qb = characters.modulus_make(K3, (2, 1, 1))
    path_a = cache.save_unitgroup(tmp_path, Qa)
    path_b = cache.unitgroup_path(tmp_path, Qb)
    path_b.write_bytes(path_a.read_bytes())
    with pytest.raises(CacheCorruptionError):
        cache.load_unitgroup(tmp_path, Qb)


# ----------------------------------------------------------------------
# eigenangle cache


def test_family_round_trip(tmp_path, Q3_3, fam3_3):
    cache.save_unitgroup(tmp_path, Q3_3)
    cache.save_family(tmp_path, Q3_3, fam3_3)

    fresh = characters.modulus_make(algebra.field_make(3), Q3_3.coeffs)
    assert cache.load_unitgroup(tmp_path, fresh)
    fam = cache.load_family(tmp_path, fresh)
    assert fam is not None
    for La, Lb in zip(fam3_3.all_ldata(), fam.all_ldata()):
        assert La.chi_index == Lb.chi_index
        assert La.lambda_inf == Lb.lambda_inf
        assert La.degree == Lb.degree
        assert np.array_equal(La.eigenangles, Lb.eigenangles)
        assert np.array_equal(La.rh_residuals, Lb.rh_residuals)
        assert La.root_number == Lb.root_number


def test_family_cache_is_installed_on_modulus(tmp_path, Q3_2):
    fam = Q3_2.family_data()
    cache.save_family(tmp_path, Q3_2, fam)
    fresh = characters.modulus_make(algebra.field_make(3), (1, 0, 1))
    loaded = cache.load_family(tmp_path, fresh)
    assert fresh.family_data() is loaded


def test_family_miss_and_stale(tmp_path, Q3_2):
    assert cache.load_family(tmp_path, Q3_2) is None
    fam = Q3_2.family_data()
    path = cache.save_family(tmp_path, Q3_2, fam)
    text = path.read_text()
    path.write_text(text.replace("eigenangles 1", "eigenangles 0", 1))
    assert cache.load_family(tmp_path, Q3_2) is None


def test_family_corruption_raises(tmp_path, Q3_2):
    path = cache.save_family(tmp_path, Q3_2, Q3_2.family_data())
    text = path.read_text().replace("theta ", "thXta ", 1)
    path.write_text(text)
    with pytest.raises(CacheCorruptionError):
        cache.load_family(tmp_path, Q3_2)


def test_family_out_of_range_angle_rejected(tmp_path, Q3_2):
    path = cache.save_family(tmp_path, Q3_2, Q3_2.family_data())
    lines = path.read_text().splitlines()
    idx = next(
        i for i, ln in enumerate(lines) if ln.startswith("theta ") and len(ln) > 8
    )
    lines[idx] = "theta " + (7.0).hex()
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(CacheCorruptionError):
        cache.load_family(tmp_path, Q3_2)


def test_cache_info_reports(tmp_path, Q3_2):
    cache.save_unitgroup(tmp_path, Q3_2)
    cache.save_family(tmp_path, Q3_2, Q3_2.family_data())
    rows = cache.cache_info(tmp_path)
    kinds = sorted(r["kind"] for r in rows)
    assert kinds == ["eigenangles", "unitgroup"]
    for r in rows:
        assert r["status"] == "ok"
        assert r["version"] == "1"
    eig = next(r for r in rows if r["kind"] == "eigenangles")
    assert eig["records"] == "7"


def test_cache_info_flags_damage(tmp_path, Q3_2):
    path = cache.save_family(tmp_path, Q3_2, Q3_2.family_data())
    path.write_text(path.read_text().replace("theta ", "thXta ", 1))
    rows = cache.cache_info(tmp_path)
    assert rows[0]["status"] == "corrupt"


def test_cache_filenames_keyed_by_content(tmp_path, K3, K5):
    Qa = characters.modulus_make(K3, (1, 0, 1))
    Qb = characters.modulus_make(K5, (2, 0, 1))
    assert cache.unitgroup_path(tmp_path, Qa) != cache.unitgroup_path(tmp_path, Qb)
    assert cache.eigen_path(tmp_path, Qa) != cache.unitgroup_path(tmp_path, Qa)


# ----------------------------------------------------------------------
# config files


def write_config(tmp_path, text):
    p = tmp_path / "run.cfg"
    p.write_text(text)
    return str(p)


BASE = """
[field]
q = 3

[modulus]
Q = search:3

[run]
seed = 11
threads = 2
"""


def test_read_config_file(tmp_path):
    path = write_config(tmp_path, BASE)
    sections = config.read_config_file(path)
    assert sections["field"]["q"] == "3"
    assert sections["modulus"]["q"] == "search:3"
    assert sections["run"]["threads"] == "2"


def test_unknown_section_rejected(tmp_path):
    path = write_config(tmp_path, BASE + "\n[bogus]\nx = 1\n")
    with pytest.raises(ConfigError):
        config.read_config_file(path)


def test_unknown_key_rejected(tmp_path):
    path = write_config(tmp_path, BASE + "\n[rmt]\nworkers = 4\n")
    with pytest.raises(ConfigError):
        config.read_config_file(path)


def test_missing_file_rejected(tmp_path):
    with pytest.raises(ConfigError):
        config.read_config_file(str(tmp_path / "absent.cfg"))


class Flags:
    """Minimal argparse.Namespace stand-in with every flag unset."""

    config = None
    q = None
    Q = None
    cache_dir = None
    threads = None
    seed = None
    out = None
    family = None
    n_max = None
    explicit_check = False
    n_min = None
    zero_powers = None
    powers = None
    mc_samples = None
    mc_dim = None

    def __init__(self, **kw):
        for k, v in kw.items():
            setattr(self, k, v)


def test_build_config_basic(tmp_path):
    path = write_config(tmp_path, BASE + "\n[test_function]\nfamily = geometric\nn_max = 5\n")
    cfg = config.build_config("onelevel", Flags(config=path, out=str(tmp_path)))
    assert cfg.field.q == 3
    assert cfg.Q.coeffs == (1, 2, 0, 1)
    assert cfg.seed == 11
    assert cfg.threads == 2
    assert cfg.psi.n_max == 5
    assert cfg.psi.hat(1) == 3 ** (-0.5) * 0.5


def test_build_config_inline_coeffs(tmp_path):
    text = BASE + """
[test_function]
coeffs =
    0, 1
    1, 0.25, -0.5
    -1, 0.25, 0.5
"""
    path = write_config(tmp_path, text)
    cfg = config.build_config("onelevel", Flags(config=path, out=str(tmp_path)))
    assert cfg.psi.hat(1) == 0.25 - 0.5j
    assert cfg.psi.hat(-1) == 0.25 + 0.5j
    assert cfg.psi.support == (-1, 0, 1)


def test_duplicate_coeff_rejected(tmp_path):
    text = BASE + """
[test_function]
coeffs =
    0, 1
    0, 2
"""
    path = write_config(tmp_path, text)
    with pytest.raises(ConfigError):
        config.build_config("onelevel", Flags(config=path, out=str(tmp_path)))


def test_family_and_coeffs_conflict(tmp_path):
    text = BASE + """
[test_function]
family = geometric
n_max = 4
coeffs =
    0, 1
"""
    path = write_config(tmp_path, text)
    with pytest.raises(ConfigError):
        config.build_config("onelevel", Flags(config=path, out=str(tmp_path)))


def test_flag_overrides_file(tmp_path):
    path = write_config(tmp_path, BASE + "\n[test_function]\nfamily = geometric\nn_max = 9\n")
    cfg = config.build_config(
        "onelevel",
        Flags(config=path, out=str(tmp_path), family="cauchy", n_max=3, threads=5),
    )
    assert cfg.threads == 5
    assert cfg.psi.n_max == 3
    assert abs(cfg.psi.hat(2) - 3 ** (-1.0) / 5) < 1e-15


def test_q_flag_replaces_field_section(tmp_path):
    cfg = config.build_config(
        "zeros", Flags(q="5", Q="search:2", out=str(tmp_path))
    )
    assert cfg.field.q == 5
    assert cfg.Q.d == 2


def test_prime_power_q_flag(tmp_path):
    cfg = config.build_config("zeros", Flags(q="4", Q="search:2", out=str(tmp_path)))
    assert cfg.field.q == 4 and cfg.field.p == 2 and cfg.field.e == 2


def test_composite_q_rejected(tmp_path):
    with pytest.raises(ConfigError):
        config.build_config("zeros", Flags(q="6", Q="search:2", out=str(tmp_path)))


def test_reducible_modulus_rejected(tmp_path):
    with pytest.raises(ConfigError):
        config.build_config("zeros", Flags(q="3", Q="1,2,1", out=str(tmp_path)))


def test_onelevel_requires_test_function(tmp_path):
    path = write_config(tmp_path, BASE)
    with pytest.raises(ConfigError):
        config.build_config("onelevel", Flags(config=path, out=str(tmp_path)))


def test_twolevel_rejects_single_section(tmp_path):
    path = write_config(tmp_path, BASE + "\n[test_function]\nfamily = geometric\nn_max = 4\n")
    with pytest.raises(ConfigError):
        config.build_config("twolevel", Flags(config=path, out=str(tmp_path)))


def test_twolevel_pair_sections(tmp_path):
    text = BASE + """
[test_function_1]
family = geometric
n_max = 4

[test_function_2]
family = cauchy
n_max = 3
"""
    path = write_config(tmp_path, text)
    cfg = config.build_config("twolevel", Flags(config=path, out=str(tmp_path)))
    assert cfg.psi_pair.hat(1, 1) == cfg.psi_pair.psi1.hat(1) * cfg.psi_pair.psi2.hat(1)


def test_montgomery_defaults_and_validation(tmp_path):
    path = write_config(tmp_path, BASE)
    cfg = config.build_config("montgomery", Flags(config=path, out=str(tmp_path)))
    assert cfg.n_min == 1 and cfg.n_max == 9
    assert cfg.zero_powers == tuple(range(0, 10))
    with pytest.raises(ConfigError):
        config.build_config(
            "montgomery", Flags(config=path, out=str(tmp_path), n_max=10)
        )


def test_rmt_defaults(tmp_path):
    path = write_config(tmp_path, BASE)
    cfg = config.build_config("rmt", Flags(config=path, out=str(tmp_path)))
    assert cfg.rmt_powers == tuple(range(1, 7))
    assert cfg.mc_samples == 2000
    assert cfg.mc_dim == 2  # d - 1
    with pytest.raises(ConfigError):
        config.build_config(
            "rmt", Flags(config=path, out=str(tmp_path), mc_samples=1)
        )


def test_threads_validated(tmp_path):
    path = write_config(tmp_path, BASE)
    with pytest.raises(ConfigError):
        config.build_config("zeros", Flags(config=path, out=str(tmp_path), threads=0))

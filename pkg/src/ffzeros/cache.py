"""On-disk caches for the unit-group table and the family eigenangles.

Both caches are line-oriented text files, one per (field, Q) pair,
named by a sha256 content key of the defining inputs (p, e, extension
modulus, Q coefficients).  The first line is a magic header carrying a
format version integer:

    ffzeros unitgroup 1
    ffzeros eigenangles 1

A file whose header names the right kind but a different version is
stale: loaders return None and callers recompute and overwrite.  A file
that cannot be parsed, fails its internal key line, or fails validation
raises CacheCorruptionError.  Floats are stored as C99 hex literals, so
every double round-trips exactly and warm runs reproduce cold runs byte
for byte.  Writes go to a temporary file in the same directory followed
by an atomic rename.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

import numpy as np

from . import algebra, characters
from .errors import CacheCorruptionError

UNITGROUP_KIND = "ffzeros unitgroup"
EIGEN_KIND = "ffzeros eigenangles"
UNITGROUP_VERSION = 1
EIGEN_VERSION = 1


def _field_signature(field):
    ext = ",".join(str(c) for c in field.ext_modulus) if field.e > 1 else ""
    return f"p={field.p};e={field.e};ext={ext}"


def _content_key(Q, kind):
    text = (
        f"{kind};{_field_signature(Q.field)};"
        f"Q={','.join(str(c) for c in Q.coeffs)}"
    )
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def unitgroup_path(cache_dir, Q):
    return Path(cache_dir) / f"unitgroup-{_content_key(Q, UNITGROUP_KIND)[:24]}.txt"


def eigen_path(cache_dir, Q):
    return Path(cache_dir) / f"eigenangles-{_content_key(Q, EIGEN_KIND)[:24]}.txt"


def _atomic_write(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _read_lines(path):
    try:
        with open(path, encoding="ascii", newline="") as fh:
            return fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise CacheCorruptionError(f"unreadable cache file {path}: {exc}") from exc


def _check_header(lines, path, kind, version, key):
    """None = stale version (recompute), otherwise validated or raise."""
    if not lines:
        raise CacheCorruptionError(f"empty cache file {path}")
    head = lines[0].rsplit(" ", 1)
    if len(head) != 2 or head[0] != kind or not head[1].isdigit():
        raise CacheCorruptionError(f"bad magic header in {path}: {lines[0]!r}")
    if int(head[1]) != version:
        return None
    if len(lines) < 2 or lines[1] != f"key {key}":
        raise CacheCorruptionError(f"content key mismatch in {path}")
    if lines[-1] != "end":
        raise CacheCorruptionError(f"truncated cache file {path}")
    return lines[2:-1]


# ----------------------------------------------------------------------
# unit-group table


def save_unitgroup(cache_dir, Q):
    """Write the dlog table of Q (computing it if needed)."""
    table = Q.table()
    key = _content_key(Q, UNITGROUP_KIND)
    lines = [
        f"{UNITGROUP_KIND} {UNITGROUP_VERSION}",
        f"key {key}",
        f"q {Q.field.q} d {Q.d}",
        "generator " + ",".join(str(c) for c in table.generator),
        "dlog " + " ".join(str(int(v)) for v in table.dlog_by_code),
        "end",
    ]
    path = unitgroup_path(cache_dir, Q)
    _atomic_write(path, "\n".join(lines) + "\n")
    return path


def load_unitgroup(cache_dir, Q):
    """Install the cached table on Q.  Returns True on a hit, False when
    the file is missing or version-stale; raises CacheCorruptionError on
    damage."""
    path = unitgroup_path(cache_dir, Q)
    if not path.exists():
        return False
    lines = _read_lines(path)
    body = _check_header(
        lines, path, UNITGROUP_KIND, UNITGROUP_VERSION, _content_key(Q, UNITGROUP_KIND)
    )
    if body is None:
        return False
    try:
        assert body[0] == f"q {Q.field.q} d {Q.d}"
        gen_line = body[1]
        assert gen_line.startswith("generator ")
        generator = tuple(int(c) for c in gen_line[len("generator ") :].split(","))
        dlog_line = body[2]
        assert dlog_line.startswith("dlog ")
        dlog = np.array([int(v) for v in dlog_line[len("dlog ") :].split()], np.int64)
    except (AssertionError, IndexError, ValueError) as exc:
        raise CacheCorruptionError(f"malformed unit-group cache {path}") from exc
    K = Q.field
    N = Q.group_order
    if (
        dlog.shape[0] != K.q**Q.d
        or dlog[0] != -1
        or dlog[1] != 0
        or algebra.poly_validate(K, generator) != generator
        or dlog[algebra.poly_code(K, generator)] != 1
        or not np.array_equal(np.sort(dlog[1:]), np.arange(N, dtype=np.int64))
    ):
        raise CacheCorruptionError(f"unit-group cache {path} fails validation")
    Q.set_table(characters.UnitGroupTable(Q, generator=generator, dlog_by_code=dlog))
    return True


# ----------------------------------------------------------------------
# family eigenangles


def _hexf(x):
    return float(x).hex()


def _unhexf(s):
    return float.fromhex(s)


def save_family(cache_dir, Q, fam):
    """Write one spectral record per character: angles, RH residuals,
    root number."""
    key = _content_key(Q, EIGEN_KIND)
    lds = fam.all_ldata()
    lines = [
        f"{EIGEN_KIND} {EIGEN_VERSION}",
        f"key {key}",
        f"q {Q.field.q} d {Q.d}",
        f"count {len(lds)}",
    ]
    for L in lds:
        eps = complex(L.root_number)
        lines.append(
            f"chi {L.chi_index} {L.lambda_inf} {L.degree} "
            f"{_hexf(eps.real)} {_hexf(eps.imag)}"
        )
        lines.append(("theta " + " ".join(_hexf(t) for t in L.eigenangles)).rstrip())
        lines.append(("resid " + " ".join(_hexf(r) for r in L.rh_residuals)).rstrip())
    lines.append("end")
    path = eigen_path(cache_dir, Q)
    _atomic_write(path, "\n".join(lines) + "\n")
    return path


def load_family(cache_dir, Q):
    """Rebuild family L-data from the cache and install it on Q.

    Cache records carry only the spectral fields; coefficient-side
    fields of the reconstructed LData are None.  Returns the FamilyData
    on a hit, None when missing or version-stale."""
    from . import lfunction

    path = eigen_path(cache_dir, Q)
    if not path.exists():
        return None
    lines = _read_lines(path)
    body = _check_header(
        lines, path, EIGEN_KIND, EIGEN_VERSION, _content_key(Q, EIGEN_KIND)
    )
    if body is None:
        return None
    q = Q.field.q
    d = Q.d
    records = []
    try:
        assert body[0] == f"q {q} d {d}"
        count = int(body[1].removeprefix("count "))
        assert count == Q.group_order - 1
        pos = 2
        for _ in range(count):
            head = body[pos].split()
            assert head[0] == "chi" and len(head) == 6
            k, lam, deg = int(head[1]), int(head[2]), int(head[3])
            eps = complex(_unhexf(head[4]), _unhexf(head[5]))
            tparts = body[pos + 1].split()
            rparts = body[pos + 2].split()
            assert tparts[:1] == ["theta"] and rparts[:1] == ["resid"]
            theta = np.array([_unhexf(s) for s in tparts[1:]], dtype=np.float64)
            resid = np.array([_unhexf(s) for s in rparts[1:]], dtype=np.float64)
            pos += 3
            assert lam == (1 if k % (q - 1) == 0 else 0)
            assert deg == d - 1 - lam
            assert theta.shape[0] == deg and resid.shape[0] == deg
            assert np.all(np.isfinite(theta)) and np.all(np.isfinite(resid))
            assert np.all(theta >= -np.pi) and np.all(theta < np.pi)
            records.append(
                lfunction.LData(
                    modulus=Q,
                    chi_index=k,
                    lambda_inf=lam,
                    degree=deg,
                    coeffs=None,
                    completed_coeffs=None,
                    remainder=None,
                    inv_roots=None,
                    eigenangles=theta,
                    rh_residuals=resid,
                    root_number=eps,
                    aberth_iterations=-1,
                )
            )
        assert pos == len(body)
        ks = [r.chi_index for r in records]
        assert ks == list(range(1, Q.group_order))
    except (AssertionError, IndexError, ValueError) as exc:
        raise CacheCorruptionError(f"malformed eigenangle cache {path}") from exc
    fam = lfunction.FamilyData(Q, precomputed=records)
    Q.set_family(fam)
    return fam


def cache_info(cache_dir):
    """Describe every cache file in the directory: kind, version, key
    prefix, parse status.  Corruption is reported, not raised."""
    cache_dir = Path(cache_dir)
    rows = []
    if not cache_dir.is_dir():
        return rows
    for path in sorted(cache_dir.glob("*.txt")):
        row = {
            "file": path.name,
            "kind": "unknown",
            "version": "",
            "key": "",
            "records": "",
            "status": "ok",
        }
        try:
            lines = _read_lines(path)
        except CacheCorruptionError:
            row["status"] = "corrupt"
            rows.append(row)
            continue
        if lines:
            head = lines[0].rsplit(" ", 1)
            if len(head) == 2 and head[0] in (UNITGROUP_KIND, EIGEN_KIND):
                row["kind"] = head[0].split()[-1]
                row["version"] = head[1]
        if len(lines) >= 2 and lines[1].startswith("key "):
            row["key"] = lines[1][4:28]
        prefixes = {
            "unitgroup": ("key ", "q ", "generator ", "dlog ", "end"),
            "eigenangles": ("key ", "q ", "count ", "chi ", "theta", "resid", "end"),
        }.get(row["kind"], ())
        shape_ok = bool(lines) and all(
            ln.startswith(prefixes) for ln in lines[1:] if ln
        )
        if not lines or lines[-1] != "end" or row["kind"] == "unknown" or not shape_ok:
            row["status"] = "corrupt"
        else:
            row["records"] = str(
                sum(1 for ln in lines if ln.startswith("chi "))
                or sum(1 for ln in lines if ln.startswith("dlog "))
            )
        rows.append(row)
    return rows

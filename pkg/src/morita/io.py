"""Byte-exact JSON formats for skeletal data, groups, and cocycles.

A skeletal file is a single JSON document with the top-level keys

    format_version   always 1
    category_c       {"rank": R, "fusion": {"a,b,c": N}}
    category_d       optional, same shape
    module           {"rank": M, "left_action": {"x,a,c": N},
                      "right_action": {"a,y,c": N} (optional)}
    f0 .. f4         optional sparse tensors keyed "a,b,c,d|al,e,be|mu,f,nu"
    tolerance        optional

Labels are 0-based with the unit at 0; multiplicity indices are 1-based in
files (0-based in memory). Values are [re, im] float pairs and an absent key
is a structural zero. Saving is canonical: sorted keys, compact separators,
entries below 1e-14 dropped; loading a saved file and saving it again
reproduces the same bytes.
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

import numpy as np

from .errors import FormatError
from .skeletal import (BimoduleData, FAMILY_KINDS, GaugeTransform, ModuleData,
                       SkeletalCategory, UNIT, _apply_gauge_raw,
                       verify_unit_blocks)
from .vecg import Cocycle, FiniteGroup

FORMAT_VERSION = 1
SAVE_PRUNE = 1e-14


# ---------------------------------------------------------------------------
# encoding


def _encode_tensor(entries: dict) -> dict:
    out = {}
    for key, val in entries.items():
        if abs(val) <= SAVE_PRUNE:
            continue
        a, b, c, d, al, e, be, mu, f, nu = key
        skey = f"{a},{b},{c},{d}|{al + 1},{e},{be + 1}|{mu + 1},{f},{nu + 1}"
        out[skey] = [float(val.real) + 0.0, float(val.imag) + 0.0]
    return out


def _decode_tensor(obj: dict, where: str) -> dict:
    entries = {}
    for skey, val in obj.items():
        try:
            upper, row, col = skey.split("|")
            a, b, c, d = (int(x) for x in upper.split(","))
            al, e, be = (int(x) for x in row.split(","))
            mu, f, nu = (int(x) for x in col.split(","))
            re, im = float(val[0]), float(val[1])
        except (ValueError, IndexError, TypeError) as exc:
            raise FormatError(f"bad F entry {skey!r} in {where}: {exc}") from exc
        if min(al, be, mu, nu) < 1:
            raise FormatError(f"multiplicity indices are 1-based in files: {skey!r}")
        entries[(a, b, c, d, al - 1, e, be - 1, mu - 1, f, nu - 1)] = complex(re, im)
    return entries


def _encode_int_tensor(arr: np.ndarray) -> dict:
    out = {}
    for idx in itertools.product(*(range(s) for s in arr.shape)):
        if arr[idx]:
            out[",".join(str(i) for i in idx)] = int(arr[idx])
    return out


def _decode_int_tensor(obj: dict, shape, where: str) -> np.ndarray:
    arr = np.zeros(shape, dtype=int)
    for skey, val in obj.items():
        try:
            idx = tuple(int(x) for x in skey.split(","))
            arr[idx] = int(val)
        except (ValueError, IndexError) as exc:
            raise FormatError(f"bad index {skey!r} in {where}: {exc}") from exc
    return arr


def _encode_category(cat: SkeletalCategory) -> dict:
    return {"rank": cat.rank, "fusion": _encode_int_tensor(cat.fusion)}


def to_document(data) -> dict:
    """The canonical JSON-ready dictionary for any data container."""
    doc = {"format_version": FORMAT_VERSION}
    if isinstance(data, SkeletalCategory):
        doc["category_c"] = _encode_category(data)
        doc["f0"] = _encode_tensor(data.f0.entries)
        doc["tolerance"] = data.tolerance
    elif isinstance(data, ModuleData):
        doc["category_c"] = _encode_category(data.base)
        doc["module"] = {"rank": data.mrank,
                         "left_action": _encode_int_tensor(data.act)}
        doc["f0"] = _encode_tensor(data.f0.entries)
        doc["f1"] = _encode_tensor(data.f1.entries)
        doc["tolerance"] = data.tolerance
    elif isinstance(data, BimoduleData):
        doc["category_c"] = _encode_category(data.left)
        doc["category_d"] = _encode_category(data.right)
        doc["module"] = {"rank": data.mrank,
                         "left_action": _encode_int_tensor(data.left_act),
                         "right_action": _encode_int_tensor(data.right_act)}
        doc["f0"] = _encode_tensor(data.f0.entries)
        doc["f1"] = _encode_tensor(data.f1.entries)
        doc["f2"] = _encode_tensor(data.f2.entries)
        doc["f3"] = _encode_tensor(data.f3.entries)
        doc["f4"] = _encode_tensor(data.f4.entries)
        doc["tolerance"] = data.tolerance
    else:
        raise TypeError(f"cannot serialize {type(data)!r}")
    return doc


def dumps(data) -> str:
    return json.dumps(to_document(data), sort_keys=True, separators=(",", ":")) + "\n"


def save(data, path) -> None:
    Path(path).write_text(dumps(data), encoding="utf-8")


# ---------------------------------------------------------------------------
# decoding


def from_document(doc: dict, canonicalize_gauge: bool = True):
    """Build the appropriate container from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise FormatError("top-level JSON value must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r}")
    if "category_c" not in doc:
        raise FormatError("missing required key 'category_c'")
    tol = float(doc.get("tolerance", 1e-9))
    cat_c = doc["category_c"]
    r = int(cat_c["rank"])
    fusion = _decode_int_tensor(cat_c.get("fusion", {}), (r, r, r), "category_c")
    f0 = _decode_tensor(doc.get("f0", {}), "f0")
    if "module" not in doc:
        data = SkeletalCategory(fusion, f0, tolerance=tol)
    else:
        mod = doc["module"]
        mrank = int(mod["rank"])
        left_act = _decode_int_tensor(mod.get("left_action", {}), (r, mrank, mrank),
                                      "left_action")
        f1 = _decode_tensor(doc.get("f1", {}), "f1")
        base = SkeletalCategory(fusion, f0, tolerance=tol)
        if "category_d" in doc:
            cat_d = doc["category_d"]
            rd = int(cat_d["rank"])
            fusion_d = _decode_int_tensor(cat_d.get("fusion", {}), (rd, rd, rd),
                                          "category_d")
            right_act = _decode_int_tensor(mod.get("right_action", {}),
                                           (mrank, rd, mrank), "right_action")
            f4 = _decode_tensor(doc.get("f4", {}), "f4")
            right = SkeletalCategory(fusion_d, f4, tolerance=tol)
            data = BimoduleData(base, right, left_act, right_act,
                                f1, _decode_tensor(doc.get("f2", {}), "f2"),
                                _decode_tensor(doc.get("f3", {}), "f3"),
                                tolerance=tol)
        else:
            data = ModuleData(base, left_act, f1, tolerance=tol)
    if canonicalize_gauge:
        data, gauge = canonicalize(data)
        data.canonical_gauge = gauge
    return data


def loads(text: str, canonicalize_gauge: bool = True):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return from_document(doc, canonicalize_gauge)


def load(path, canonicalize_gauge: bool = True):
    return loads(Path(path).read_text(encoding="utf-8"), canonicalize_gauge)


# ---------------------------------------------------------------------------
# unit-gauge canonicalization


def _is_unit_space(kind: str, triple) -> bool:
    x, y, _ = triple
    if kind in ("cc", "dd"):
        return x == UNIT or y == UNIT
    if kind == "cm":
        return x == UNIT
    return y == UNIT


def _unit_block_equations(data):
    """One multiplicative phase equation per unit-strand block.

    Each block must be scalar times identity; the equation relates that
    scalar to the phases of the unit-strand vertex spaces it touches (rows
    direct, columns conjugated).
    """
    from .skeletal import _tensors_of, _unit_slots

    eqs = []
    for name, tens in _tensors_of(data).items():
        k1, k2, k3, k4, _, _ = FAMILY_KINDS[name]
        for key in tens.upper_keys():
            if not any(key[s] == UNIT for s in _unit_slots(name)):
                continue
            rows, cols, mat = tens.block(*key)
            if not rows:
                continue
            if len(rows) != len(cols):
                raise FormatError(f"unit block {name}{key} is not square")
            s = np.trace(mat) / len(rows)
            if np.max(np.abs(mat - s * np.eye(len(rows)))) > 1e-9 * max(1.0, abs(s)) \
                    or abs(abs(s) - 1.0) > 1e-9:
                raise FormatError(
                    f"unit block {name}{key} is not a phase times the identity; "
                    f"cannot canonicalize this gauge")
            if abs(s - 1.0) < 1e-12:
                continue
            a, b, c, d = key
            exponents: dict = {}
            for kind, triple, sign in (
                    (k1, (a, b, rows[0][1]), +1), (k2, (rows[0][1], c, d), +1),
                    (k3, (b, c, cols[0][1]), -1), (k4, (a, cols[0][1], d), -1)):
                if _is_unit_space(kind, triple):
                    var = (kind, triple)
                    exponents[var] = exponents.get(var, 0) + sign
            exponents = {v: e for v, e in exponents.items() if e != 0}
            eqs.append((exponents, complex(s), f"{name}{key}"))
    return eqs


def canonicalize(data):
    """Bring unit-strand blocks to exact identity, recording the transform.

    Already-normalized data is returned unchanged. Otherwise the unit-block
    scalars are absorbed into phases of the unit-strand vertex spaces by
    propagation; inputs whose unit blocks are not scalar, or whose phase
    system is inconsistent, are rejected.
    """
    worst = max(verify_unit_blocks(data).values(), default=0.0)
    if worst <= 1e-9:
        return data, GaugeTransform()
    eqs = _unit_block_equations(data)
    phases: dict = {}
    pending = list(eqs)
    while pending:
        progress = False
        remaining = []
        for exponents, s, label in pending:
            unknown = [(v, e) for v, e in exponents.items() if v not in phases]
            if not unknown:
                val = np.prod([phases[v] ** e for v, e in exponents.items()])
                if abs(val * s - 1.0) > 1e-8:
                    raise FormatError(
                        f"inconsistent unit-gauge phases at block {label}")
                progress = True
            elif len(unknown) == 1:
                var, exp = unknown[0]
                rest = complex(np.prod([phases[v] ** e for v, e in exponents.items()
                                        if v in phases]))
                # solve (var^exp) * rest * s = 1 on the unit circle
                target = 1.0 / (rest * s)
                phases[var] = complex(target) ** (1.0 / exp)
                progress = True
            else:
                remaining.append((exponents, s, label))
        if not progress and remaining:
            # anchor one free variable and keep going
            free = sorted({v for exponents, _, _ in remaining
                           for v in exponents if v not in phases})
            phases[free[0]] = 1.0 + 0.0j
            progress = True
        pending = remaining
        if not progress:
            break
    gauge = GaugeTransform()
    for (kind, triple), val in phases.items():
        gauge.maps[kind][triple] = np.array([[val]], dtype=complex)
    fixed = _apply_gauge_raw(data, gauge)
    residual = max(verify_unit_blocks(fixed).values(), default=0.0)
    if residual > 1e-9:
        raise FormatError(
            f"unit-gauge canonicalization failed (residual {residual:.2e}); "
            f"supply the data in the normalized gauge")
    return fixed, gauge


# ---------------------------------------------------------------------------
# groups and cocycles


def load_group(path) -> FiniteGroup:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if "table" not in doc:
        raise FormatError("group file must contain a 'table' key")
    return FiniteGroup(np.asarray(doc["table"], dtype=int),
                       name=doc.get("name", ""))


def load_cocycle(path, group: FiniteGroup) -> Cocycle:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    n = group.order
    vals = np.ones((n, n), dtype=complex)
    for skey, val in doc.get("values", {}).items():
        try:
            g, h = (int(x) for x in skey.split(","))
            vals[g, h] = complex(float(val[0]), float(val[1]))
        except (ValueError, IndexError, TypeError) as exc:
            raise FormatError(f"bad cocycle entry {skey!r}: {exc}") from exc
    return Cocycle(group, vals)


def save_group(group: FiniteGroup, path) -> None:
    doc = {"name": group.name, "order": group.order,
           "table": group.table.tolist()}
    Path(path).write_text(json.dumps(doc, sort_keys=True, separators=(",", ":"))
                          + "\n", encoding="utf-8")

"""JSON ensemble descriptions and analysis reports.

An ensemble file looks like::

    {
      "name": "hamming-rm",
      "vn_types": [
        {"id": "H", "generator": ["1000111", "0100110", "0010101", "0001011"], "lambda": "7/15"},
        {"id": "RM", "code": "rm1:3", "lambda": "8/15"}
      ],
      "cn_types": [{"id": "H15", "code": "hamming:4", "rho": "1"}]
    }

A type's code is given by exactly one of ``generator`` (bit-string rows),
``parity_check`` (bit-string rows), ``code`` (``repetition:q``, ``spc:s``,
``hamming:m`` or ``rm1:m``), ``io_enumerator`` (``[[u, v, count], ...]``,
variable nodes only) or ``weight_enumerator`` (``[A_0, A_1, ...]``, check
nodes only).  Fractions are integers or strings such as ``"7/15"``; floats
are rejected because they cannot carry values like 7/15 exactly.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from . import __version__
from .binary_codes import (
    BitMatrix,
    BivariateEnumerator,
    ComponentCode,
    WeightEnumerator,
    code_from_parity_check,
    hamming_code,
    reed_muller_first_order,
    repetition_code,
    spc_code,
)
from .ensemble import CNType, DerivedParams, Ensemble, VNType
from .errors import DGLDPCError, SpecError

_NAMED = {
    "repetition": repetition_code,
    "spc": spc_code,
    "hamming": hamming_code,
    "rm1": reed_muller_first_order,
}
_CODE_KEYS = ("generator", "parity_check", "code", "io_enumerator", "weight_enumerator")


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SpecError(f"{where}: use an integer or a string like \"7/15\", not {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SpecError(f"{where}: malformed rational {value!r}") from None
    raise SpecError(f"{where}: expected a rational, got {type(value).__name__}")


def _bit_rows(value, where: str) -> BitMatrix:
    if not isinstance(value, list) or not all(isinstance(r, str) for r in value):
        raise SpecError(f"{where}: expected a list of bit strings")
    try:
        return BitMatrix.from_strings(value)
    except SpecError as exc:
        raise SpecError(f"{where}: {exc}") from None


def _code(entry: dict, where: str, role: str) -> ComponentCode:
    present = [k for k in _CODE_KEYS if k in entry]
    if len(present) != 1:
        raise SpecError(f"{where}: give exactly one of {', '.join(_CODE_KEYS)} (found {present or 'none'})")
    key = present[0]
    value = entry[key]
    name = str(entry.get("id", ""))
    length = entry.get("length", 0)
    if not isinstance(length, int) or isinstance(length, bool) or length < 0:
        raise SpecError(f"{where}.length: expected a nonnegative integer")
    try:
        if key == "generator":
            return ComponentCode(_bit_rows(value, f"{where}.generator"), name=name)
        if key == "parity_check":
            return code_from_parity_check(_bit_rows(value, f"{where}.parity_check"), name=name)
        if key == "code":
            family, _, param = str(value).partition(":")
            if family not in _NAMED or not param.isdigit():
                raise SpecError(f"{where}.code: unknown code {value!r}; use one of {', '.join(f'{k}:<int>' for k in _NAMED)}")
            return _NAMED[family](int(param))
        if key == "io_enumerator":
            if role != "vn":
                raise SpecError(f"{where}: io_enumerator applies to variable nodes only")
            if not isinstance(value, list) or not all(isinstance(t, list) and len(t) == 3 for t in value):
                raise SpecError(f"{where}.io_enumerator: expected [[u, v, count], ...]")
            return ComponentCode(io=BivariateEnumerator({(u, v): c for u, v, c in value}), length=length, name=name)
        if role != "cn":
            raise SpecError(f"{where}: weight_enumerator applies to check nodes only")
        if not isinstance(value, list) or not all(isinstance(c, int) for c in value):
            raise SpecError(f"{where}.weight_enumerator: expected a list of integer counts")
        return ComponentCode(weights=WeightEnumerator(tuple(value)), length=length, name=name)
    except SpecError as exc:
        if str(exc).startswith(where):
            raise
        raise SpecError(f"{where}: {exc}") from None


def ensemble_from_dict(data: dict) -> Ensemble:
    if not isinstance(data, dict):
        raise SpecError("top level must be a JSON object")
    unknown = set(data) - {"name", "vn_types", "cn_types"}
    if unknown:
        raise SpecError(f"unknown top-level fields: {sorted(unknown)}")
    types = {}
    for role, field, frac_key, cls in (("vn", "vn_types", "lambda", VNType), ("cn", "cn_types", "rho", CNType)):
        entries = data.get(field)
        if not isinstance(entries, list) or not entries:
            raise SpecError(f"{field}: expected a nonempty list")
        parsed = []
        for idx, entry in enumerate(entries):
            where = f"{field}[{idx}]"
            if not isinstance(entry, dict):
                raise SpecError(f"{where}: expected an object")
            if frac_key not in entry:
                raise SpecError(f"{where}: missing {frac_key!r}")
            frac = _rational(entry[frac_key], f"{where}.{frac_key}")
            parsed.append(cls(_code(entry, where, role), frac, str(entry.get("id", idx + 1))))
        types[role] = tuple(parsed)
    return Ensemble(types["vn"], types["cn"], str(data.get("name", "")))


def load_ensemble(path) -> Ensemble:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return ensemble_from_dict(data)


def _code_to_dict(code: ComponentCode, role: str) -> dict:
    if code.has_generator:
        return {"generator": code.generator.to_strings()}
    if role == "vn":
        return {"io_enumerator": [[u, v, c] for (u, v), c in code.io_enum.items()], "length": code.length}
    return {"weight_enumerator": list(code.weight_enum.coeffs), "length": code.length}


def ensemble_to_dict(ens: Ensemble) -> dict:
    """Canonical form: explicit generators (or tables) and string fractions."""
    return {
        "name": ens.name,
        "vn_types": [{"id": t.id, **_code_to_dict(t.code, "vn"), "lambda": str(t.fraction)} for t in ens.vn_types],
        "cn_types": [{"id": t.id, **_code_to_dict(t.code, "cn"), "rho": str(t.fraction)} for t in ens.cn_types],
    }


def spec_hash(ens: Ensemble) -> str:
    blob = json.dumps(ensemble_to_dict(ens), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def same_ensemble(a: Ensemble, b: Ensemble) -> bool:
    return ensemble_to_dict(a) == ensemble_to_dict(b)


# ---------------------------------------------------------------------------
# Reports


def _q(x) -> str | None:
    return None if x is None else str(x)


def derived_to_dict(par: DerivedParams) -> dict:
    """Derived quantities with rationals as strings and 1-based type indices."""
    out = {
        "stopping": par.stopping,
        "int_lambda": _q(par.int_lambda),
        "int_rho": _q(par.int_rho),
        "delta": [_q(d) for d in par.delta],
        "gamma": [_q(g) for g in par.gamma],
        "edges_per_n": _q(par.edges_per_n),
        "cns_per_n": _q(par.cns_per_n),
        "codeword_len_per_n": _q(par.codeword_len_per_n),
        "design_rate": _q(par.design_rate),
        "r": par.r,
        "r_bar": par.r_bar,
        "p": par.p,
        "p_bar": par.p_bar,
        "psi": _q(par.psi),
        "C": _q(par.C),
        "V": _q(par.V),
        "X_c": sorted(t + 1 for t in par.X_c),
        "X_v": sorted(t + 1 for t in par.X_v),
        "issues": list(par.issues),
    }
    if par.expansion_applicable:
        dom = par.dominant
        out["dominant_set"] = {
            "T": _q(dom.T),
            "Y_v": sorted(t + 1 for t in dom.Y_v),
            "P": {str(t + 1): [list(pt) for pt in pts] for t, pts in dom.P.items()},
            "chi": _q(dom.chi),
        }
    return out


def build_report(ens: Ensemble, sections: dict, seed: int | None = None) -> dict:
    report = {
        "tool": "dgldpc",
        "version": __version__,
        "spec_sha256": spec_hash(ens),
        "spec": ensemble_to_dict(ens),
    }
    if seed is not None:
        report["seed"] = seed
    report.update(sections)
    return report


def ensemble_from_report(report: dict) -> Ensemble:
    ens = ensemble_from_dict(report["spec"])
    if spec_hash(ens) != report.get("spec_sha256"):
        raise DGLDPCError("embedded spec does not match its recorded hash")
    return ens

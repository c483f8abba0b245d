"""JSON model files.

Indices in files are 1-based and the first ``p`` basis vectors span the
foliation.  Rationals are strings such as ``"-3/2"``; plain JSON integers
are accepted too, floats never.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exterior import Form, Frame
from .foliated import LieModel

_RATIONAL = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*")


class ModelFileError(ValueError):
    """The file is not a well-formed model description."""


def parse_rational(value: Any, where: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ModelFileError(f"{where}: expected a rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ModelFileError(f"{where}: expected a rational string, got {value!r}")
    m = _RATIONAL.fullmatch(value)
    if not m:
        raise ModelFileError(f"{where}: malformed rational {value!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ModelFileError(f"{where}: zero denominator in {value!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _int(data: dict, key: str, where: str) -> int:
    if key not in data:
        raise ModelFileError(f"{where}: missing field {key!r}")
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ModelFileError(f"{where}: field {key!r} must be an integer")
    return v


def _pair(entry: Any, m: int, where: str) -> tuple[int, int]:
    if not isinstance(entry, dict):
        raise ModelFileError(f"{where}: expected an object")
    i, j = _int(entry, "i", where), _int(entry, "j", where)
    for v in (i, j):
        if not 1 <= v <= m:
            raise ModelFileError(f"{where}: index {v} outside 1..{m}")
    if not i < j:
        raise ModelFileError(f"{where}: need i < j, got i={i}, j={j}")
    return i - 1, j - 1


def model_from_dict(data: Any) -> LieModel:
    if not isinstance(data, dict):
        raise ModelFileError("model file must contain a JSON object")
    m = _int(data, "dimension", "model")
    p = _int(data, "p", "model")
    n = _int(data, "n", "model")
    if p < 0 or n < 0 or m != p + 2 * n:
        raise ModelFileError(f"model: dimension {m} must equal p + 2n = {p + 2 * n}")
    name = data.get("name", "model")
    if not isinstance(name, str):
        raise ModelFileError("model: name must be a string")
    names = data.get("basis_names")
    if names is None:
        names = [f"e{i}" for i in range(1, m + 1)]
    if (not isinstance(names, list) or len(names) != m
            or not all(isinstance(s, str) and s for s in names) or len(set(names)) != m):
        raise ModelFileError(f"model: basis_names must list {m} distinct non-empty strings")
    frame = Frame(p, n, tuple(names))

    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    raw_brackets = data.get("brackets", [])
    if not isinstance(raw_brackets, list):
        raise ModelFileError("model: brackets must be a list")
    for pos, entry in enumerate(raw_brackets):
        where = f"brackets[{pos}]"
        key = _pair(entry, m, where)
        if key in brackets:
            raise ModelFileError(f"{where}: duplicate bracket [{key[0] + 1},{key[1] + 1}]")
        coeffs = entry.get("coeffs", {})
        if not isinstance(coeffs, dict):
            raise ModelFileError(f"{where}: coeffs must map indices to rationals")
        row = {}
        for k, c in coeffs.items():
            try:
                kk = int(k)
            except ValueError:
                raise ModelFileError(f"{where}: bad index {k!r}") from None
            if not 1 <= kk <= m:
                raise ModelFileError(f"{where}: index {kk} outside 1..{m}")
            row[kk - 1] = parse_rational(c, f"{where}.coeffs[{k}]")
        brackets[key] = row

    raw_omega = data.get("omega")
    if not isinstance(raw_omega, list):
        raise ModelFileError("model: omega must be a list")
    omega = {}
    for pos, entry in enumerate(raw_omega):
        where = f"omega[{pos}]"
        key = _pair(entry, m, where)
        if "coeff" not in entry:
            raise ModelFileError(f"{where}: missing field 'coeff'")
        omega[key] = omega.get(key, Fraction(0)) + parse_rational(entry["coeff"], where)
    try:
        return LieModel(name, frame, brackets, Form(frame, 2, omega))
    except ValueError as exc:
        raise ModelFileError(f"model: {exc}") from None


def parse_model(text: str) -> LieModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"invalid JSON: {exc}") from None
    return model_from_dict(data)


def load_model(path: str | Path) -> LieModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise ModelFileError(f"{path} is not UTF-8 text") from None
    return parse_model(text)


def model_to_dict(model: LieModel) -> dict:
    frame = model.frame
    brackets = []
    for (i, j), row in sorted(model.brackets.items()):
        if row:
            brackets.append({"i": i + 1, "j": j + 1,
                             "coeffs": {str(k + 1): format_rational(c) for k, c in sorted(row.items())}})
    omega = [{"i": k[0] + 1, "j": k[1] + 1, "coeff": format_rational(c)}
             for k, c in sorted(model.omega.coeffs.items())]
    return {
        "name": model.name,
        "dimension": frame.m,
        "p": frame.p,
        "n": frame.n,
        "basis_names": list(frame.names),
        "brackets": brackets,
        "omega": omega,
    }


def dump_model(model: LieModel) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"

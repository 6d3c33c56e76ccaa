"""JSON spec files describing a FunctionSpec.

::

    {"matrix":  {"preamble": [], "period": [["1/3", "1/3", "1/3"]]},
     "epsilon": {"preamble": [], "period": ["0"]}}

Rationals are strings ``"p/q"`` / ``"p"`` or JSON integers.  Floats are
refused so the exact path never sees binary rounding.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .gfun import EpsilonSchedule, FunctionSpec
from .repsys import ColumnSchedule, MatrixColumn

_RATIONAL = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


class SpecError(ValueError):
    """Malformed or invalid spec file; the message names the offending field."""


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SpecError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise SpecError(f"{where}: zero denominator in {value!r}") from None
    raise SpecError(f"{where}: expected 'p/q' string or integer, got {value!r}")


def _block(doc: dict, key: str, where: str) -> tuple[list, list]:
    block = doc.get(key)
    if not isinstance(block, dict):
        raise SpecError(f"{where}: missing object {key!r}")
    pre = block.get("preamble", [])
    per = block.get("period")
    if not isinstance(pre, list):
        raise SpecError(f"{where}.{key}.preamble: expected a list")
    if not isinstance(per, list) or not per:
        raise SpecError(f"{where}.{key}.period: expected a nonempty list")
    return pre, per


def _column(value, where: str) -> MatrixColumn:
    if not isinstance(value, list) or len(value) != 3:
        raise SpecError(f"{where}: expected a triple [q0, q1, q2]")
    qs = [_rational(v, f"{where}[{i}]") for i, v in enumerate(value)]
    if min(qs) <= 0:
        raise SpecError(f"{where}: column entries must be positive")
    if sum(qs) != 1:
        raise SpecError(f"{where}: column does not sum to 1 (sum = {sum(qs)})")
    return MatrixColumn(*qs)


def _eps(value, where: str) -> Fraction:
    e = _rational(value, where)
    if not 0 <= e <= 1:
        raise SpecError(f"{where}: epsilon out of [0,1] ({e})")
    return e


def parse_spec_file(text: str) -> FunctionSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SpecError("top level: expected a JSON object")
    mpre, mper = _block(doc, "matrix", "spec")
    epre, eper = _block(doc, "epsilon", "spec")
    matrix = ColumnSchedule(
        tuple(_column(c, f"matrix.preamble[{i}]") for i, c in enumerate(mpre)),
        tuple(_column(c, f"matrix.period[{i}]") for i, c in enumerate(mper)),
    )
    eps = EpsilonSchedule(
        tuple(_eps(e, f"epsilon.preamble[{i}]") for i, e in enumerate(epre)),
        tuple(_eps(e, f"epsilon.period[{i}]") for i, e in enumerate(eper)),
    )
    return FunctionSpec(matrix, eps)


def load_spec(path) -> FunctionSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec_file(fh.read())


def _fmt(q: Fraction) -> str:
    return str(q)


def dump_spec(f: FunctionSpec) -> str:
    doc = {
        "matrix": {
            "preamble": [[_fmt(q) for q in c.widths] for c in f.x_schedule.preamble],
            "period": [[_fmt(q) for q in c.widths] for c in f.x_schedule.period],
        },
        "epsilon": {
            "preamble": [_fmt(e) for e in f.eps.preamble],
            "period": [_fmt(e) for e in f.eps.period],
        },
    }
    return json.dumps(doc, indent=2)

"""JSON codecs for the command line tool.

Every rational travels as an exact string "p/q" -- the denominator is kept
even when it is 1, so values round-trip byte-for-byte.  Laurent series are
{exponent: rational} objects, matrices are row lists, and time polynomials
come back out as {monomial: rational} with monomials spelled "t1^2 s3".
Float values are rejected everywhere -- the pipeline is exact end to end
and a binary float is almost always an upstream mistake.  Decimal strings
("0.5") are fine; they parse exactly.

Input files are single JSON objects tagged by "kind":

    {"kind": "point",  "gens": [{"-1": "1", "0": "3/2"}, ...], "tail": 2,
     "window": [-8, 8]}                                  (window optional)
    {"kind": "matrix", "entries": [["0", "1"], ["-1", "0"]]}
    {"kind": "curve",  "ring_gens": [...], "module_gens": [...],
     "label": "..."}                      (module_gens and label optional)
    {"kind": "family", "flows": {"1": "a", "3": "1/2"}, "floor": -8}

A family flow value is either an exact rational or the name of a formal
coefficient family ("a" above); the name "t" is reserved for the times.
"""

import json
import re
from fractions import Fraction

from .errors import ParseError
from .grassmann import FramePoint
from .krichever import CurveData
from .series import LaurentSeries

KINDS = ("point", "matrix", "curve", "family")

_FAMILY_RE = re.compile(r"[a-z]+\Z")


def parse_frac(value):
    """Exact rational from a JSON scalar: "p/q", "p", or an integer."""
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not an exact rational: {value!r}") from None
    raise ParseError(
        f"expected a rational as 'p/q' string or integer, got {value!r}"
    )


def frac_str(value):
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def _int_key(key, what):
    try:
        return int(key)
    except (TypeError, ValueError):
        raise ParseError(f"{what} must be an integer, got {key!r}") from None


def series_from_json(obj):
    if not isinstance(obj, dict):
        raise ParseError(f"a series is an object of exponent: value, got {obj!r}")
    coeffs = {_int_key(e, "exponent"): parse_frac(c) for e, c in obj.items()}
    return LaurentSeries(coeffs)


def series_to_json(f):
    return {str(e): frac_str(c) for e, c in sorted(f.coeffs.items())}


def mono_str(mono):
    """Render a TimePolynomial monomial key: "t1^2 s3"; "" is the constant."""
    return " ".join(
        f"{fam}{k}" + (f"^{m}" if m > 1 else "") for (fam, k), m in mono
    )


def poly_to_json(p):
    terms = {mono_str(m) or "1": frac_str(c) for m, c in p.terms.items()}
    return {"cap": p.maxweight, "terms": dict(sorted(terms.items()))}


def matrix_from_json(rows):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix entries must be a list of rows")
    return [[parse_frac(v) for v in row] for row in rows]


def matrix_to_json(m):
    return [[frac_str(v) for v in row] for row in m]


def _window_from_json(obj, default):
    win = obj.get("window")
    if win is None:
        return default
    if (
        not isinstance(win, list)
        or len(win) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in win)
        or win[0] >= win[1]
    ):
        raise ParseError(f"window must be [lo, hi] with lo < hi, got {win!r}")
    return tuple(win)


def point_from_json(obj, window):
    gens = obj.get("gens")
    if not isinstance(gens, list):
        raise ParseError("a point file needs a list of generators under 'gens'")
    tail = obj.get("tail")
    if not isinstance(tail, int) or isinstance(tail, bool) or tail < 0:
        raise ParseError(f"'tail' must be a nonnegative integer, got {tail!r}")
    win = _window_from_json(obj, window)
    return FramePoint.from_gens([series_from_json(g) for g in gens], tail, win)


def curve_from_json(obj, window):
    gens = obj.get("ring_gens")
    if not isinstance(gens, list) or not gens:
        raise ParseError("a curve file needs a nonempty list under 'ring_gens'")
    mods = obj.get("module_gens", [])
    if not isinstance(mods, list):
        raise ParseError("'module_gens' must be a list")
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise ParseError("'label' must be a string")
    data = CurveData(
        tuple(series_from_json(g) for g in gens),
        tuple(series_from_json(m) for m in mods),
        label=label,
    )
    return data, _window_from_json(obj, window)


def family_from_json(obj):
    """Flow data: {exponent: coefficient}, truncation floor, optional base.

    A coefficient is an exact rational or the name of a formal family; the
    base (a point object, same shape as a point file minus the kind tag)
    defaults to the standard flag when absent.
    """
    flows = obj.get("flows")
    if not isinstance(flows, dict) or not flows:
        raise ParseError("a family file needs a nonempty object under 'flows'")
    out = {}
    for key, value in flows.items():
        k = _int_key(key, "flow exponent")
        if k < 1:
            raise ParseError(f"flow exponents must be positive, got {k}")
        if isinstance(value, str) and _FAMILY_RE.fullmatch(value):
            if value == "t":
                raise ParseError("family name 't' is reserved for the times")
            out[k] = value
        else:
            out[k] = parse_frac(value)
    floor = obj.get("floor", -8)
    if not isinstance(floor, int) or isinstance(floor, bool) or floor >= 0:
        raise ParseError(f"'floor' must be a negative integer, got {floor!r}")
    base = obj.get("base")
    if base is not None and not isinstance(base, dict):
        raise ParseError("'base' must be a point object")
    return out, floor, base


def load_input(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict) or obj.get("kind") not in KINDS:
        raise ParseError(
            f"{path}: input must be an object with 'kind' one of {', '.join(KINDS)}"
        )
    return obj

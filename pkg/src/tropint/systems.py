"""SystemFile parsing and exact JSON serialization for reports."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import TropintError
from .tropical import TropicalPolynomial

_RATIONAL = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*")
_WS = re.compile(r"[ \t\n\r]*")
_decoder = json.JSONDecoder()


class ParseError(TropintError, ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class SystemFile:
    vars: int
    polynomials: tuple
    seed: int | None = None
    samples: int | None = None
    box: int | None = None

    def normalized(self) -> dict:
        """Canonical JSON-ready form: sorted terms, reduced rationals."""
        out = {
            "vars": self.vars,
            "polynomials": [
                {"terms": [{"exp": list(e), "coef": str(c)} for e, c in p.terms]}
                for p in self.polynomials
            ],
        }
        for key in ("seed", "samples", "box"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ValueError(f"coefficient {text!r} must be an integer or a 'p/q' string")
    if isinstance(text, int):
        return Fraction(text)
    m = _RATIONAL.fullmatch(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError("denominator zero")
    return Fraction(num, den)


def _scan(text: str, idx: int, path: tuple, out: dict) -> int:
    """Record the offset of every value by its path; text is known-valid JSON."""
    idx = _WS.match(text, idx).end()
    out[path] = idx
    ch = text[idx]
    if ch in "{[":
        close = "}" if ch == "{" else "]"
        idx = _WS.match(text, idx + 1).end()
        if text[idx] == close:
            return idx + 1
        k = 0
        while True:
            if ch == "{":
                key, idx = _decoder.raw_decode(text, idx)
                idx = _WS.match(text, idx).end() + 1  # past ':'
                idx = _scan(text, idx, path + (key,), out)
            else:
                idx = _scan(text, idx, path + (k,), out)
            k += 1
            idx = _WS.match(text, idx).end()
            if text[idx] == ",":
                idx = _WS.match(text, idx + 1).end()
                continue
            return idx + 1
    _, end = _decoder.raw_decode(text, idx)
    return end


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _int_field(value, name, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}")
    return value


def parse_system(text: str) -> SystemFile:
    """Parse and validate a SystemFile; errors carry a line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    offsets: dict[tuple, int] = {}
    _scan(text, 0, (), offsets)

    def fail(path, message):
        while path not in offsets and path:
            path = path[:-1]
        raise ParseError(message, *_position(text, offsets.get(path, 0)))

    if not isinstance(data, dict):
        fail((), "top level must be an object")
    unknown = set(data) - {"vars", "polynomials", "seed", "samples", "box"}
    if unknown:
        fail((sorted(unknown)[0],), f"unknown field {sorted(unknown)[0]!r}")
    if "vars" not in data:
        fail((), "missing field 'vars'")
    try:
        n = _int_field(data["vars"], "vars", 1)
    except ValueError as exc:
        fail(("vars",), str(exc))
    polys = data.get("polynomials")
    if not isinstance(polys, list) or not polys:
        fail(("polynomials",), "'polynomials' must be a non-empty list")

    parsed = []
    for i, poly in enumerate(polys):
        where = ("polynomials", i)
        if not isinstance(poly, dict) or set(poly) != {"terms"}:
            fail(where, "a polynomial is an object with exactly the field 'terms'")
        terms = poly["terms"]
        if not isinstance(terms, list) or not terms:
            fail(where + ("terms",), "'terms' must be a non-empty list")
        seen = {}
        for j, term in enumerate(terms):
            tw = where + ("terms", j)
            if not isinstance(term, dict) or set(term) != {"exp", "coef"}:
                fail(tw, "a term is an object with exactly the fields 'exp' and 'coef'")
            exp = term["exp"]
            if (not isinstance(exp, list) or len(exp) != n
                    or any(isinstance(x, bool) or not isinstance(x, int) for x in exp)):
                fail(tw + ("exp",), f"'exp' must be a list of {n} integers")
            key = tuple(exp)
            if key in seen:
                fail(tw + ("exp",), f"duplicate exponent {list(key)} (first at term {seen[key]})")
            seen[key] = j
            try:
                coef = parse_rational(term["coef"])
            except ValueError as exc:
                fail(tw + ("coef",), str(exc))
            parsed.append((i, key, coef))
    polynomials = tuple(
        TropicalPolynomial.from_terms([(e, c) for k, e, c in parsed if k == i], n)
        for i in range(len(polys)))

    extras = {}
    for key, minimum in (("seed", 0), ("samples", 1), ("box", 1)):
        if key in data:
            try:
                extras[key] = _int_field(data[key], key, minimum)
            except ValueError as exc:
                fail((key,), str(exc))
    return SystemFile(n, polynomials, **extras)


def to_jsonable(obj):
    """Fractions become 'p/q' strings (integral ones plain integers' strings)."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = [to_jsonable(x) for x in obj]
        return sorted(items) if isinstance(obj, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"

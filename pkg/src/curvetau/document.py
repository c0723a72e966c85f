"""Curve input documents and report documents.

Polynomial grammar (whitespace ignored)::

    poly   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := INT ["/" INT] | ("X" | "Y") ["^" INT]

Parametrizations are lists of ``[exponent, numerator, denominator]``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from curvetau.curve import Branch, Curve
from curvetau.errors import ParseError
from curvetau.series import BivariatePoly, format_poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([XY])|(\^)|(\*)|(/)|([+-]))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[col]!r}", 1, col + 1)
        kind = m.lastindex
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append((0, "", len(text)))
    return out


def parse_poly(text: str) -> BivariatePoly:
    """Parse the sparse-monomial grammar; errors carry a 1-based column."""
    toks = _tokens(text)
    i = 0

    def fail(msg, at):
        raise ParseError(msg, 1, toks[at][2] + 1)

    def expect_int(at):
        if toks[at][0] != 1:
            fail(f"expected an integer, found {toks[at][1] or 'end of input'!r}", at)
        return int(toks[at][1]), at + 1

    def term(at):
        coef = Fraction(1)
        a = b = 0
        while True:
            kind, val, _ = toks[at]
            if kind == 1:
                num, at = expect_int(at)
                den = 1
                if toks[at][0] == 5:
                    den, at = expect_int(at + 1)
                    if den == 0:
                        fail("zero denominator", at - 1)
                coef *= Fraction(num, den)
            elif kind == 2:
                at += 1
                e = 1
                if toks[at][0] == 3:
                    e, at = expect_int(at + 1)
                if val == "X":
                    a += e
                else:
                    b += e
            else:
                fail(f"expected a coefficient or variable, found {val or 'end of input'!r}", at)
            if toks[at][0] == 4:
                at += 1
                continue
            return coef, (a, b), at

    out: dict = {}
    sign = 1
    if toks[i][0] == 6:
        sign = -1 if toks[i][1] == "-" else 1
        i += 1
    while True:
        coef, mono, i = term(i)
        out[mono] = out.get(mono, Fraction(0)) + sign * coef
        kind, val, _ = toks[i]
        if kind == 0:
            break
        if kind != 6:
            fail(f"expected '+' or '-', found {val!r}", i)
        sign = -1 if val == "-" else 1
        i += 1
    return BivariatePoly.from_dict(out)


def _locate(text: str, needle: str, start: int = 0):
    """1-based (line, column) of ``needle`` in ``text``."""
    k = text.find(needle, start)
    if k < 0:
        return None, None
    line = text.count("\n", 0, k) + 1
    return line, k - (text.rfind("\n", 0, k) + 1) + 1


def _triples(value, where: str):
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of [exponent, num, den] triples")
    out = []
    for t in value:
        if (not isinstance(t, list) or len(t) != 3 or not all(isinstance(v, int) and not isinstance(v, bool) for v in t)):
            raise ParseError(f"{where}: malformed term {t!r}")
        e, n, d = t
        if d <= 0:
            raise ParseError(f"{where}: denominator must be positive in {t!r}")
        if e < 0:
            raise ParseError(f"{where}: negative exponent in {t!r}")
        out.append((e, Fraction(n, d)))
    return out


def _triples_out(terms) -> list:
    return [[e, c.numerator, c.denominator] for e, c in terms]


@dataclass
class CurveDocument:
    curve: Curve
    name: str = ""
    settings: dict = field(default_factory=dict)

    SETTINGS = ("precision_cap", "degree_cap", "bound_multiplier")

    @classmethod
    def loads(cls, text: str) -> "CurveDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(data, dict) or not isinstance(data.get("branches"), list) or not data["branches"]:
            raise ParseError("document must be an object with a nonempty 'branches' list", 1, 1)
        branches = []
        cursor = 0
        for k, rec in enumerate(data["branches"]):
            where = f"branch {k + 1}"
            if not isinstance(rec, dict) or not isinstance(rec.get("poly"), str):
                raise ParseError(f"{where}: missing 'poly' string")
            raw = json.dumps(rec["poly"])
            line, col = _locate(text, raw, cursor)
            if line is not None:
                cursor = text.find(raw, cursor) + len(raw)
            try:
                poly = parse_poly(rec["poly"])
            except ParseError as exc:
                # shift the column into document coordinates (past the opening quote)
                inner = exc.column or 1
                raise ParseError(f"{where}: {exc.args[0].split(' (line')[0]}",
                                 line, (col or 0) + inner) from None
            x = _triples(rec.get("param_x", []), f"{where} param_x")
            y = _triples(rec.get("param_y", []), f"{where} param_y")
            trunc = rec.get("trunc")
            if trunc is not None and (not isinstance(trunc, int) or trunc < 1):
                raise ParseError(f"{where}: trunc must be a positive integer or null")
            branches.append(Branch.make(poly, x, y, trunc, rec.get("label", "")))
        settings = data.get("settings") or {}
        if not isinstance(settings, dict):
            raise ParseError("'settings' must be an object")
        for key, v in settings.items():
            if key not in cls.SETTINGS:
                raise ParseError(f"unknown setting {key!r}")
            if not isinstance(v, int) or v < 1:
                raise ParseError(f"setting {key!r} must be a positive integer")
        return cls(Curve(tuple(branches)), str(data.get("name", "")), dict(settings))

    @classmethod
    def load(cls, path) -> "CurveDocument":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    def to_json(self) -> dict:
        out = {"name": self.name, "branches": []}
        for b in self.curve.branches:
            rec = {"poly": format_poly(b.poly), "param_x": _triples_out(b.x_terms),
                   "param_y": _triples_out(b.y_terms), "trunc": b.trunc}
            if b.label:
                rec["label"] = b.label
            out["branches"].append(rec)
        if self.settings:
            out["settings"] = dict(sorted(self.settings.items()))
        return out

    def dumps(self) -> str:
        """One branch record per line."""
        d = self.to_json()
        rows = ",\n".join("    " + json.dumps(rec, sort_keys=True) for rec in d["branches"])
        out = ["{", f'  "branches": [\n{rows}\n  ],', f'  "name": {json.dumps(d["name"])}']
        if "settings" in d:
            out[-1] += ","
            out.append(f'  "settings": {json.dumps(d["settings"], sort_keys=True)}')
        return "\n".join(out) + "\n}\n"


def dump_report(canonical: dict, run: dict | None = None, inputs: dict | None = None) -> str:
    """Serialize a report; ``canonical`` holds everything that must be reproducible."""
    doc = {"canonical": canonical}
    if inputs is not None:
        doc["inputs"] = inputs
    if run is not None:
        doc["run"] = run
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def canonical_section(report_text: str) -> str:
    return json.dumps(json.loads(report_text)["canonical"], indent=2, sort_keys=True, ensure_ascii=False)

"""
Map-spec strings: ``name[:key=val{,key=val}]``.

Keys are case-sensitive.  Complex values are written ``re`` or ``re,im``;
a bare number after a complex-valued key is its imaginary part.  Angles of
the unimodular parameters ``lambda``, ``mu`` and ``eta`` are in degrees,
``theta`` in radians.  Nested specs (the ``phi`` and ``omega`` of a shear)
are wrapped in parentheses::

    gkoebe:a=1.5,0.25
    ghk:lambda=180,a=2,mu=0,R=0.5
    shear:phi=(koebe),omega=(id),theta=0
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ParseError, RangeError

# kind of each key: "real", "complex", "angle" (degrees), "spec"
_SCHEMA: dict[str, tuple[dict[str, str], tuple[str, ...]]] = {
    "koebe": ({}, ()),
    "gkoebe": ({"a": "complex"}, ("a",)),
    "k0": ({}, ()),
    "lens": ({"R": "real"}, ("R",)),
    "hp-phi": ({}, ()),
    "id": ({}, ()),
    "hkoebe": ({}, ()),
    "halfplane": ({}, ()),
    "kar": ({"a": "real", "R": "real"}, ("a", "R")),
    "ghk": ({"lambda": "angle", "a": "complex", "mu": "angle", "R": "real"},
            ("lambda", "a", "mu", "R")),
    "shear": ({"phi": "spec", "omega": "spec", "theta": "real", "eta": "angle"},
              ("phi", "omega", "theta")),
}

ANALYTIC = frozenset({"koebe", "gkoebe", "k0", "lens", "hp-phi", "id"})


@dataclass(frozen=True)
class MapSpec:
    name: str
    params: tuple = ()
    raw: str = field(default="", compare=False)

    def get(self, key, default=None):
        return dict(self.params).get(key, default)

    @property
    def is_analytic(self) -> bool:
        return self.name in ANALYTIC

    def __str__(self) -> str:
        return format_map_spec(self)


def _num(x: float) -> str:
    return f"{x:.17g}"


def _format_value(kind: str, v) -> str:
    if kind == "spec":
        return f"({format_map_spec(v)})"
    if kind == "complex":
        v = complex(v)
        return _num(v.real) if v.imag == 0 else f"{_num(v.real)},{_num(v.imag)}"
    return _num(v)


def format_map_spec(spec: MapSpec) -> str:
    """Canonical string of ``spec``; ``parse_map_spec`` inverts it exactly."""
    if not spec.params:
        return spec.name
    kinds = _SCHEMA[spec.name][0]
    body = ",".join(f"{k}={_format_value(kinds[k], v)}" for k, v in spec.params)
    return f"{spec.name}:{body}"


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.i if pos is None else pos)

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else ""

    def take_until(self, stops: str) -> tuple[str, int]:
        start = self.i
        while self.i < len(self.s) and self.s[self.i] not in stops:
            self.i += 1
        return self.s[start : self.i], start

    def number(self, stops: str) -> float:
        tok, pos = self.take_until(stops)
        try:
            x = float(tok)
        except ValueError:
            self.error(f"expected a number, got {tok!r}", pos)
        if not math.isfinite(x):
            self.error(f"number must be finite, got {tok!r}", pos)
        return x

    def spec(self, stops: str = "") -> MapSpec:
        start = self.i
        name, pos = self.take_until(":" + stops)
        if name not in _SCHEMA:
            self.error(f"unknown map {name!r}", pos)
        kinds, required = _SCHEMA[name]
        values = {}
        if self.peek() == ":":
            self.i += 1
            while True:
                key, kpos = self.take_until("=," + stops)
                if key not in kinds:
                    self.error(f"unknown key {key!r} for map {name!r}", kpos)
                if key in values:
                    self.error(f"duplicate key {key!r}", kpos)
                if self.peek() != "=":
                    self.error(f"expected '=' after {key!r}")
                self.i += 1
                values[key] = self.value(kinds[key], stops)
                if self.peek() == ",":
                    self.i += 1
                    continue
                break
        if self.peek() and self.peek() not in stops:
            self.error(f"unexpected {self.peek()!r}")
        missing = [k for k in required if k not in values]
        if missing:
            self.error(f"map {name!r} is missing {', '.join(missing)}", start)
        order = list(kinds)
        params = tuple((k, values[k]) for k in order if k in values)
        spec = MapSpec(name, params, raw=self.s[start : self.i])
        _check_ranges(spec, start)
        return spec

    def value(self, kind: str, stops: str):
        if kind == "spec":
            if self.peek() != "(":
                self.error("nested map spec must be wrapped in parentheses")
            self.i += 1
            inner = self.spec(")")
            if self.peek() != ")":
                self.error("missing ')'")
            self.i += 1
            return inner
        x = self.number("," + stops)
        if kind != "complex":
            return x
        # a following bare number (no '=') is the imaginary part
        if self.peek() == ",":
            save = self.i
            self.i += 1
            tok, _ = self.take_until("=," + stops)
            if self.peek() != "=" and tok:
                try:
                    return complex(x, float(tok))
                except ValueError:
                    self.error(f"expected imaginary part, got {tok!r}", save + 1)
            self.i = save
        return complex(x, 0.0)


def _check_ranges(spec: MapSpec, pos: int):
    p = dict(spec.params)
    if "R" in p and not 0.0 <= p["R"] <= 1.0:
        raise RangeError(f"R must lie in [0, 1], got {p['R']!r} (map starting at position {pos})")
    if "theta" in p and not 0.0 <= p["theta"] < math.pi:
        raise RangeError(f"theta must lie in [0, pi), got {p['theta']!r} (map starting at position {pos})")
    if spec.name == "shear" and not p["omega"].is_analytic:
        raise RangeError("omega of a shear must be an analytic map")
    if spec.name == "shear" and not p["phi"].is_analytic:
        raise RangeError("phi of a shear must be an analytic map")


def parse_map_spec(text: str) -> MapSpec:
    text = text.strip()
    if not text:
        raise ParseError("empty map spec", 0)
    p = _Parser(text)
    spec = p.spec(")")  # a stray ')' is then reported as trailing input
    if p.i != len(text):
        p.error(f"trailing input {text[p.i:]!r}")
    return spec


def build(spec: MapSpec):
    """Construct the :class:`AnalyticMap` or :class:`HarmonicMap` named by ``spec``."""
    from . import maps, shear
    from .shear import _unit

    p = dict(spec.params)
    name = spec.name
    if name == "koebe":
        return maps.make_koebe()
    if name == "gkoebe":
        return maps.make_generalized_koebe(p["a"])
    if name == "k0":
        return maps.make_k0()
    if name == "lens":
        return maps.make_lens(p["R"])
    if name == "hp-phi":
        return maps.make_halfplane_phi()
    if name == "id":
        return maps.make_identity()
    if name == "hkoebe":
        return shear.harmonic_koebe()
    if name == "halfplane":
        return shear.halfplane()
    if name == "kar":
        return shear.make_KaR(p["a"], p["R"])
    if name == "ghk":
        return shear.make_generalized_harmonic_koebe(
            shear.GHKParams.from_degrees(p["lambda"], p["a"], p["mu"], p["R"]))
    if name == "shear":
        omega = build(p["omega"])
        if "eta" in p:
            omega = maps.linear_combination([omega], [_unit(p["eta"])], label="eta*omega")
        return shear.shear(build(p["phi"]), omega, p["theta"])
    raise ParseError(f"unknown map {name!r}", 0)  # pragma: no cover


CANONICAL_EXAMPLES = (
    "koebe", "gkoebe:a=1.5", "gkoebe:a=0.5,-0.25", "k0", "lens:R=0.5", "hp-phi", "id",
    "hkoebe", "halfplane", "kar:a=2,R=1", "kar:a=-1.25,R=0.75",
    "ghk:lambda=180,a=2.5,0.5,mu=90,R=0.25",
    "shear:phi=(koebe),omega=(id),theta=0",
    "shear:phi=(hp-phi),omega=(id),theta=1.5707963267948966,eta=180",
)

"""JSON interchange for inputs and reports.

Rationals travel as strings (``"-6/23"``, ``"4"``); JSON numbers are refused
anywhere a rational is expected, and unknown keys are refused everywhere.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from decimal import Context, Decimal
from fractions import Fraction
from typing import Any

from .degenerations import Degeneration
from .divisorial import GENERIC, DivisorialPolytope, PiecewiseAffine
from .engine import RxInput, RxReport
from .errors import InputSyntaxError, RationalParseError, SchemaError
from .linalg import Vec
from .polytope import AffineFunc, convex_hull

_RATIONAL = re.compile(r"-?[0-9]+(/[0-9]+)?")


def parse_rational(s: Any, path: str) -> Fraction:
    if not isinstance(s, str):
        raise SchemaError(path, f"expected a rational string, got {type(s).__name__}")
    if not _RATIONAL.fullmatch(s):
        raise RationalParseError(path, f"malformed rational {s!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise RationalParseError(path, f"zero denominator in {s!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def format_vec(v) -> list[str]:
    return [format_rational(x) for x in v]


def decimal_string(x: Fraction, digits: int = 20) -> str:
    ctx = Context(prec=digits)
    return str(ctx.divide(Decimal(x.numerator), Decimal(x.denominator)))


@dataclass
class Piece:
    grad: Vec
    const: Fraction


@dataclass
class MarkerSpec:
    marker: str
    pieces: list[Piece]


@dataclass
class DeltaSpec:
    label: str
    vertices: list[Vec]


@dataclass
class InputDocument:
    mode: str
    name: str
    dim: int
    box_vertices: list[Vec]
    psi: list[MarkerSpec] = field(default_factory=list)
    dh_barycenter: Vec | None = None
    degenerations: list[DeltaSpec] = field(default_factory=list)


# --- strict parsing helpers -------------------------------------------------


def _obj(x, path, required, optional=()):
    if not isinstance(x, dict):
        raise SchemaError(path, "expected an object")
    for k in x:
        if k not in required and k not in optional:
            raise SchemaError(f"{path}.{k}", "unknown field")
    for k in required:
        if k not in x:
            raise SchemaError(f"{path}.{k}", "missing field")
    return x


def _list(x, path):
    if not isinstance(x, list):
        raise SchemaError(path, "expected an array")
    return x


def _str(x, path):
    if not isinstance(x, str):
        raise SchemaError(path, "expected a string")
    return x


def _vector(x, path, dim):
    items = _list(x, path)
    if len(items) != dim:
        raise SchemaError(path, f"expected {dim} coordinates, got {len(items)}")
    return tuple(parse_rational(c, f"{path}[{i}]") for i, c in enumerate(items))


def _points(x, path, dim):
    return [_vector(p, f"{path}[{i}]", dim) for i, p in enumerate(_list(x, path))]


def parse_input(text: bytes | str) -> InputDocument:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise InputSyntaxError(f"input is not UTF-8: {e}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputSyntaxError(f"invalid JSON: {e}") from None
    if not isinstance(raw, dict):
        raise SchemaError("$", "expected an object")
    mode = raw.get("mode")
    if mode == "divisorial":
        _obj(raw, "$", ("mode", "name", "dim", "box"), ("psi",))
    elif mode == "degenerations":
        _obj(raw, "$", ("mode", "name", "dim", "box"), ("dh_barycenter", "degenerations"))
    else:
        raise SchemaError("$.mode", 'expected "divisorial" or "degenerations"')
    name = _str(raw["name"], "$.name")
    dim = raw["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError("$.dim", "expected a positive integer")
    box = _obj(raw["box"], "$.box", ("vertices",))
    doc = InputDocument(mode, name, dim, _points(box["vertices"], "$.box.vertices", dim))

    if mode == "divisorial":
        seen = set()
        for i, m in enumerate(_list(raw.get("psi", []), "$.psi")):
            p = f"$.psi[{i}]"
            _obj(m, p, ("marker", "pieces"))
            marker = _str(m["marker"], f"{p}.marker")
            if marker == GENERIC:
                raise SchemaError(f"{p}.marker", f"{GENERIC!r} is reserved")
            if marker in seen:
                raise SchemaError(f"{p}.marker", f"duplicate marker {marker!r}")
            seen.add(marker)
            pieces = []
            plist = _list(m["pieces"], f"{p}.pieces")
            if not plist:
                raise SchemaError(f"{p}.pieces", "need at least one piece")
            for j, pc in enumerate(plist):
                pp = f"{p}.pieces[{j}]"
                _obj(pc, pp, ("grad", "const"))
                pieces.append(
                    Piece(_vector(pc["grad"], f"{pp}.grad", dim), parse_rational(pc["const"], f"{pp}.const"))
                )
            doc.psi.append(MarkerSpec(marker, pieces))
    else:
        if "dh_barycenter" in raw:
            doc.dh_barycenter = _vector(raw["dh_barycenter"], "$.dh_barycenter", dim)
        seen = set()
        for i, g in enumerate(_list(raw.get("degenerations", []), "$.degenerations")):
            p = f"$.degenerations[{i}]"
            _obj(g, p, ("label", "vertices"))
            label = _str(g["label"], f"{p}.label")
            if label in seen:
                raise SchemaError(f"{p}.label", f"duplicate label {label!r}")
            seen.add(label)
            doc.degenerations.append(DeltaSpec(label, _points(g["vertices"], f"{p}.vertices", dim + 1)))
        if doc.dh_barycenter is None and not doc.degenerations:
            raise SchemaError("$", "need dh_barycenter or at least one degeneration")
    return doc


def input_to_json(doc: InputDocument) -> dict:
    out: dict[str, Any] = {
        "mode": doc.mode,
        "name": doc.name,
        "dim": doc.dim,
        "box": {"vertices": [format_vec(v) for v in doc.box_vertices]},
    }
    if doc.mode == "divisorial":
        out["psi"] = [
            {
                "marker": m.marker,
                "pieces": [{"grad": format_vec(p.grad), "const": format_rational(p.const)} for p in m.pieces],
            }
            for m in doc.psi
        ]
    else:
        if doc.dh_barycenter is not None:
            out["dh_barycenter"] = format_vec(doc.dh_barycenter)
        out["degenerations"] = [
            {"label": g.label, "vertices": [format_vec(v) for v in g.vertices]} for g in doc.degenerations
        ]
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def serialize_input(doc: InputDocument) -> str:
    return dumps(input_to_json(doc))


def to_rx_input(doc: InputDocument) -> RxInput:
    box = convex_hull(doc.box_vertices)
    if doc.mode == "divisorial":
        psi = {
            m.marker: PiecewiseAffine(tuple(AffineFunc(p.grad, p.const) for p in m.pieces))
            for m in doc.psi
        }
        return RxInput.from_divisorial(DivisorialPolytope(box, psi), doc.name)
    deltas = tuple((g.label, tuple(g.vertices)) for g in doc.degenerations)
    return RxInput(box, None, doc.dh_barycenter, deltas, doc.name)


def from_rx_input(inp: RxInput) -> InputDocument:
    verts = list(inp.box.vertices)
    if inp.divisorial is not None:
        dp = inp.divisorial
        psi = [
            MarkerSpec(y, [Piece(g.gradient, g.constant) for g in dp.psi[y].pieces]) for y in dp.markers
        ]
        return InputDocument("divisorial", inp.name, inp.box.dim, verts, psi)
    return InputDocument(
        "degenerations",
        inp.name,
        inp.box.dim,
        verts,
        dh_barycenter=inp.dh_barycenter,
        degenerations=[DeltaSpec(lab, list(vs)) for lab, vs in inp.deltas],
    )


# --- reports ----------------------------------------------------------------


@dataclass
class DegenerationRecord:
    label: str
    bc: Vec
    t_star: Fraction | None
    q: Vec | None
    ratio: Fraction
    sigma_rays: list[tuple[int, ...]]
    some_ray_in_H: bool
    all_rays_in_H: bool
    contributes: bool

    @classmethod
    def from_degeneration(cls, g: Degeneration) -> "DegenerationRecord":
        return cls(
            g.label, g.bc, g.t_star, g.q, g.ratio, list(g.sigma.rays),
            g.some_ray_in_H, g.all_rays_in_H, g.contributes,
        )


@dataclass
class ReportDocument:
    name: str
    R: Fraction
    R_source: str
    base_ratio: Fraction
    bc_nu: Vec
    degenerations: list[DegenerationRecord]
    validation: list[str]

    @property
    def R_decimal(self) -> str:
        return decimal_string(self.R)

    @classmethod
    def from_report(cls, name: str, rep: RxReport) -> "ReportDocument":
        return cls(
            name, rep.R, rep.R_source, rep.base_ratio, rep.bc_nu,
            [DegenerationRecord.from_degeneration(g) for g in rep.degenerations],
            list(rep.validation),
        )


def report_to_json(doc: ReportDocument) -> dict:
    return {
        "name": doc.name,
        "R": format_rational(doc.R),
        "R_decimal": doc.R_decimal,
        "R_source": doc.R_source,
        "base_ratio": format_rational(doc.base_ratio),
        "bc_nu": format_vec(doc.bc_nu),
        "degenerations": [
            {
                "label": g.label,
                "bc": format_vec(g.bc),
                "t_star": None if g.t_star is None else format_rational(g.t_star),
                "q": None if g.q is None else format_vec(g.q),
                "ratio": format_rational(g.ratio),
                "sigma_rays": [list(r) for r in g.sigma_rays],
                "some_ray_in_H": g.some_ray_in_H,
                "all_rays_in_H": g.all_rays_in_H,
                "contributes": g.contributes,
            }
            for g in doc.degenerations
        ],
        "validation": list(doc.validation),
    }


def serialize_report(doc: ReportDocument) -> str:
    return dumps(report_to_json(doc))


def _opt(x, f, path):
    return None if x is None else f(x, path)


def parse_report(text: bytes | str) -> ReportDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputSyntaxError(f"invalid JSON: {e}") from None
    keys = ("name", "R", "R_decimal", "R_source", "base_ratio", "bc_nu", "degenerations", "validation")
    _obj(raw, "$", keys)

    def vec(x, path):
        return tuple(parse_rational(c, f"{path}[{i}]") for i, c in enumerate(_list(x, path)))

    degs = []
    dkeys = ("label", "bc", "t_star", "q", "ratio", "sigma_rays", "some_ray_in_H", "all_rays_in_H", "contributes")
    for i, g in enumerate(_list(raw["degenerations"], "$.degenerations")):
        p = f"$.degenerations[{i}]"
        _obj(g, p, dkeys)
        degs.append(
            DegenerationRecord(
                _str(g["label"], f"{p}.label"),
                vec(g["bc"], f"{p}.bc"),
                _opt(g["t_star"], parse_rational, f"{p}.t_star"),
                _opt(g["q"], vec, f"{p}.q"),
                parse_rational(g["ratio"], f"{p}.ratio"),
                [tuple(r) for r in _list(g["sigma_rays"], f"{p}.sigma_rays")],
                bool(g["some_ray_in_H"]),
                bool(g["all_rays_in_H"]),
                bool(g["contributes"]),
            )
        )
    return ReportDocument(
        _str(raw["name"], "$.name"),
        parse_rational(raw["R"], "$.R"),
        _str(raw["R_source"], "$.R_source"),
        parse_rational(raw["base_ratio"], "$.base_ratio"),
        vec(raw["bc_nu"], "$.bc_nu"),
        degs,
        [_str(s, "$.validation") for s in _list(raw["validation"], "$.validation")],
    )

"""Exact JSON encodings for every core object.

All numbers are strings ("a/b" rationals) or exponent/coefficient pair
lists, never floats, so files round-trip exactly.  Every document carries a
format_version and a type tag; parse functions check structure (shapes,
increasing exponents) but leave semantic validation (mass sums, axioms) to
the callers that need it.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .field import EpsPolynomial, NonstdNumber
from .lps import LPS, EquivCertificate
from .npsbridge import Decomposition
from .popper import PopperSpace
from .spaces import NonstdMeasure, RandomVariable, SpaceAlgebra, StdMeasure

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed document."""


def encode_rational(q: Fraction) -> str:
    return str(q)


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def encode_nonstd(x: NonstdNumber) -> dict:
    return {
        "num": [[e, encode_rational(c)] for e, c in x.num.terms],
        "den": [[e, encode_rational(c)] for e, c in x.den.terms],
    }


def _parse_poly(pairs, where: str) -> EpsPolynomial:
    if not isinstance(pairs, list):
        raise ParseError(f"{where}: expected a list of [exponent, coefficient] pairs")
    exps = []
    terms = []
    for item in pairs:
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError(f"{where}: bad term {item!r}")
        e, c = item
        if not isinstance(e, int) or e < 0:
            raise ParseError(f"{where}: bad exponent {e!r}")
        exps.append(e)
        terms.append((e, parse_rational(c)))
    if exps != sorted(set(exps)):
        raise ParseError(f"{where}: exponents must be strictly increasing")
    return EpsPolynomial.from_pairs(terms)


def parse_nonstd(doc) -> NonstdNumber:
    if not isinstance(doc, dict) or set(doc) != {"num", "den"}:
        raise ParseError(f"bad field element {doc!r}")
    num = _parse_poly(doc["num"], "num")
    den = _parse_poly(doc["den"], "den")
    if den.is_zero:
        raise ParseError("zero denominator")
    return NonstdNumber._make(num, den)


def encode_space(algebra: SpaceAlgebra) -> dict:
    return {
        "worlds": [_encode_world(w) for w in algebra.worlds],
        "atoms": [[_encode_world(w) for w in block] for block in algebra.atoms],
    }


def _encode_world(w):
    return list(w) if isinstance(w, tuple) else w


def _parse_world(w):
    return tuple(w) if isinstance(w, list) else w


def parse_space(doc) -> SpaceAlgebra:
    if not isinstance(doc, dict) or "worlds" not in doc or "atoms" not in doc:
        raise ParseError("space needs worlds and atoms")
    worlds = tuple(_parse_world(w) for w in doc["worlds"])
    atoms = tuple(tuple(_parse_world(w) for w in block) for block in doc["atoms"])
    return SpaceAlgebra(worlds, atoms)


def encode_event(ev) -> list:
    return sorted(ev)


def parse_event(doc, algebra: SpaceAlgebra):
    if not isinstance(doc, list):
        raise ParseError(f"event must be a sorted index list, got {doc!r}")
    try:
        return algebra.event(int(i) for i in doc)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _document(type_name: str, body: dict) -> dict:
    return {"format_version": FORMAT_VERSION, "type": type_name, **body}


def encode_std_measure(m: StdMeasure) -> dict:
    return _document(
        "std_measure",
        {
            "space": encode_space(m.algebra),
            "mass": [encode_rational(x) for x in m.mass],
        },
    )


def encode_nonstd_measure(m: NonstdMeasure) -> dict:
    return _document(
        "nonstd_measure",
        {
            "space": encode_space(m.algebra),
            "mass": [encode_nonstd(x) for x in m.mass],
        },
    )


def encode_lps(system: LPS) -> dict:
    return _document(
        "lps",
        {
            "space": encode_space(system.algebra),
            "measures": [[encode_rational(x) for x in m.mass] for m in system.measures],
        },
    )


def encode_popper(space: PopperSpace) -> dict:
    return _document(
        "popper_space",
        {
            "space": encode_space(space.algebra),
            "conditioning_events": [encode_event(ev) for ev in space.conditioning_events],
            "table": [
                [encode_rational(x) for x in space.table[ev].mass]
                for ev in space.conditioning_events
            ],
        },
    )


def encode_random_variable(rv: RandomVariable) -> dict:
    return _document(
        "random_variable",
        {
            "space": encode_space(rv.algebra),
            "values": [encode_rational(x) for x in rv.values],
        },
    )


def encode_decomposition(dec: Decomposition) -> dict:
    return _document(
        "decomposition",
        {
            "lps": encode_lps(dec.lps),
            "coefficients": [encode_nonstd(c) for c in dec.coefficients],
        },
    )


def encode_certificate(cert: EquivCertificate) -> dict:
    body = {"verdict": cert.verdict}
    if cert.equivalent:
        body["forward_matrix"] = [
            [encode_rational(x) for x in row] for row in cert.forward_matrix
        ]
        body["backward_matrix"] = [
            [encode_rational(x) for x in row] for row in cert.backward_matrix
        ]
    else:
        x, y = cert.witness
        body["witness"] = {
            "x": [encode_rational(v) for v in x.values],
            "y": [encode_rational(v) for v in y.values],
        }
    return _document("equiv_certificate", body)


def _mass_row(doc, algebra, where):
    if not isinstance(doc, list) or len(doc) != algebra.n_atoms:
        raise ParseError(f"{where}: need {algebra.n_atoms} entries")
    return doc


def parse_std_measure(doc) -> StdMeasure:
    algebra = parse_space(doc["space"])
    row = _mass_row(doc["mass"], algebra, "mass")
    return StdMeasure(algebra, tuple(parse_rational(x) for x in row))


def parse_nonstd_measure(doc) -> NonstdMeasure:
    algebra = parse_space(doc["space"])
    row = _mass_row(doc["mass"], algebra, "mass")
    return NonstdMeasure(algebra, tuple(parse_nonstd(x) for x in row))


def parse_lps(doc) -> LPS:
    algebra = parse_space(doc["space"])
    measures = doc["measures"]
    if not isinstance(measures, list) or not measures:
        raise ParseError("lps needs a nonempty measure list")
    rows = []
    for i, row in enumerate(measures):
        row = _mass_row(row, algebra, f"measures[{i}]")
        rows.append(StdMeasure(algebra, tuple(parse_rational(x) for x in row)))
    return LPS(algebra, tuple(rows))


def parse_popper(doc) -> PopperSpace:
    algebra = parse_space(doc["space"])
    events = doc["conditioning_events"]
    rows = doc["table"]
    if len(events) != len(rows):
        raise ParseError("conditioning_events and table lengths differ")
    table = {}
    for ev_doc, row in zip(events, rows):
        ev = parse_event(ev_doc, algebra)
        if ev in table:
            raise ParseError(f"duplicate conditioning event {ev_doc}")
        row = _mass_row(row, algebra, f"table[{ev_doc}]")
        table[ev] = StdMeasure(algebra, tuple(parse_rational(x) for x in row))
    return PopperSpace(algebra, tuple(table), table)


def parse_random_variable(doc) -> RandomVariable:
    algebra = parse_space(doc["space"])
    row = _mass_row(doc["values"], algebra, "values")
    return RandomVariable(algebra, tuple(parse_rational(x) for x in row))


def parse_decomposition(doc) -> Decomposition:
    system = parse_lps(doc["lps"])
    coeffs = tuple(parse_nonstd(c) for c in doc["coefficients"])
    return Decomposition(system, coeffs)


_PARSERS = {
    "std_measure": parse_std_measure,
    "nonstd_measure": parse_nonstd_measure,
    "lps": parse_lps,
    "popper_space": parse_popper,
    "random_variable": parse_random_variable,
    "decomposition": parse_decomposition,
}

_ENCODERS = {
    StdMeasure: encode_std_measure,
    NonstdMeasure: encode_nonstd_measure,
    LPS: encode_lps,
    PopperSpace: encode_popper,
    RandomVariable: encode_random_variable,
    Decomposition: encode_decomposition,
    EquivCertificate: encode_certificate,
}


def encode(obj) -> dict:
    try:
        return _ENCODERS[type(obj)](obj)
    except KeyError:
        raise TypeError(f"no encoding for {type(obj).__name__}") from None


def parse_document(doc):
    """Dispatch on the type tag; returns (type_name, object)."""
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}")
    type_name = doc.get("type")
    parser = _PARSERS.get(type_name)
    if parser is None:
        raise ParseError(f"unknown document type {type_name!r}")
    try:
        return type_name, parser(doc)
    except KeyError as exc:
        raise ParseError(f"missing field {exc}") from None


def dumps(obj) -> str:
    doc = obj if isinstance(obj, dict) else encode(obj)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_path(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return parse_document(doc)

"""Round-trip fidelity and strictness of the JSON encodings."""

from fractions import Fraction

import pytest

from extprob import jsonio
from extprob.field import EPS, ONE
from extprob.lps import LPS, equivalence
from extprob.npsbridge import nps_to_lps
from extprob.popper import slps_to_popper
from extprob.spaces import NonstdMeasure, RandomVariable, SpaceAlgebra, StdMeasure

F = Fraction

AB = SpaceAlgebra.discrete(["a", "b"])
GRID = SpaceAlgebra.discrete([(1, 1), (1, 2), (2, 1), (2, 2)])


def roundtrip(obj):
    doc = jsonio.encode(obj)
    type_name, back = jsonio.parse_document(doc)
    return back


class TestRoundTrips:
    def test_nonstd_number(self):
        x = (F(1, 2) + EPS) / (ONE - 3 * EPS)
        assert jsonio.parse_nonstd(jsonio.encode_nonstd(x)) == x

    def test_std_measure(self):
        m = StdMeasure.from_values(AB, [F(1, 3), F(2, 3)])
        assert roundtrip(m) == m

    def test_nonstd_measure(self):
        m = NonstdMeasure.from_values(AB, [ONE - EPS, EPS])
        assert roundtrip(m) == m

    def test_lps(self):
        system = LPS.from_rows(AB, [(F(1, 2), F(1, 2)), (1, 0)])
        assert roundtrip(system) == system

    def test_popper_space(self):
        space = slps_to_popper(LPS.from_rows(AB, [(1, 0), (0, 1)]))
        assert roundtrip(space) == space

    def test_random_variable_with_tuple_worlds(self):
        rv = RandomVariable.from_values(GRID, [1, 2, 3, 4])
        assert roundtrip(rv) == rv

    def test_decomposition(self):
        dec = nps_to_lps(NonstdMeasure.from_values(AB, [F(1, 2) + EPS, F(1, 2) - EPS]))
        back = roundtrip(dec)
        assert back.lps == dec.lps and back.coefficients == dec.coefficients

    def test_certificate_encoding_carries_witness(self):
        cert = equivalence(
            LPS.from_rows(AB, [(F(1, 2), F(1, 2)), (1, 0)]),
            LPS.from_rows(AB, [(F(1, 2), F(1, 2))]),
        )
        doc = jsonio.encode(cert)
        assert doc["verdict"] == "inequivalent"
        assert doc["witness"] == {"x": ["1", "0"], "y": ["0", "1"]}

    def test_dumps_deterministic(self):
        m = StdMeasure.from_values(AB, [F(1, 3), F(2, 3)])
        assert jsonio.dumps(m) == jsonio.dumps(m)


class TestStrictness:
    def test_rejects_unknown_type(self):
        with pytest.raises(jsonio.ParseError):
            jsonio.parse_document({"format_version": 1, "type": "mystery"})

    def test_rejects_bad_version(self):
        with pytest.raises(jsonio.ParseError):
            jsonio.parse_document({"format_version": 2, "type": "lps"})

    def test_rejects_unsorted_exponents(self):
        with pytest.raises(jsonio.ParseError):
            jsonio.parse_nonstd({"num": [[2, "1"], [1, "1"]], "den": [[0, "1"]]})

    def test_rejects_zero_denominator(self):
        with pytest.raises(jsonio.ParseError):
            jsonio.parse_nonstd({"num": [[0, "1"]], "den": []})

    def test_rejects_bad_rational(self):
        with pytest.raises(jsonio.ParseError):
            jsonio.parse_rational("0.5x")

    def test_rejects_wrong_mass_count(self):
        doc = jsonio.encode(StdMeasure.from_values(AB, [F(1, 2), F(1, 2)]))
        doc["mass"] = ["1"]
        with pytest.raises(jsonio.ParseError):
            jsonio.parse_document(doc)

    def test_rejects_event_out_of_range(self):
        with pytest.raises(jsonio.ParseError):
            jsonio.parse_event([7], AB)


def test_rejects_duplicate_conditioning_events():
    space = slps_to_popper(LPS.from_rows(AB, [(1, 0), (0, 1)]))
    doc = jsonio.encode(space)
    doc["conditioning_events"].append(doc["conditioning_events"][0])
    doc["table"].append(doc["table"][0])
    with pytest.raises(jsonio.ParseError):
        jsonio.parse_document(doc)

import copy
import json
from pathlib import Path

import pytest

from fibertype import corpus, io
from fibertype.errors import SchemaError
from fibertype.invariants import fml_fib_lower_bound, ml_fib
from fibertype.divisor import is_proper
from fibertype.lnd import list_equivalence_classes

from samplers import all_divisors

DATA = Path(__file__).resolve().parent.parent / "data"
S4_JSON = json.loads((DATA / "s4.json").read_text())


def test_numbers_are_ints_or_fraction_strings():
    assert io.fmt_vec([2, "1/2", "4/2", -3]) == [2, "1/2", 2, -3]
    assert io.parse_num("-3/6", "$") == io.parse_num("-1/2", "$")
    with pytest.raises(SchemaError):
        io.parse_num(0.5, "$")
    with pytest.raises(SchemaError):
        io.parse_num(True, "$")


def test_shipped_files_parse_to_named_examples():
    assert io.parse_divisor(S4_JSON) == corpus.trivial_ml(2)
    assert io.parse_divisor(json.loads((DATA / "example1.json").read_text())) == corpus.graded_plane()
    assert io.parse_divisor(json.loads((DATA / "toric_plane.json").read_text())) == corpus.toric_plane()


def test_divisor_round_trip_on_corpus():
    for dd in all_divisors():
        obj = io.divisor_to_json(dd)
        text = io.dumps(obj)
        back = io.parse_divisor(json.loads(text))
        assert back == dd
        assert io.dumps(io.divisor_to_json(back)) == text


def test_report_round_trip_is_bit_exact():
    for dd in all_divisors()[:20]:
        reports = [io.proper_to_json(is_proper(dd)), io.ml_to_json(ml_fib(dd)),
                   io.fml_to_json(fml_fib_lower_bound(dd)),
                   io.classes_to_json(list_equivalence_classes(dd, 2))]
        for r in reports:
            text = io.dumps(io.envelope("x", r))
            assert io.dumps(json.loads(text)) == text


def _bad(mutate):
    obj = copy.deepcopy(S4_JSON)
    mutate(obj)
    with pytest.raises(SchemaError) as info:
        io.parse_divisor(obj)
    return info.value.location


def test_schema_error_locations():
    assert _bad(lambda o: o.pop("rank")) == "$.rank"
    assert _bad(lambda o: o.update(schema=2)) == "$.schema"
    assert _bad(lambda o: o["tail"]["rays"].__setitem__(0, [0, "x"])) == "$.tail.rays[0][1]"
    assert _bad(lambda o: o["tail"]["rays"].__setitem__(0, [0, 1, 2])) == "$.tail.rays[0]"
    assert _bad(lambda o: o["tail"]["rays"].append([-1, 0])) == "$.tail"
    assert _bad(lambda o: o["base"].update(kind="surface")) == "$.base"
    assert _bad(lambda o: o["coeffs"][0].update(at="sqrt2")) == "$.coeffs[0].at"
    assert _bad(lambda o: o["coeffs"][0]["vertices"][0].__setitem__(1, 0.5)) == "$.coeffs[0].vertices[0][1]"
    assert _bad(lambda o: o["coeffs"][0].update(vertices=[])) == "$.coeffs[0].vertices"
    assert _bad(lambda o: o["coeffs"].append({"at": "inf", "vertices": [[0, 0]]})) == "$.coeffs[1].at"


def test_load_json_reports_line_and_column():
    with pytest.raises(SchemaError) as info:
        io.load_json('{\n  "rank": ,\n}', "f.json")
    assert info.value.location == "f.json:2:11"


def test_derivation_round_trip():
    dd = corpus.trivial_ml(2)
    obj = json.loads((DATA / "d12.json").read_text())
    d = io.parse_derivation(obj, dd)
    assert io.derivation_to_json(d) == {"ray": [1, 0], "e": [-1, 1], "phi": "1"}
    with pytest.raises(SchemaError) as info:
        io.parse_derivation({"ray": [1, 0], "e": [-1, 0], "phi": "1"}, dd)
    assert "PhiNotInPhiE" in info.value.message

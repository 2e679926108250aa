import json

import pytest

import teamcheck as tc


def test_check_single_world():
    model = tc.KripkeModel.load(
        json.dumps({"worlds": ["w"], "relation": [], "valuation": {"w": ["p"]}})
    )
    value, stats = tc.check(model, "{w}", "p")
    assert value is True
    assert stats["path"] in {"box_fast", "n_normal", "generic", "reference"}
    value, _ = tc.check(model, "{w}", "q")
    assert value is False


def test_engines_agree():
    model = tc.make_random_model(7, 4, 0.4, ["p", "q"])
    team = "{" + ",".join(model.worlds) + "}"
    for formula in ["dia dep(p, q)", "box (p | ~q)", "!(dia q) ^ p", "boxdot dep(q)"]:
        auto_value, _ = tc.check(model, team, formula, engine="auto")
        ref_value, _ = tc.check(model, team, formula, engine="reference")
        assert auto_value == ref_value


def test_classify():
    info = tc.classify("dia dep(p, q)")
    assert info["clone"] == "ID"
    assert info["complexity"] == "NP-complete"
    assert tc.classify_functions(["and", "or"]) == "M"


def test_generate_and_verify():
    out = tc.generate("sat", "p cnf 2 1\n1 2 0\n", "sat")
    assert out["expected"] is True
    model = tc.KripkeModel.load(out["model_json"])
    value, _ = tc.check(model, out["team"], out["formula"])
    assert value is True

    report = json.loads(tc.verify("reach", count=25, seed=3))
    assert report["all_agree"] is True
    assert report["total"] == 25


def test_parse_error():
    with pytest.raises(tc.ParseError):
        tc.Formula.parse("dep(")


def test_closure_size():
    # unary closure over {not}: both constants, identity, negation at arity 1
    assert tc.closure_size(["not"], max_arity=1) == 2 + 4

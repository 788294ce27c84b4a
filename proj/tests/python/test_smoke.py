import os
from fractions import Fraction
from pathlib import Path

import pytest

import vchain

DATA = Path(os.environ.get("VCHAIN_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def sample():
    return vchain.parse((DATA / "order-to-cash.vchain").read_text(encoding="utf-8"))


def test_parse_and_validate(sample):
    assert sample.processes[0].name == "Order-to-Cash"
    assert [s.name for s in sample.processes[0].steps][2] == "Negotiation"
    assert sample.processes[0].steps[2].scores["compliance"] == 5
    assert vchain.validate(sample) == []


def test_parse_error_has_position():
    with pytest.raises(vchain.ParseError) as err:
        vchain.parse('valuechain "X" {')
    assert "1:" in str(err.value)
    assert isinstance(err.value, ValueError)


def test_serialize_round_trip(sample):
    text = vchain.serialize(sample)
    assert vchain.serialize(vchain.parse(text)) == text


def test_affinity_is_exact(sample):
    result = vchain.cloud_affinity(sample, "Order-to-Cash")
    assert result["value_component"] == Fraction(3, 8)
    assert result["risk_component"] == Fraction(41, 96)
    assert result["affinity"] == Fraction(-5, 96)


def test_profile(sample):
    security = vchain.process_profile(sample, "Order-to-Cash")["security"]
    assert security["max"] == Fraction(7, 2)
    assert security["max_step"] == "Negotiation"


def test_delta_and_fraud(sample):
    (report,) = vchain.compare_all(sample)
    assert report["verdict"] == "HOLD"
    assert [row[3] for row in report["rows"]] == [
        "SIGNIFICANTLY HIGHER",
        "NO ADDITIONAL RISK",
        "NO ADDITIONAL RISK",
        "LOWER",
        "NO ADDITIONAL RISK",
    ]
    assert vchain.categorize_delta(1, 2) == "HIGHER"
    assert vchain.fraud_risk(3, 4) == (12, "HIGH")
    with pytest.raises(ValueError):
        vchain.fraud_risk(0, 4)


def test_gate(sample):
    entries = dict(vchain.gate(sample))
    assert len(entries) == 6
    assert entries["Order-to-Cash.Payment"] == ["provider-dpa"]
    assert dict(vchain.gate(sample, 'tree "t" { pass }'))["Order-to-Cash.Payment"] == []


def test_import_and_exports(sample):
    process = vchain.import_matrix_csv((DATA / "order-to-cash.csv").read_text(), "Order-to-Cash")
    assert process.steps[4].scores["asset"] == 4
    files = vchain.export_csv(sample)
    assert "interfaces,1,5,5,3,2,4" in files["scores.csv"].splitlines()
    assert '"affinity": -0.052083' in vchain.export_structured(sample)


def test_rank_and_cli():
    model = vchain.parse((DATA / "public-sector.vchain").read_text(encoding="utf-8"))
    ranking = vchain.rank_processes(model)
    affinities = [r["affinity"] for r in ranking]
    assert affinities == sorted(affinities, reverse=True)
    code, out, err = vchain.run_cli(["rank", str(DATA / "public-sector.vchain")])
    assert code == 0 and err == ""
    assert [line.split("\t")[1] for line in out.splitlines()] == [r["process"] for r in ranking]
    assert vchain.run_cli(["score", str(DATA / "order-to-cash.vchain"), "--process", "Nope"])[0] == 3

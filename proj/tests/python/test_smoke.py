import os
from pathlib import Path

import pytest

import tokenaudit

ROOT = Path(os.environ.get("TOKENAUDIT_SOURCE_DIR", Path(__file__).resolve().parents[2]))
CORPUS = ROOT / "tests" / "corpus"


def test_registry_has_82_checks():
    rows = tokenaudit.checks()
    assert len(rows) == 82
    assert [r["id"] for r in rows] == list(range(1, 83))


def test_secure_fixture_is_clean():
    report, code = tokenaudit.analyze(CORPUS / "secure_token.sol")
    assert code == 0
    assert report["matrix"]["summary"]["success_rate_percent"] == 100


def test_reentrancy_fixture_is_flagged():
    report, code = tokenaudit.analyze([CORPUS / "08-reentrancy-vuln.sol"], enable=[8])
    assert code == 1
    assert {f["check"] for f in report["findings"]} == {8}


def test_analyze_source_from_memory():
    src = "pragma solidity ^0.4.0;\ncontract C { function f() { selfdestruct(msg.sender); } }\n"
    report, code = tokenaudit.analyze_source(src)
    checks = {f["check"] for f in report["findings"]}
    assert 7 in checks
    assert code == 1


def test_bad_input_raises():
    with pytest.raises(ValueError):
        tokenaudit.analyze(CORPUS / "does-not-exist.sol")
    with pytest.raises(ValueError):
        tokenaudit.analyze(CORPUS / "secure_token.sol", enable=[99])
    with pytest.raises(ValueError):
        tokenaudit.simulate("no-such-scenario")
    with pytest.raises(ValueError):
        tokenaudit.mwa_worst_case(1, 2, variant="sideways")


def test_mwa_bounds():
    assert tokenaudit.mwa_worst_case(100, 50, "insecure")["worst_case"] == "150"
    assert tokenaudit.mwa_worst_case(100, 50, "secure")["worst_case"] == "100"
    assert tokenaudit.mwa_worst_case(50, 100, "secure")["worst_case"] == "100"


@pytest.mark.parametrize("name", tokenaudit.scenarios())
def test_scenarios_split_by_variant(name):
    assert tokenaudit.simulate(name, "secure")["property_holds"] is True
    assert tokenaudit.simulate(name, "insecure")["property_holds"] is False

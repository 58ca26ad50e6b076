import json

import pytest
from pydantic import ValidationError

from src.controllers.cli_controller import CommandError, RunConfig
from src.main import main


def _run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out.strip()


def test_cap_with_named_fixture(capsys):
    status, out = _run(capsys, "cap", "--family", "E7", "--word", "4,6,5", "--fixture", "e7-p5", "--d", "1")
    assert status == 0
    assert out == "-1/2"


def test_text_and_json_report_the_same_value(capsys):
    argv = ("cap", "--family", "E6", "--word", "3,6", "--poly",
            "t1*t2*t3 + t1*t2*t4 + t1*t2*t5 + t1*t2*t6 + t1*t3*t4 + t1*t3*t5 + t1*t3*t6 + t1*t4*t5 + t1*t4*t6"
            " + t1*t5*t6 + t2*t3*t4 + t2*t3*t5 + t2*t3*t6 + t2*t4*t5 + t2*t4*t6 + t2*t5*t6 + t3*t4*t5"
            " + t3*t4*t6 + t3*t5*t6 + t4*t5*t6")
    status, text = _run(capsys, *argv)
    assert status == 0
    status, raw = _run(capsys, "--output", "json", *argv)
    assert status == 0
    data = json.loads(raw)
    assert data["value_text"] == text == "2/3"
    assert data["value"] == {"num": 2, "den": 3}


def test_certify_integral_case(capsys):
    status, raw = _run(capsys, "--output", "json", "certify", "--family", "A", "--rank", "2", "--r", "1", "--d", "3")
    assert status == 0
    assert json.loads(raw)["integral"] is True


def test_certificate_json_replays(capsys, tmp_path):
    status, raw = _run(capsys, "certify", "--family", "D", "--rank", "5", "--r", "2", "--generator", "z1",
                       "--output", "json")
    assert status == 0
    data = json.loads(raw)
    assert data["integral"] is False
    assert data["subdiagram"] == "Gamma"
    path = tmp_path / "certificate.json"
    path.write_text(raw, encoding="utf-8")
    status, replayed = _run(capsys, "--output", "json", "certify", "--replay", str(path))
    assert status == 0
    assert json.loads(replayed)["value"] == data["value"]


def test_degree_mismatch_exits_with_one(capsys):
    status, out = _run(capsys, "cap", "--family", "E7", "--word", "2", "--poly", "t1")
    assert status == 1
    assert out == ""


@pytest.mark.parametrize("argv", [
    ("cap", "--family", "E7", "--poly", "t1"),
    ("cap", "--family", "F4", "--word", "e", "--poly", "t1"),
    ("cap", "--family", "E7", "--word", "9", "--poly", "t1"),
    ("cap", "--family", "E7", "--word", "e", "--poly", "2t1"),
    ("frobnicate",),
])
def test_usage_errors_exit_with_two(capsys, argv):
    status, _ = _run(capsys, *argv)
    assert status == 2


def test_reproduce_scope(capsys):
    status, out = _run(capsys, "reproduce", "E6")
    assert status == 0
    assert "8/8 PASS" in out


def test_rootinfo_json(capsys):
    status, raw = _run(capsys, "--output", "json", "rootinfo", "--family", "D", "--rank", "4")
    assert status == 0
    data = json.loads(raw)
    assert data["torsion"] == [2, 2]
    assert data["weight_table"]["values"]["z4"] == "1/2"


def test_invariants_dimension(capsys):
    status, out = _run(capsys, "invariants", "--family", "E7", "--r", "5", "--degree", "4", "--fixture", "e7-p5")
    assert status == 0
    assert "dimension 8" in out
    assert "oui" in out


def test_run_config_validates_selection():
    with pytest.raises(ValidationError):
        RunConfig(subcommand="cap", word="1", poly="e1")
    with pytest.raises(ValidationError):
        RunConfig(subcommand="invariants", family="E7", r=5)
    with pytest.raises(ValidationError):
        RunConfig(subcommand="localize", family="B", rank=3, r=1, coweight=["1", "2", "3"])
    assert RunConfig(subcommand="reproduce").scope == "all"


@pytest.mark.asyncio
async def test_controller_maps_errors_to_statuses(cli_controller):
    with pytest.raises(CommandError) as usage:
        await cli_controller.run(RunConfig(subcommand="rootinfo", family="G2"))
    assert usage.value.status == 2
    with pytest.raises(CommandError) as math:
        await cli_controller.run(RunConfig(subcommand="cap", family="A", rank=3, word="1,3", poly="e1*e2*e3"))
    assert math.value.status == 1
    assert math.value.detail.startswith("Erreur lors du")


@pytest.mark.asyncio
async def test_controller_localize_response(cli_controller):
    response = await cli_controller.run(
        RunConfig(subcommand="localize", family="D", rank=5, r=4, generator="z1", subdiagram="GammaDoublePrime")
    )
    assert response.value_text == "-1"
    assert response.word == [3, 4]

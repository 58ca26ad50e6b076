import pytest

from src.services.errors import FixtureNotFoundError
from src.services.reproduce import build_lines, reproduce, run_line


@pytest.mark.parametrize("scope, count", [("A", 35), ("C", 35), ("B", 14), ("D", 42), ("E6", 8)])
def test_line_counts(scope, count):
    assert len(build_lines(scope)) == count


def test_e7_lines_need_fixtures(fixture_texts):
    with pytest.raises(FixtureNotFoundError):
        build_lines("E7")
    assert len(build_lines("E7", fixtures=fixture_texts)) == 11


def test_unknown_scope():
    with pytest.raises(ValueError):
        build_lines("F4")


def test_query_ids_are_unique(fixture_texts):
    ids = [line.query_id for line in build_lines("all", fixtures=fixture_texts)]
    assert len(ids) == len(set(ids))


@pytest.mark.parametrize("scope", ["A", "C", "B", "E6"])
@pytest.mark.parametrize("d", [1, 2])
def test_reproduction_passes(scope, d):
    report = reproduce(scope, d)
    assert report.passed, report.to_text()


def test_even_orthogonal_reproduction():
    report = reproduce("D", 1)
    assert report.passed, report.to_text()


def test_e7_reproduction(fixture_texts):
    report = reproduce("E7", 1, fixtures=fixture_texts)
    assert report.passed, report.to_text()
    values = {line.entry.query_id: line.computed for line in report.lines}
    assert values["E7-r5-e7-p5"] == "-1/2"
    assert values["E7-r6-e7-p6"] == "3/2"


def test_zero_multiplier_gives_zero_everywhere():
    report = reproduce("E6", 0)
    assert report.passed
    assert {line.computed for line in report.lines} == {"0"}


def test_parallel_run_matches_sequential():
    sequential = reproduce("E6", 1, workers=1)
    parallel = reproduce("E6", 1, workers=2)
    assert [line.to_dict() for line in parallel.lines] == [line.to_dict() for line in sequential.lines]


def test_failed_line_is_reported():
    entry = build_lines("E6")[0]
    broken = type(entry)(**{**entry.__dict__, "polynomial": "z1*z2"})
    result = run_line(broken)
    assert not result.passed
    assert result.error


def test_report_dict():
    data = reproduce("E6", 1).to_dict()
    assert data["total"] == 8
    assert data["failed"] == 0
    assert all(line["status"] == "PASS" for line in data["lines"])

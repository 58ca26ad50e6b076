import pytest

from src.db.adapters.file_adapter import FileAdapter
from src.db.adapters.memory_adapter import MemoryAdapter
from src.services.errors import FixtureNotFoundError
from tests.conftest import FIXTURES_DIR


@pytest.mark.asyncio
async def test_memory_adapter_round_trip():
    adapter = MemoryAdapter({"p": "t1*t2"})
    assert await adapter.list_fixtures() == ["p"]
    assert await adapter.get_polynomial_text("p") == "t1*t2"
    location = await adapter.save_report("r1", {"passed": True})
    assert location == "memory://r1"
    assert await adapter.get_report("r1") == {"passed": True}
    assert await adapter.get_report("absent") is None


@pytest.mark.asyncio
async def test_memory_adapter_unknown_fixture():
    with pytest.raises(FixtureNotFoundError):
        await MemoryAdapter().get_polynomial_text("e7-p5")


@pytest.mark.asyncio
async def test_file_adapter_reads_shipped_fixtures(tmp_path):
    adapter = FileAdapter(fixtures_dir=FIXTURES_DIR, reports_dir=str(tmp_path / "reports"))
    assert await adapter.list_fixtures() == ["e7-p5", "e7-p6"]
    text = await adapter.get_polynomial_text("e7-p5")
    assert text.startswith("#")


@pytest.mark.asyncio
async def test_file_adapter_reports(tmp_path):
    adapter = FileAdapter(fixtures_dir=str(tmp_path), reports_dir=str(tmp_path / "reports"))
    path = await adapter.save_report("reproduce-E6", {"scope": "E6", "passed": True})
    assert path.endswith("reproduce-E6.json")
    assert await adapter.get_report("reproduce-E6") == {"scope": "E6", "passed": True}
    assert await adapter.get_report("absent") is None


@pytest.mark.asyncio
@pytest.mark.parametrize("name", ["absent", "../e7-p5", ""])
async def test_file_adapter_rejects_unknown_fixtures(tmp_path, name):
    adapter = FileAdapter(fixtures_dir=FIXTURES_DIR, reports_dir=str(tmp_path))
    with pytest.raises(FixtureNotFoundError):
        await adapter.get_polynomial_text(name)

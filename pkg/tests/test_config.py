from src.config import env


def test_default_configuration_is_valid():
    assert env.validate_env() == []


def test_invalid_values_are_reported(monkeypatch):
    monkeypatch.setattr(env.config, "SCHUBERT_WORKERS", 0)
    monkeypatch.setattr(env.config, "OUTPUT_FORMAT", "xml")
    monkeypatch.setattr(env.config, "FIXTURES_DIR", "/nonexistent/fixtures")
    assert env.validate_env() == ["SCHUBERT_WORKERS", "OUTPUT_FORMAT", "FIXTURES_DIR"]

import pytest
from pydantic import ValidationError

from spreadlab.core.config import Settings


def test_defaults(monkeypatch):
    for name in ("SOLVER_LIMIT", "WORKERS", "LOG_LEVEL"):
        monkeypatch.delenv(f"SPREADLAB_{name}", raising=False)
    s = Settings()
    assert s.SOLVER_LIMIT == 24
    assert s.WORKERS == 1
    assert s.LOG_LEVEL == "WARNING"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("SPREADLAB_SOLVER_LIMIT", "12")
    monkeypatch.setenv("SPREADLAB_WORKERS", "3")
    monkeypatch.setenv("SPREADLAB_LOG_LEVEL", " debug ")
    s = Settings()
    assert (s.SOLVER_LIMIT, s.WORKERS, s.LOG_LEVEL) == (12, 3, "DEBUG")


@pytest.mark.parametrize("name,value", [("SOLVER_LIMIT", "-1"), ("WORKERS", "0"), ("SOLVER_CHUNK_SIZE", "0")])
def test_rejects_bad_values(monkeypatch, name, value):
    monkeypatch.setenv(f"SPREADLAB_{name}", value)
    with pytest.raises(ValidationError):
        Settings()

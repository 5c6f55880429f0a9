import pytest

from flagcalc.dynkin import builtin


@pytest.fixture(scope="session")
def types():
    return {t: builtin(t) for t in ("A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "D4", "F4")}


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("FLAGCALC_CACHE", str(tmp_path / "cache"))

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _isolated_witt_cache(tmp_path_factory, monkeypatch):
    # keep universal-polynomial files out of the user's cache directory
    monkeypatch.setenv("FRH_WITT_CACHE", str(tmp_path_factory.getbasetemp() / "witt-cache"))

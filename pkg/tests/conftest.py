import pytest

from lex.config import reset_settings
from lex.state import code_store


@pytest.fixture(autouse=True)
def fresh_state(monkeypatch):
    for name in ("LEX_BUDGET", "LEX_MAX_N", "LEX_WORKERS"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    code_store.clear()
    yield
    reset_settings()

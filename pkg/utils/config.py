import os

# Environment driven settings. Values are read on every call so that a .env
# loaded by main.py (or a test's monkeypatch) is always honoured.

DEFAULT_BUDGET = 2_000_000


def get_oracle_budget() -> int:
    raw = os.getenv("KVISITS_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_BUDGET
    return value if value > 0 else DEFAULT_BUDGET


def get_log_dir() -> str:
    return os.getenv("KVISITS_LOG_DIR", "logs")


def get_log_level() -> str:
    return os.getenv("KVISITS_LOG_LEVEL", "INFO").upper()


def get_output_dir() -> str:
    return os.getenv("KVISITS_OUTPUT_DIR", "output")

import logging
import re

import pytest

from utils.config import DEFAULT_BUDGET, get_log_level, get_oracle_budget, get_output_dir
from utils.errors import BudgetExhausted, FormatError, KVisitsError
from utils.logger import CustomFormatter, setup_logger


@pytest.mark.parametrize("raw, expected", [
    (None, DEFAULT_BUDGET),
    ("500", 500),
    ("lots", DEFAULT_BUDGET),
    ("-3", DEFAULT_BUDGET),
    ("0", DEFAULT_BUDGET),
])
def test_oracle_budget(monkeypatch, raw, expected):
    if raw is None:
        monkeypatch.delenv("KVISITS_BUDGET", raising=False)
    else:
        monkeypatch.setenv("KVISITS_BUDGET", raw)
    assert get_oracle_budget() == expected


def test_directories_and_level(monkeypatch):
    monkeypatch.delenv("KVISITS_OUTPUT_DIR", raising=False)
    assert get_output_dir() == "output"
    monkeypatch.setenv("KVISITS_LOG_LEVEL", "debug")
    assert get_log_level() == "DEBUG"


def test_formatter():
    record = logging.LogRecord("kvisits", logging.WARNING, __file__, 1, "budget %s", (10,), None)
    line = CustomFormatter().format(record)
    assert re.fullmatch(r"\[WARN\] \d{2}-\d{2}-\d{4} \d{2}:\d{2} budget 10", line)


def test_setup_logger_writes_to_the_log_dir(monkeypatch, tmp_path):
    monkeypatch.setenv("KVISITS_LOG_DIR", str(tmp_path / "logs"))
    log = setup_logger("kvisits-test-file")
    try:
        assert setup_logger("kvisits-test-file") is log
        assert len(log.handlers) == 1
        assert isinstance(log.handlers[0], logging.FileHandler)
        assert not log.propagate
        assert (tmp_path / "logs").is_dir()
    finally:
        for handler in list(log.handlers):
            handler.close()
            log.removeHandler(handler)


def test_setup_logger_survives_unwritable_dir(monkeypatch, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    monkeypatch.setenv("KVISITS_LOG_DIR", str(blocker / "logs"))
    log = setup_logger("kvisits-test-null")
    try:
        assert isinstance(log.handlers[0], logging.NullHandler)
    finally:
        log.handlers.clear()


def test_errors():
    error = FormatError("not an integer: 'x'", line=3)
    assert str(error) == "line 3: not an integer: 'x'"
    assert isinstance(error, KVisitsError)
    assert BudgetExhausted(12).expanded == 12

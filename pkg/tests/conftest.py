import os
import tempfile

# keep test runs from writing into the working tree; must happen before utils.logger is imported
os.environ.setdefault("KVISITS_LOG_DIR", os.path.join(tempfile.gettempdir(), "kvisits-test-logs"))

import pytest

from instances.models import KVisitsInstance
from pm.models import PositionMatchingInstance

TWELVE_NODE_DEADLINES = (4, 5, 6, 7, 8, 8, 10, 10, 11, 15, 22, 23)
SEVEN_NODE_DEADLINES = (6, 8, 8, 8, 11, 11, 14)


@pytest.fixture
def twelve_node_instance() -> KVisitsInstance:
    return KVisitsInstance(TWELVE_NODE_DEADLINES, 2)


@pytest.fixture
def seven_node_instance() -> KVisitsInstance:
    return KVisitsInstance(SEVEN_NODE_DEADLINES, 2)


@pytest.fixture
def worked_pm_instance() -> PositionMatchingInstance:
    return PositionMatchingInstance((6, 7, 8, 8, 15, 15), (5, 6, 7, 8, 14, 15), (12, 13, 14, 15, 20, 28))


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    path = tmp_path / "output"
    monkeypatch.setenv("KVISITS_OUTPUT_DIR", str(path))
    return path


@pytest.fixture
def text_file(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write

"""
Line-oriented text formats for every instance type in the project.

    kvisits 1            # format tag + version
    k 2
    deadlines 6 8 8 8 11 11 14

Whitespace separated, `#` starts a comment, blank lines are ignored. Each
file holds exactly one record; all integers must fit in 64 bits.
"""

from dataclasses import dataclass, field

from instances.models import KVisitsInstance, Schedule, VarKVisitsInstance
from instances.preprocess import discretize_values
from pm.models import PositionMatchingInstance, validate
from reductions.models import In3dmInstance, Rn3dmInstance, ThresholdPinwheelInstance
from utils.errors import FormatError

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1

FORMAT_VERSIONS = {
    "kvisits": 1,
    "varkvisits": 1,
    "schedule": 1,
    "pm": 1,
    "rn3dm": 1,
    "in3dm": 1,
    "tpws": 1,
}


@dataclass
class _Record:
    tag: str
    fields: dict[str, tuple[int, list[int]]] = field(default_factory=dict)
    rows: list[tuple[int, list[int]]] = field(default_factory=list)

    def get(self, key: str) -> list[int]:
        if key not in self.fields:
            raise FormatError(f"{self.tag}: missing '{key}' line")
        return self.fields[key][1]

    def scalar(self, key: str) -> int:
        values = self.get(key)
        if len(values) != 1:
            raise FormatError(f"'{key}' takes exactly one value, got {len(values)}", self.fields[key][0])
        return values[0]


def _to_int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"'{token}' is not an integer", lineno) from None
    if value < INT64_MIN or value > INT64_MAX:
        raise FormatError(f"{token} does not fit in 64 bits", lineno)
    return value


def _parse(text: str, expected_tag: str | None = None) -> _Record:
    record = None
    allowed: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if record is None:
            tag = tokens[0]
            if tag not in FORMAT_VERSIONS:
                raise FormatError(f"unknown format tag '{tag}'", lineno)
            if expected_tag is not None and tag != expected_tag:
                raise FormatError(f"expected a '{expected_tag}' file, found '{tag}'", lineno)
            if len(tokens) != 2 or _to_int(tokens[1], lineno) != FORMAT_VERSIONS[tag]:
                raise FormatError(f"unsupported header for '{tag}', expected '{tag} {FORMAT_VERSIONS[tag]}'", lineno)
            record = _Record(tag)
            allowed = _KEYS[tag]
            continue

        key, values = tokens[0], [_to_int(t, lineno) for t in tokens[1:]]
        if key not in allowed:
            raise FormatError(f"unexpected key '{key}' in a {record.tag} file", lineno)
        if key == "row":
            record.rows.append((lineno, values))
        elif key in record.fields:
            raise FormatError(f"duplicate '{key}' line", lineno)
        else:
            record.fields[key] = (lineno, values)

    if record is None:
        raise FormatError("empty input: no format header found")
    return record


_KEYS = {
    "kvisits": {"k", "deadlines"},
    "varkvisits": {"n", "k", "row"},
    "schedule": {"entries"},
    "pm": {"D", "A", "T"},
    "rn3dm": {"A", "sigma"},
    "in3dm": {"A", "T"},
    "tpws": {"d1", "d2", "t"},
}


def _line(key: str, values) -> str:
    return " ".join([key, *map(str, values)])


# --- k-Visits ----------------------------------------------------------------

def _kvisits_from(record: _Record) -> KVisitsInstance:
    return KVisitsInstance(tuple(record.get("deadlines")), record.scalar("k"))


def parse_kvisits(text: str) -> KVisitsInstance:
    return _kvisits_from(_parse(text, "kvisits"))


def serialize_kvisits(instance: KVisitsInstance) -> str:
    return "\n".join(["kvisits 1", f"k {instance.k}", _line("deadlines", instance.deadlines)]) + "\n"


def _varkvisits_from(record: _Record) -> VarKVisitsInstance:
    n, k = record.scalar("n"), record.scalar("k")
    if len(record.rows) != n:
        raise FormatError(f"declared n {n} but found {len(record.rows)} rows")
    for lineno, row in record.rows:
        if len(row) != k:
            raise FormatError(f"row has {len(row)} deadlines, declared k is {k}", lineno)
    return VarKVisitsInstance(tuple(tuple(row) for _, row in record.rows))


def parse_varkvisits(text: str) -> VarKVisitsInstance:
    return _varkvisits_from(_parse(text, "varkvisits"))


def serialize_varkvisits(instance: VarKVisitsInstance) -> str:
    lines = ["varkvisits 1", f"n {instance.n}", f"k {instance.k}"]
    lines += [_line("row", row) for row in instance.rows]
    return "\n".join(lines) + "\n"


def parse_schedule(text: str) -> Schedule:
    return Schedule(tuple(_parse(text, "schedule").get("entries")))


def serialize_schedule(schedule: Schedule) -> str:
    return "\n".join(["schedule 1", _line("entries", schedule.entries)]) + "\n"


# --- Position Matching and numerical matching ---------------------------------

def _pm_from(record: _Record) -> PositionMatchingInstance:
    D = record.get("D")
    # A is optional and only re-validated; D determines it.
    A = record.get("A") if "A" in record.fields else discretize_values(D)
    instance = PositionMatchingInstance(tuple(D), tuple(A), tuple(record.get("T")))
    validate(instance)
    return instance


def parse_pm(text: str) -> PositionMatchingInstance:
    return _pm_from(_parse(text, "pm"))


def serialize_pm(instance: PositionMatchingInstance) -> str:
    return "\n".join(["pm 1", _line("D", instance.D), _line("A", instance.A), _line("T", instance.T)]) + "\n"


def _rn3dm_from(record: _Record) -> Rn3dmInstance:
    return Rn3dmInstance(tuple(record.get("A")), record.scalar("sigma"))


def parse_rn3dm(text: str) -> Rn3dmInstance:
    return _rn3dm_from(_parse(text, "rn3dm"))


def serialize_rn3dm(instance: Rn3dmInstance) -> str:
    return "\n".join(["rn3dm 1", _line("A", instance.A), f"sigma {instance.sigma}"]) + "\n"


def _in3dm_from(record: _Record) -> In3dmInstance:
    return In3dmInstance(tuple(record.get("A")), tuple(record.get("T")))


def parse_in3dm(text: str) -> In3dmInstance:
    return _in3dm_from(_parse(text, "in3dm"))


def serialize_in3dm(instance: In3dmInstance) -> str:
    return "\n".join(["in3dm 1", _line("A", instance.A), _line("T", instance.T)]) + "\n"


def _tpws_from(record: _Record) -> ThresholdPinwheelInstance:
    return ThresholdPinwheelInstance(tuple(record.get("d1")), tuple(record.get("d2")), tuple(record.get("t")))


def parse_tpws(text: str) -> ThresholdPinwheelInstance:
    return _tpws_from(_parse(text, "tpws"))


def serialize_tpws(instance: ThresholdPinwheelInstance) -> str:
    return "\n".join(["tpws 1", _line("d1", instance.d1), _line("d2", instance.d2),
                      _line("t", instance.thresholds)]) + "\n"


# --- Tag dispatch --------------------------------------------------------------

_READERS = {
    "kvisits": _kvisits_from,
    "varkvisits": _varkvisits_from,
    "schedule": lambda record: Schedule(tuple(record.get("entries"))),
    "pm": _pm_from,
    "rn3dm": _rn3dm_from,
    "in3dm": _in3dm_from,
    "tpws": _tpws_from,
}

_WRITERS = {
    KVisitsInstance: serialize_kvisits,
    VarKVisitsInstance: serialize_varkvisits,
    Schedule: serialize_schedule,
    PositionMatchingInstance: serialize_pm,
    Rn3dmInstance: serialize_rn3dm,
    In3dmInstance: serialize_in3dm,
    ThresholdPinwheelInstance: serialize_tpws,
}


def parse_any(text: str):
    """Returns (tag, object) for any supported format."""
    record = _parse(text)
    return record.tag, _READERS[record.tag](record)


def serialize_any(obj) -> str:
    writer = _WRITERS.get(type(obj))
    if writer is None:
        raise FormatError(f"no text format for {type(obj).__name__}")
    return writer(obj)


def read_file(path: str, expected_tag: str | None = None):
    with open(path, "r", encoding="utf-8") as f:
        tag, obj = parse_any(f.read())
    if expected_tag is not None and tag != expected_tag:
        raise FormatError(f"{path}: expected a '{expected_tag}' file, found '{tag}'")
    return obj


def write_file(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_any(obj))

"""
Body descriptors and computation records
========================================

DESCRIPTORS:
------------
A body is described by a JSON document:

    {"kind": "ball", "params": {"radius": 1, "dim": 2}}
    {"kind": "ellipsoid", "params": {"matrix": [[2, 0], [0, 1]]}}
    {"kind": "lr_ball", "params": {"r": 3, "dim": 2}}
    {"kind": "polytope", "params": {"vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]]}}
    {"kind": "smooth2d", "params": {"cos": [1, 0, 0, 0.1], "sin": [0, 0, 0, 0]}}
    {"kind": "polar", "body": <descriptor>}
    {"kind": "linear_image", "params": {"matrix": [[...]]}, "body": <descriptor>}

The digest of a descriptor is the sha256 of its canonical JSON (sorted
keys, no whitespace), so two files describing the same body agree.

RECORDS:
--------
One JSON object per line on stdout with sorted keys. Infinite values are
written as the strings "inf" and "-inf". wall_time is 0.0 unless timings
were requested, which keeps two runs byte-identical.
"""

import csv
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import IO, Any

from . import bodies
from .bodies import ConvexBody
from .errors import InvalidArgument, InvalidBody
from .log import get_logger

log = get_logger("records")

# =============================================================================
# DESCRIPTORS
# =============================================================================


def canonical_json(document: Any) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"))


def body_digest(document: dict) -> str:
    return hashlib.sha256(canonical_json(document).encode("utf-8")).hexdigest()


def _params(document: dict) -> dict:
    params = document.get("params", {})
    if not isinstance(params, dict):
        raise InvalidBody(f"params must be an object, got {params!r}")
    return params


def _inner(document: dict) -> ConvexBody:
    if "body" not in document:
        raise InvalidBody(f"{document['kind']} needs a nested 'body'")
    return parse_body(document["body"])


def parse_body(document: dict) -> ConvexBody:
    """
    Build a ConvexBody from a descriptor.

    Raises InvalidBody for an unknown kind, a malformed matrix or a body
    without the origin in its interior.
    """
    if not isinstance(document, dict) or "kind" not in document:
        raise InvalidBody("descriptor must be an object with a 'kind'")
    kind = document["kind"]
    params = _params(document)
    try:
        if kind == "ball":
            return bodies.ball(float(params.get("radius", 1.0)), int(params.get("dim", 2)))
        if kind == "ellipsoid":
            return bodies.ellipsoid(params["matrix"])
        if kind == "lr_ball":
            return bodies.lr_ball(float(params["r"]), int(params.get("dim", 2)))
        if kind == "polytope":
            return bodies.polytope(params["vertices"])
        if kind == "smooth2d":
            return bodies.smooth2d(cos=params["cos"], sin=params.get("sin"))
        if kind == "polar":
            return bodies.polar(_inner(document))
        if kind == "linear_image":
            return bodies.linear_image(params["matrix"], _inner(document))
    except KeyError as e:
        raise InvalidBody(f"{kind} descriptor is missing {e}") from e
    except (TypeError, ValueError) as e:
        raise InvalidBody(f"malformed {kind} descriptor: {e}") from e
    raise InvalidBody(f"unknown body kind {kind!r}")


def load_body(path: str | Path) -> tuple[ConvexBody, dict]:
    """Read a descriptor file; returns the body and the parsed document."""
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except OSError as e:
        raise InvalidBody(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InvalidBody(f"invalid JSON in {path}: {e}") from e
    body = parse_body(document)
    log.debug(f"loaded {body.describe()} from {path}")
    return body, document


# =============================================================================
# RECORDS
# =============================================================================


def encode_value(x) -> float | str | None:
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def decode_value(x) -> float:
    return float(x)


def _encode_parameters(parameters: dict) -> dict:
    out = {}
    for key, value in parameters.items():
        if isinstance(value, float):
            out[key] = encode_value(value)
        elif isinstance(value, (list, tuple)):
            out[key] = [encode_value(v) if isinstance(v, float) else v for v in value]
        else:
            out[key] = value
    return out


@dataclass(frozen=True)
class ComputationRecord:
    command: str
    body_digest: str
    parameters: dict = field(default_factory=dict)
    value: float = math.nan
    err_estimate: float = 0.0
    classification: str = "finite"
    wall_time: float = 0.0

    def to_json(self) -> str:
        doc = asdict(self)
        doc["parameters"] = _encode_parameters(self.parameters)
        doc["value"] = encode_value(self.value)
        doc["err_estimate"] = encode_value(self.err_estimate)
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "ComputationRecord":
        doc = json.loads(line)
        doc["value"] = decode_value(doc["value"])
        doc["err_estimate"] = decode_value(doc["err_estimate"])
        return cls(**doc)


def classify(value: float) -> str:
    if math.isnan(value):
        return "failed"
    if math.isinf(value):
        return "plus_infinity" if value > 0 else "minus_infinity"
    return "finite"


class RecordWriter:
    """Writes records to a stream in emission order."""

    def __init__(self, stream: IO[str], timings: bool = False) -> None:
        self._stream = stream
        self.timings = timings
        self.count = 0

    def write(self, record: ComputationRecord) -> None:
        if not self.timings and record.wall_time:
            record = ComputationRecord(**{**asdict(record), "wall_time": 0.0})
        self._stream.write(record.to_json() + "\n")
        self.count += 1


def write_plot_csv(path: str | Path, header: list[str], rows) -> None:
    """Plot series for tools/plot-surface-body.py."""
    path = Path(path)
    try:
        with path.open("w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            for row in rows:
                writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    except OSError as e:
        raise InvalidArgument(f"cannot write {path}: {e.strerror}") from e
    log.info(f"wrote {path}")


def read_plot_csv(path: str | Path) -> tuple[list[str], list[list[float]]]:
    with Path(path).open(newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        return header, [[float(v) for v in row] for row in reader]

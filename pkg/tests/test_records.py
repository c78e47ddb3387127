import json
import math

import numpy as np
import pytest

from renyi_convex import bodies
from renyi_convex.errors import InvalidArgument, InvalidBody
from renyi_convex.records import (
    ComputationRecord,
    RecordWriter,
    body_digest,
    canonical_json,
    classify,
    encode_value,
    load_body,
    parse_body,
    read_plot_csv,
    write_plot_csv,
)

# =============================================================================
# DESCRIPTORS
# =============================================================================


def test_digest_ignores_key_order_and_whitespace():
    a = {"kind": "lr_ball", "params": {"r": 3, "dim": 2}}
    b = json.loads('{ "params": {"dim": 2, "r": 3},\n "kind": "lr_ball" }')
    assert canonical_json(a) == '{"kind":"lr_ball","params":{"dim":2,"r":3}}'
    assert body_digest(a) == body_digest(b)
    assert len(body_digest(a)) == 64


def test_digest_separates_bodies():
    assert body_digest({"kind": "lr_ball", "params": {"r": 3}}) != body_digest({"kind": "lr_ball", "params": {"r": 4}})


@pytest.mark.parametrize("name", ["disk", "ellipse", "lr3", "lr3-polar", "square", "ball3", "trefoil"])
def test_bundled_descriptors_load(body_dir, name):
    K, document = load_body(body_dir / f"{name}.json")
    assert document["kind"] == K.kind
    assert bodies.volume(K) > 0.0


def test_parse_nested_descriptors():
    K = parse_body(
        {"kind": "linear_image", "params": {"matrix": [[2, 0], [0, 1]]}, "body": {"kind": "ball", "params": {"dim": 2}}}
    )
    assert bodies.volume(K) == pytest.approx(2.0 * np.pi)
    P = parse_body({"kind": "polar", "body": {"kind": "lr_ball", "params": {"r": 3}}})
    assert bodies.volume(P) == pytest.approx(bodies.lr_volume_closed_form(2, 1.5))


@pytest.mark.parametrize(
    "document",
    [
        {"kind": "torus"},
        {"params": {}},
        {"kind": "lr_ball", "params": {"dim": 2}},
        {"kind": "ellipsoid", "params": {"matrix": "diag"}},
        {"kind": "polar"},
        {"kind": "ball", "params": [1, 2]},
        {"kind": "ball", "params": {"radius": -1}},
    ],
)
def test_malformed_descriptors(document):
    with pytest.raises(InvalidBody):
        parse_body(document)


def test_load_body_errors(tmp_path):
    with pytest.raises(InvalidBody):
        load_body(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{kind: ball")
    with pytest.raises(InvalidBody):
        load_body(broken)


# =============================================================================
# RECORDS
# =============================================================================


def test_infinities_are_written_as_strings():
    assert encode_value(math.inf) == "inf"
    assert encode_value(-math.inf) == "-inf"
    assert encode_value(math.nan) == "nan"
    record = ComputationRecord("renyi", "abc", {"alpha": math.inf}, -math.inf, 0.0, "minus_infinity")
    doc = json.loads(record.to_json())
    assert doc["value"] == "-inf"
    assert doc["parameters"]["alpha"] == "inf"
    assert ComputationRecord.from_json(record.to_json()).value == -math.inf


def test_records_have_sorted_keys():
    line = ComputationRecord("asp", "abc", {"p": "1"}, 1.5).to_json()
    keys = list(json.loads(line))
    assert keys == sorted(keys)


def test_classify():
    assert classify(1.0) == "finite"
    assert classify(math.inf) == "plus_infinity"
    assert classify(-math.inf) == "minus_infinity"
    assert classify(math.nan) == "failed"


def test_writer_zeroes_wall_time_without_timings(tmp_path):
    path = tmp_path / "out.jsonl"
    with path.open("w") as stream:
        writer = RecordWriter(stream)
        writer.write(ComputationRecord("asp", "abc", {}, 1.0, wall_time=0.25))
        assert writer.count == 1
    assert json.loads(path.read_text())["wall_time"] == 0.0


def test_plot_csv(tmp_path):
    path = tmp_path / "surface.csv"
    write_plot_csv(path, ["s", "volume", "quotient"], [[0.1, 3.1, 0.78], [0.05, 3.13, 0.785]])
    header, rows = read_plot_csv(path)
    assert header == ["s", "volume", "quotient"]
    assert rows[1] == [0.05, 3.13, 0.785]
    with pytest.raises(InvalidArgument):
        write_plot_csv(tmp_path / "missing" / "x.csv", ["s"], [])

"""Tests for the NDJSON session transcript format.

Record values are checked against the same frozen L-shape run the loop
tests use, so any drift in the stream format or in run numerics shows up
here as well.
"""

from __future__ import annotations

import json

import pytest

from oneshot.advice import ScriptedOracle
from oneshot.loop import LoopConfig, run_induction
from oneshot.session import (
    PROTOCOL,
    digest,
    done_record,
    dumps,
    error_record,
    hello_record,
    read_log,
    records_from_result,
    replay_choices,
    to_ndjson,
    write_log,
)

KINDS = [
    "hello",
    "state",
    "trace",
    "query",
    "prefer",
    "state",
    "trace",
    "state",
    "trace",
    "done",
]


@pytest.fixture(scope="module")
def records(lshape, lshape_result):
    return records_from_result(lshape, LoopConfig(), lshape_result)


def test_dumps_is_sorted_and_compact():
    assert dumps({"b": 1, "a": [2, None]}) == '{"a":[2,null],"b":1}'


def test_hello_record_fields(lshape):
    cfg = LoopConfig(advice_k=2, seed=7)
    rec = hello_record(lshape, cfg)
    assert rec["kind"] == "hello"
    assert rec["protocol"] == PROTOCOL
    assert rec["concept"] == "L(s1)"
    assert rec["params"] == {"base": 4, "height": 5}
    assert rec["facts"] == [f.render() for f in lshape.sorted_facts()]
    assert len(rec["facts"]) == 9
    assert rec["config"] == {
        "iterations": cfg.max_iterations,
        "advice_k": 2,
        "use_distance": True,
        "use_advice": True,
        "seed": 7,
    }


def test_record_kind_sequence(records):
    assert [r["kind"] for r in records] == KINDS


def test_query_and_prefer_records_pair_up(records):
    query = next(r for r in records if r["kind"] == "query")
    prefer = next(r for r in records if r["kind"] == "prefer")
    assert query["id"] == "q1"
    assert prefer == {"kind": "prefer", "id": "q1", "choice": 0}
    assert query["iteration"] == 1
    assert [c["literal"] for c in query["candidates"]] == [
        "Sub(V1,V4,1)",
        "Greater(V1,V4)",
        "Geq(V1,V4)",
    ]
    for cand in query["candidates"]:
        assert set(cand) == {"literal", "ground", "gloss"}


def test_state_records_follow_the_traces(records, lshape_result):
    states = [r for r in records if r["kind"] == "state"]
    assert [s["iteration"] for s in states] == [0, 1, 2]
    for state, tr in zip(states, lshape_result.traces):
        assert state["theory"] == tr.theory.render()


def test_trace_record_values(records):
    traces = [r for r in records if r["kind"] == "trace"]
    first, second, third = traces
    assert first["nll"] == pytest.approx(0.09)
    assert first["score"] == pytest.approx(0.134444, abs=1e-6)
    assert first["accepted"] is True
    assert first["query"] is None and first["choice"] is None
    assert second["accepted"] is False
    assert second["query"] == "q1" and second["choice"] == 0
    assert third["accepted"] is False
    assert third["query"] is None


def test_done_record_contents(records, lshape_result):
    done = records[-1]
    assert done["kind"] == "done"
    assert done["theory"] == lshape_result.theory.render()
    assert done["covered"] is True
    assert done["queries"] == 1
    assert done["iterations"] == lshape_result.iterations
    assert done["distance"] == pytest.approx(0.044444, abs=1e-6)
    assert done["sentinel"] is False
    assert "seconds" not in done


def test_distance_free_run_serializes_nulls(lshape, blocks, lib, truth):
    cfg = LoopConfig(use_distance=False)
    result = run_induction(lshape, blocks, lib, ScriptedOracle(truth), cfg)
    recs = records_from_result(lshape, cfg, result)
    done = recs[-1]
    assert "distance" not in done and "sentinel" not in done
    for rec in recs:
        if rec["kind"] == "trace":
            assert rec["distance"] is None
            assert '"distance":null' in dumps(rec)


def test_to_ndjson_round_trips(records):
    text = to_ndjson(records)
    assert text.endswith("\n")
    lines = text.splitlines()
    assert len(lines) == len(records)
    assert [json.loads(line) for line in lines] == records


def test_write_and_read_log(tmp_path, records):
    path = tmp_path / "run.log"
    write_log(path, records)
    assert read_log(path) == records
    # blank lines are tolerated on the way back in
    path.write_text(path.read_text() + "\n\n")
    assert read_log(path) == records


def test_digest_is_stable_across_identical_runs(
    lshape, blocks, lib, truth, records
):
    rerun = run_induction(lshape, blocks, lib, ScriptedOracle(truth), LoopConfig())
    again = records_from_result(lshape, LoopConfig(), rerun)
    assert again == records
    d = digest(records)
    assert d == digest(again)
    assert len(d) == 64 and set(d) <= set("0123456789abcdef")


def test_replay_choices_extraction(records, lshape, blocks, lib, truth):
    assert replay_choices(records) == [0]
    cfg = LoopConfig(advice_k=2)
    result = run_induction(lshape, blocks, lib, ScriptedOracle(truth), cfg)
    recs = records_from_result(lshape, cfg, result)
    assert replay_choices(recs) == [0, None]


def test_error_record_shape():
    assert error_record("boom") == {"kind": "error", "message": "boom"}

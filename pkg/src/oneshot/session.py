"""Session transcripts.

A session is a newline-delimited JSON stream with stable key order, so
two runs that make the same decisions produce byte-identical logs.  The
record kinds are:

    hello   session header: concept, facts, configuration
    state   hypothesis after an iteration
    query   constraint preference question with ranked candidates
    prefer  the teacher's answer to a query
    trace   iteration summary: score parts and acceptance
    done    final theory and session totals
    error   abnormal end

Wall-clock time is deliberately kept out of the records; replaying a log
through a replay teacher must reproduce it byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable

from .advice import AdviceQuery
from .logic import GroundExample, Theory
from .loop import InductionResult, IterationTrace, LoopConfig

PROTOCOL = 1


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def hello_record(x: GroundExample, cfg: LoopConfig) -> dict:
    return {
        "kind": "hello",
        "protocol": PROTOCOL,
        "concept": x.head.render(),
        "params": {name: value for name, value in x.params},
        "facts": [f.render() for f in x.sorted_facts()],
        "config": {
            "iterations": cfg.max_iterations,
            "advice_k": cfg.advice_k,
            "use_distance": cfg.use_distance,
            "use_advice": cfg.use_advice,
            "seed": cfg.seed,
        },
    }


def state_record(iteration: int, theory: Theory) -> dict:
    return {
        "kind": "state",
        "iteration": iteration,
        "theory": theory.render(),
    }


def query_record(qid: str, query: AdviceQuery) -> dict:
    return {
        "kind": "query",
        "id": qid,
        "iteration": query.iteration,
        "candidates": [
            {"literal": c.literal.render(), "ground": c.ground.render(), "gloss": c.gloss}
            for c in query.candidates
        ],
    }


def prefer_record(qid: str, choice: int | None) -> dict:
    return {"kind": "prefer", "id": qid, "choice": choice}


def trace_record(tr: IterationTrace, qid: str | None) -> dict:
    return {
        "kind": "trace",
        "iteration": tr.index,
        "nll": tr.nll,
        "distance": tr.distance,
        "score": tr.score,
        "accepted": tr.accepted,
        "query": qid,
        "choice": tr.choice,
    }


def done_record(result: InductionResult) -> dict:
    rec = {
        "kind": "done",
        "theory": result.theory.render(),
        "covered": result.covered,
        "queries": result.queries,
        "iterations": result.iterations,
    }
    if result.distance is not None:
        rec["distance"] = result.distance.ncd
        rec["sentinel"] = result.distance.sentinel
    return rec


def error_record(message: str) -> dict:
    return {"kind": "error", "message": message}


def records_from_result(
    x: GroundExample, cfg: LoopConfig, result: InductionResult
) -> list[dict]:
    """The canonical transcript of a finished run, in stream order."""
    out = [hello_record(x, cfg)]
    qn = 0
    for tr in result.traces:
        qid = None
        if tr.query is not None:
            qn += 1
            qid = f"q{qn}"
            out.append(query_record(qid, tr.query))
            out.append(prefer_record(qid, tr.choice))
        out.append(state_record(tr.index, tr.theory))
        out.append(trace_record(tr, qid))
    out.append(done_record(result))
    return out


def to_ndjson(records: Iterable[dict]) -> str:
    return "".join(dumps(r) + "\n" for r in records)


def write_log(path: str | Path, records: Iterable[dict]) -> None:
    Path(path).write_text(to_ndjson(records))


def read_log(path: str | Path) -> list[dict]:
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line:
            out.append(json.loads(line))
    return out


def digest(records: Iterable[dict]) -> str:
    return hashlib.sha256(to_ndjson(records).encode()).hexdigest()


def replay_choices(records: Iterable[dict]) -> list[int | None]:
    """Teacher answers in query order, for feeding a replay teacher."""
    return [r["choice"] for r in records if r.get("kind") == "prefer"]

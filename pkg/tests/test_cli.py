"""End-to-end tests for the command line interface.

Every subcommand except serve runs through main() against the packaged
domain files; serve is covered by the service tests, so only its parser
wiring is checked here.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import pytest

from oneshot.bench import CSV_COLUMNS
from oneshot.cli import build_parser, main

ROOT = Path(__file__).resolve().parent.parent
FACTS = str(ROOT / "domains" / "l_shape.facts")
DOM = str(ROOT / "domains" / "blocks.dom")
CONSTRAINTS = str(ROOT / "domains" / "std.constraints")
TRUTH = str(ROOT / "domains" / "l_truth.thy")

FINAL_RENDER = (
    "L(V0) :- Base(V0,V1), Contains(V0,V2), Contains(V0,V3), Height(V3,V1),"
    ' Height(V0,V4), Row(V2), SpRel(V3,V2,"NWTop"), Tower(V3), Width(V2,V1),'
    " Sub(V1,V4,1)."
)

PLAN_TEXT = (
    "adopt(s1,a)\n"
    "adopt(s1,b)\n"
    'align(b,a,"NWTop")\n'
    "extend(a,0,0)\n"
    "extend(a,1,0)\n"
    "extend(a,2,0)\n"
    "extend(a,3,0)\n"
    "stack(b,0,0)\n"
    "stack(b,0,1)\n"
    "stack(b,0,2)\n"
    "stack(b,0,3)\n"
)


def induce_argv(*extra: str) -> list[str]:
    return [
        "induce",
        "--facts", FACTS,
        "--domain", DOM,
        "--constraints", CONSTRAINTS,
        *extra,
    ]


def test_induce_with_scripted_teacher(tmp_path, capsys):
    out = tmp_path / "final.thy"
    log = tmp_path / "run.log"
    code = main(induce_argv("--truth", TRUTH, "--out", str(out), "--log", str(log)))
    captured = capsys.readouterr()
    assert code == 0
    assert out.read_text().strip() == FINAL_RENDER
    assert FINAL_RENDER in captured.out
    assert "covered: True" in captured.out
    assert "queries: 1" in captured.out
    assert "ncd=0.044444" in captured.out
    assert log.exists()


def test_induce_replay_round_trip(tmp_path, capsys):
    log = tmp_path / "run.log"
    assert main(induce_argv("--truth", TRUTH, "--log", str(log))) == 0
    capsys.readouterr()

    code = main(induce_argv("--replay", str(log)))
    captured = capsys.readouterr()
    assert code == 0
    assert "replay matches the original log" in captured.out


def test_induce_replay_detects_divergence(tmp_path, capsys):
    log = tmp_path / "run.log"
    assert main(induce_argv("--truth", TRUTH, "--log", str(log))) == 0
    capsys.readouterr()

    original = '{"choice":0,"id":"q1","kind":"prefer"}'
    tampered = '{"choice":null,"id":"q1","kind":"prefer"}'
    text = log.read_text()
    assert original in text
    log.write_text(text.replace(original, tampered))

    code = main(induce_argv("--replay", str(log)))
    captured = capsys.readouterr()
    assert code == 1
    assert "DIVERGES" in captured.err


def test_induce_ablation_flags(capsys):
    code = main(induce_argv("--no-distance", "--no-advice"))
    captured = capsys.readouterr()
    assert code == 0
    assert "distance:" not in captured.out
    assert "queries: 0" in captured.out


def test_distance_command(tmp_path, capsys):
    out = tmp_path / "final.thy"
    assert main(induce_argv("--truth", TRUTH, "--out", str(out))) == 0
    capsys.readouterr()

    code = main(["distance", "--theory", str(out), "--facts", FACTS, "--domain", DOM])
    captured = capsys.readouterr()
    assert code == 0
    assert "ncd=0.044444" in captured.out
    assert "len_a=151 len_b=151" in captured.out


def test_plan_command_from_example(capsys):
    code = main(["plan", "--facts", FACTS, "--domain", DOM])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out == PLAN_TEXT


def test_plan_command_from_theory(capsys):
    code = main(["plan", "--facts", FACTS, "--domain", DOM, "--theory", TRUTH])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out == PLAN_TEXT


@pytest.mark.parametrize(
    "argv, label, value",
    [
        (["pac", "space", "--t", "2", "--p", "2", "--m", "2", "--i", "1", "--j", "2"],
         "size:", 64.0),
        (["pac", "samples", "--epsilon", "0.1", "--delta", "0.01",
          "--d", "2", "--L", "3", "--h0", "10", "--m", "5"],
         "examples:", 272.708769384),
        (["pac", "step", "--d-prev", "0.2", "--d-cur", "0.35",
          "--universe", "2", "--t", "3", "--q", "2"],
         "upper:", 6.0),
        (["pac", "advice", "--n-star", "100", "--observed", "10",
          "--iterations", "3"],
         "examples_per_query:", 30.0),
    ],
)
def test_pac_commands(capsys, argv, label, value):
    assert main(argv) == 0
    captured = capsys.readouterr()
    line = next(l for l in captured.out.splitlines() if l.startswith(label))
    assert float(line.split()[-1]) == pytest.approx(value, abs=1e-6)


def test_pac_step_lower_bound(capsys):
    main(["pac", "step", "--d-prev", "0.2", "--d-cur", "0.35",
          "--universe", "2", "--t", "3", "--q", "2"])
    captured = capsys.readouterr()
    line = next(l for l in captured.out.splitlines() if l.startswith("lower:"))
    assert float(line.split()[-1]) == pytest.approx(0.15, abs=1e-9)


def test_eval_command_accepts_files_and_directories(tmp_path, capsys):
    pos_dir = tmp_path / "pos"
    pos_dir.mkdir()
    source = Path(FACTS).read_text()
    (pos_dir / "a.facts").write_text(source)
    (pos_dir / "b.facts").write_text(source)
    # dropping the alignment fact breaks coverage, making a clean negative
    neg = tmp_path / "neg.facts"
    neg.write_text(source.replace('SpRel(b, a, "NWTop").\n', ""))

    code = main(["eval", "--theory", TRUTH, "--pos", str(pos_dir), "--neg", str(neg)])
    captured = capsys.readouterr()
    assert code == 0
    assert "positives: 2  negatives: 1" in captured.out
    assert "precision: 1.0000" in captured.out


def test_benchmark_small_grid(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    code = main([
        "benchmark",
        "--concepts", "UprightL",
        "--sizes", "1",
        "--seeds", "1",
        "--arms", "guided,ilp",
        "--iterations", "4",
        "--out", str(out),
    ])
    captured = capsys.readouterr()
    assert code == 0
    assert "wrote 2 rows" in captured.out
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == list(CSV_COLUMNS)
    assert len(rows) == 3
    assert "mean precision by arm and training size:" in captured.out
    guided_line = next(l for l in captured.out.splitlines() if "guided" in l)
    assert "n=1:1.000" in guided_line


def test_serve_parser_wiring():
    args = build_parser().parse_args(
        ["serve", "--facts", "f", "--domain", "d", "--constraints", "c"]
    )
    assert args.host == "127.0.0.1"
    assert args.port == 8765
    assert args.ui is None
    assert args.fn.__name__ == "_cmd_serve"


def test_missing_subcommand_exits():
    with pytest.raises(SystemExit):
        main([])

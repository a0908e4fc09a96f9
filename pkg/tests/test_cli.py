import io
import os
import subprocess
import sys

import pytest

from ltlfsynth.cli import main
from ltlfsynth.spec import load_spec

PART = ".inputs: x\n.outputs: y\n"


@pytest.fixture
def write_spec(tmp_path):
    def _write(formula, part=PART, name="s"):
        f, p = tmp_path / f"{name}.ltlf", tmp_path / f"{name}.part"
        f.write_text(formula + "\n")
        p.write_text(part)
        return str(f), str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


@pytest.mark.parametrize("formula, verdict, provenance, code", [
    ("y", "REALIZABLE", "full", 0),
    ("x", "UNREALIZABLE", "conjunct:1", 1),
    ("F x", "UNREALIZABLE", "conjunct:1", 1),
    ("G(x -> y)", "REALIZABLE", "full", 0),
    ("F y && G !y", "UNREALIZABLE", "composed:2", 1),
    ("F x && G y", "UNREALIZABLE", "conjunct:1", 1),
])
def test_synth_fixtures(capsys, write_spec, formula, verdict, provenance, code):
    got, lines, _ = run(capsys, "synth", *write_spec(formula))
    assert got == code
    assert lines[:2] == [verdict, f"provenance={provenance}"]


@pytest.mark.parametrize("mode", ["individual", "monolithic"])
def test_modes(capsys, write_spec, mode):
    code, lines, _ = run(capsys, "synth", *write_spec("F y && G(x -> y)"), "--mode", mode,
                         "--verify", "--order", "size-asc")
    assert code == 0 and lines[0] == "REALIZABLE"


def test_stats_line(capsys, write_spec):
    code, lines, _ = run(capsys, "synth", *write_spec("F y"), "--stats")
    assert len(lines) == 3
    fields = dict(kv.split("=", 1) for kv in lines[2].split())
    assert fields["realizable"] == "1" and fields["mode"] == "incremental"


def test_exports(capsys, write_spec, tmp_path):
    s, d = tmp_path / "s.dot", tmp_path / "d.dot"
    code, _, _ = run(capsys, "synth", *write_spec("G(x -> y)"), "--dot-strategy", str(s),
                     "--dot-dfa", str(d), "--no-minimize", "--skip-precheck")
    assert code == 0
    assert s.read_text().startswith("digraph strategy")
    assert d.read_text().startswith("digraph dfa")


@pytest.mark.parametrize("case", ["missing_part", "parse_error", "undeclared", "guard"])
def test_errors_exit_2(capsys, write_spec, tmp_path, case):
    f, p = write_spec("F y && X X y")
    argv = {
        "missing_part": ["synth", f, str(tmp_path / "nope.part")],
        "parse_error": ["synth", write_spec("F (y", name="bad")[0], p],
        "undeclared": ["synth", write_spec("F z", name="z")[0], p],
        "guard": ["synth", f, p, "--max-states", "2"],
    }[case]
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("ltlfsynth: error:")


def test_bad_flag_exit_2(capsys, write_spec):
    with pytest.raises(SystemExit) as exc:
        main(["synth", *write_spec("y"), "--mode", "fastest"])
    assert exc.value.code == 2


def test_play_halts(capsys, write_spec, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("\n"))
    code, lines, _ = run(capsys, "play", *write_spec("F y"))
    assert code == 0
    assert lines[2] == "agent: y"
    assert lines[-1].endswith("HALT: goal reached after 1 round(s)")


def test_play_reprompts_and_quits(capsys, write_spec, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("bogus\nquit\n"))
    code, lines, _ = run(capsys, "play", *write_spec("G(x -> N y) && F y"))
    assert code == 0
    assert any("unknown input proposition 'bogus'" in ln for ln in lines)
    assert lines[-1].endswith("bye")


def test_play_refuses_unrealizable(capsys, write_spec, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(""))
    code, lines, _ = run(capsys, "play", *write_spec("F x"))
    assert code == 1 and "UNREALIZABLE" in lines[0]


def test_gen_deterministic(capsys):
    argv = ["gen", "--seed", "1", "--conjuncts", "3", "--size", "5"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_gen_parses_back(capsys, tmp_path):
    prefix = str(tmp_path / "r")
    assert main(["gen", "--seed", "5", "--inputs", "1", "--outputs", "2", "-o", prefix]) == 0
    spec = load_spec(prefix + ".ltlf", prefix + ".part")
    assert spec.inputs == ("i0",) and spec.outputs == ("o0", "o1")
    assert main(["synth", prefix + ".ltlf", prefix + ".part"]) in (0, 1)


def test_gen_rejects_negative_inputs(capsys):
    assert main(["gen", "--seed", "1", "--inputs", "-1"]) == 2


def test_module_entry_point(write_spec):
    proc = subprocess.run([sys.executable, "-m", "ltlfsynth", "synth", *write_spec("y")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("REALIZABLE\n")


def test_gen_identical_across_processes():
    outs = set()
    for hash_seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        proc = subprocess.run([sys.executable, "-m", "ltlfsynth", "gen", "--seed", "1"],
                              capture_output=True, env=env)
        outs.add(proc.stdout)
    assert len(outs) == 1

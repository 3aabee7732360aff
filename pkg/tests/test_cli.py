import json
import subprocess
import sys

import mido
import pytest

from qsonify.cli import main
from qsonify.sonify import melodic_interval_profile

from .smfreader import notes, read_smf

C_HARMONIC_MINOR_PCS = {0, 2, 3, 5, 7, 8, 11}


def run(*argv):
    return main([str(a) for a in argv])


def test_walk_classical(tmp_path, capsys):
    prefix = tmp_path / "w"
    assert run("walk", "--mode", "classical", "--steps", 10, "--seed", 1, "--out-prefix", prefix) == 0
    doc = json.loads((tmp_path / "w.json").read_text())
    assert len(doc["positions"]) == 10
    assert set(melodic_interval_profile([7, *doc["positions"]])) <= {1, -1}
    assert len((tmp_path / "w.csv").read_text().splitlines()) == 11
    out = capsys.readouterr().out
    assert "effective config" in out and '"seed": 1' in out


def test_walk_quantum_one_step(tmp_path):
    assert run("walk", "--mode", "quantum", "--steps", 1, "--seed", 7, "--out-prefix", tmp_path / "q") == 0
    doc = json.loads((tmp_path / "q.json").read_text())
    assert doc["positions"][0] in (6, 8)


def test_walk_start_out_of_range(tmp_path, capsys):
    assert run("walk", "--start", 99, "--out-prefix", tmp_path / "x") != 0
    err = capsys.readouterr().err
    assert err.startswith("qsonify: error:") and "start" in err
    assert len(err.strip().splitlines()) == 1
    assert not (tmp_path / "x.csv").exists()


def test_grover_defaults(tmp_path):
    assert run("grover", "--seed", 2, "--out-prefix", tmp_path / "g") == 0
    lines = (tmp_path / "g.csv").read_text().splitlines()
    assert len(lines) == 12
    for line in lines[1:]:
        assert sum(float(x) for x in line.split(",")[1:]) == pytest.approx(1.0, abs=0.01 * 8)
    for name in ("g_exact.csv", "g_hist.csv", "g.json"):
        assert (tmp_path / name).exists()


def test_grover_many_shots(tmp_path):
    assert run("grover", "--shots", 100_000, "--seed", 3, "--out-prefix", tmp_path / "g") == 0
    doc = json.loads((tmp_path / "g.json").read_text())
    assert abs(doc["proportions"][10][6] - 0.78125) <= 0.01


def test_grover_marked_out_of_range(tmp_path, capsys):
    assert run("grover", "--marked", 8, "--out-prefix", tmp_path / "g") != 0
    assert "marked" in capsys.readouterr().err


def test_sonify_stage11_sample(tmp_path, capsys):
    src = tmp_path / "stage11.txt"
    src.write_text("6\n6\n3\n5\n6\n6\n6\n6\n6\n6\n")
    out = tmp_path / "s.mid"
    assert run("sonify", "--in", src, "--mode", "raw", "--transpose", 12, "--out", out) == 0
    _, events = read_smf(out.read_bytes())
    pitches = [n[1] for n in notes(events)]
    assert pitches == [18, 18, 15, 17, 18, 18, 18, 18, 18, 18]
    assert "10 notes, pitch range 15-18" in capsys.readouterr().out


def test_sonify_text_defaults_to_octave_up(tmp_path):
    src = tmp_path / "d.txt"
    src.write_text("0 7\n")
    out = tmp_path / "d.mid"
    assert run("sonify", "--in", src, "--out", out) == 0
    assert [n[1] for n in notes(read_smf(out.read_bytes())[1])] == [12, 19]


def test_sonify_quantized_walk_trace(tmp_path):
    run("walk", "--steps", 300, "--seed", 4, "--out-prefix", tmp_path / "w")
    out = tmp_path / "w.mid"
    assert run("sonify", "--in", tmp_path / "w.json", "--mode", "quantized", "--out", out) == 0
    mid = mido.MidiFile(out)
    pitches = [m.note for m in mid.tracks[0] if m.type == "note_on"]
    assert len(pitches) == 300
    assert {p % 12 for p in pitches} <= C_HARMONIC_MINOR_PCS


def test_sonify_raw_walk_trace_three_octaves(tmp_path):
    run("walk", "--steps", 50, "--seed", 4, "--out-prefix", tmp_path / "w")
    out = tmp_path / "w.mid"
    assert run("sonify", "--in", tmp_path / "w.json", "--out", out) == 0
    positions = json.loads((tmp_path / "w.json").read_text())["positions"]
    assert [n[1] for n in notes(read_smf(out.read_bytes())[1])] == [p + 36 for p in positions]


def test_sonify_zero_duration(tmp_path, capsys):
    src = tmp_path / "d.txt"
    src.write_text("1\n")
    assert run("sonify", "--in", src, "--dur-ms", 0, "--out", tmp_path / "d.mid") != 0
    assert "duration" in capsys.readouterr().err
    assert not (tmp_path / "d.mid").exists()


def test_sonify_unreadable_input(tmp_path, capsys):
    assert run("sonify", "--in", tmp_path / "missing.txt", "--out", tmp_path / "d.mid") != 0
    assert capsys.readouterr().err.startswith("qsonify: error:")


def test_sonify_pitch_overflow(tmp_path, capsys):
    src = tmp_path / "d.txt"
    src.write_text("100\n")
    assert run("sonify", "--in", src, "--transpose", 36, "--out", tmp_path / "d.mid") != 0
    assert "outside 0-127" in capsys.readouterr().err


def _read_all(tmp_path, prefix):
    return {p.name: p.read_bytes() for p in sorted(tmp_path.glob(f"{prefix}*"))}


def test_pipeline_grover_byte_identical(tmp_path):
    args = ("pipeline", "--algorithm", "grover", "--seed", 5)
    assert run(*args, "--out-prefix", tmp_path / "a" / "g") == 0
    assert run(*args, "--out-prefix", tmp_path / "b" / "g") == 0
    first = _read_all(tmp_path / "a", "g")
    second = _read_all(tmp_path / "b", "g")
    assert set(first) == {"g.csv", "g.json", "g.mid", "g_exact.csv", "g_hist.csv"}
    assert first == second


def test_pipeline_walk_note_count(tmp_path):
    prefix = tmp_path / "w"
    assert run("pipeline", "--algorithm", "walk", "--mode", "quantum", "--steps", 100,
               "--seed", 1, "--out-prefix", prefix) == 0
    assert len(mido.MidiFile(tmp_path / "w.mid").tracks[0]) - 2 == 200
    pitches = [n[1] for n in notes(read_smf((tmp_path / "w.mid").read_bytes())[1])]
    assert {p % 12 for p in pitches} <= C_HARMONIC_MINOR_PCS


def test_pipeline_requires_algorithm(capsys):
    with pytest.raises(SystemExit) as exc:
        run("pipeline", "--seed", 1)
    assert exc.value.code != 0
    assert "usage" in capsys.readouterr().err


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# walk defaults\nmode = classical\nsteps = 25\nseed = 3\n")
    assert run("walk", "--config", cfg, "--steps", 12, "--out-prefix", tmp_path / "w") == 0
    doc = json.loads((tmp_path / "w.json").read_text())
    assert doc["metadata"]["config"] == {"steps": 12, "mode": "classical", "n_sites": 14, "start": 7, "seed": 3}


def test_config_file_satisfies_required(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"algorithm = grover\nseed = 2\nout-prefix = {tmp_path / 'p'}\n")
    assert run("pipeline", "--config", cfg) == 0
    assert (tmp_path / "p.mid").exists()


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n")
    assert run("walk", "--config", cfg) != 0
    assert "unknown keys colour" in capsys.readouterr().err


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("QSONIFY_SEED", "41")
    assert run("walk", "--steps", 3, "--out-prefix", tmp_path / "w") == 0
    assert json.loads((tmp_path / "w.json").read_text())["metadata"]["seed"] == 41


def test_plot_flag(tmp_path):
    assert run("grover", "--seed", 1, "--plot", "--out-prefix", tmp_path / "g") == 0
    for name in ("g_stages.png", "g_stage1.png", "g_stage11.png"):
        assert (tmp_path / name).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert run("walk", "--steps", 40, "--plot", "--out-prefix", tmp_path / "w") == 0
    assert (tmp_path / "w.png").exists()


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qsonify", "walk", "--steps", "2", "--out-prefix",
                           str(tmp_path / "w")], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "w.csv").exists()

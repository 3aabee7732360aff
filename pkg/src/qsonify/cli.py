"""Command line: simulate, export traces, and render them as MIDI.

Subcommands::

    qsonify walk      --mode quantum --steps 1000 --seed 1 --out-prefix out/walk
    qsonify grover    --marked 6 --shots 100 --seed 1 --out-prefix out/grover
    qsonify sonify    --in out/walk.json --mode quantized --out out/walk.mid
    qsonify pipeline  --algorithm grover --seed 5 --out-prefix out/grover

Any long option can also come from ``--config FILE`` (flat ``key = value``
lines, ``#`` comments); flags on the command line win.  ``QSONIFY_SEED``
sets the default seed.
"""

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__, grover, midiio, sonify, walk

SEED_ENV = "QSONIFY_SEED"
COMMAND_NAMES = ("walk", "grover", "sonify", "pipeline")


class CliError(Exception):
    pass


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{SEED_ENV}={raw!r} is not an integer") from None


def read_config_file(path):
    """Flat ``key = value`` file; keys use option names with ``-`` or ``_``."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise CliError(f"cannot read config file {path}: {e.strerror}") from None
    for lineno, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _add_output(p, prefix):
    p.add_argument("--out-prefix", default=prefix, help="output path prefix (default: %(default)s)")
    p.add_argument("--full-precision", action="store_true",
                   help="write CSV proportions at full float precision instead of 2 decimals")
    p.add_argument("--plot", action="store_true", help="also render PNG figures next to the data files")


def _add_walk(p, mode_flag="--mode"):
    p.add_argument(mode_flag, dest="walk_mode", choices=walk.MODES, default="quantum",
                   help="walk dynamics (default: %(default)s)")
    p.add_argument("--steps", type=int, default=1000, help="number of steps (default: %(default)s)")
    p.add_argument("--sites", type=int, default=14, help="ring size (default: %(default)s)")
    p.add_argument("--start", type=int, default=7, help="starting site (default: %(default)s)")


def _add_grover(p):
    p.add_argument("--marked", type=int, default=6, help="marked outcome 0-7, read as q3q2q1 (default: %(default)s)")
    p.add_argument("--iterations", type=int, default=1, help="oracle+diffuser rounds (default: %(default)s)")
    p.add_argument("--shots", type=int, default=100, help="measurements per stage (default: %(default)s)")


def _add_sonify(p, mode_flag="--mode"):
    p.add_argument(mode_flag, dest="sonify_mode", choices=("raw", "quantized"), default=None,
                   help="raw MIDI numbers or scale-quantized (default: raw; pipeline walk: quantized)")
    p.add_argument("--scale", choices=sorted(sonify.SCALES), default="c-harmonic-minor",
                   help="scale for quantized mode (default: %(default)s)")
    p.add_argument("--transpose", type=int, default=None,
                   help="semitone shift; default +12 for Grover data, +36 for walk data in raw mode, 0 when quantized")
    p.add_argument("--tempo", type=float, default=120.0, help="beats per minute, one note per beat (default: %(default)s)")
    p.add_argument("--dur-ms", type=float, default=250.0, help="fixed note length in ms (default: %(default)s)")
    p.add_argument("--velocity", type=int, default=100, help="note-on velocity (default: %(default)s)")
    p.add_argument("--tpq", type=int, default=480, help="ticks per quarter note (default: %(default)s)")


def build_parser():
    parser = argparse.ArgumentParser(prog="qsonify", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value file supplying defaults for any option")
    common.add_argument("--seed", type=int, default=None, help=f"RNG seed (default: ${SEED_ENV} or 0)")

    p = sub.add_parser("walk", parents=[common], help="simulate a coined quantum or classical walk")
    _add_walk(p)
    _add_output(p, "walk")

    p = sub.add_parser("grover", parents=[common], help="sample every stage of the 3-qubit Grover circuit")
    _add_grover(p)
    _add_output(p, "grover")

    p = sub.add_parser("sonify", parents=[common], help="render a number file or trace JSON as a MIDI file")
    p.add_argument("--in", dest="input", required=True, help="text file of integers or a trace .json")
    p.add_argument("--source", choices=sonify.SOURCES, default=None,
                   help="data origin for default transposition (JSON traces carry it; text defaults to grover)")
    _add_sonify(p)
    p.add_argument("--out", default="song.mid", help="output .mid path (default: %(default)s)")

    p = sub.add_parser("pipeline", parents=[common], help="simulate, export and sonify in one run")
    p.add_argument("--algorithm", choices=("walk", "grover"), required=True)
    _add_walk(p)
    _add_grover(p)
    _add_sonify(p, mode_flag="--sonify-mode")
    _add_output(p, None)
    return parser


def _config_path(argv):
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _apply_config(parser, command, path):
    cfg = read_config_file(path)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[command]
    by_key = {}
    for a in sub._actions:
        if a.dest in ("help", "config"):
            continue
        by_key[a.dest] = a
        for opt in a.option_strings:
            by_key[opt.lstrip("-").replace("-", "_")] = a
    unknown = sorted(set(cfg) - set(by_key))
    if unknown:
        raise CliError(f"{path}: unknown keys {', '.join(unknown)}")
    defaults = {}
    for key, value in cfg.items():
        a = by_key[key]
        if isinstance(a, argparse._StoreTrueAction):
            defaults[a.dest] = value.lower() in ("1", "true", "yes", "on")
            continue
        try:
            value = a.type(value) if a.type else value
        except ValueError:
            raise CliError(f"{path}: bad value for {key}: {value!r}") from None
        if a.choices is not None and value not in a.choices:
            raise CliError(f"{path}: {key} must be one of {', '.join(map(str, a.choices))}")
        defaults[a.dest] = value
        # a required option may be satisfied by the file
        a.required = False
    sub.set_defaults(**defaults)


def parse_args(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    path = _config_path(argv)
    command = next((t for t in argv if t in COMMAND_NAMES), None)
    if path and command:
        _apply_config(parser, command, path)
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = _default_seed()
    return args


def _echo(command, **sections):
    print(f"qsonify {command}: effective config " + json.dumps(sections, sort_keys=True))


def _write(path, data):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, bytes):
        path.write_bytes(data)
    else:
        path.write_text(data)
    print(f"wrote {path}")
    return path


def _precision(args):
    return None if args.full_precision else 2


def _walk_config(args):
    return walk.WalkConfig(steps=args.steps, mode=args.walk_mode, n_sites=args.sites,
                           start=args.start, seed=args.seed)


def _grover_config(args):
    return grover.GroverConfig(marked=args.marked, iterations=args.iterations,
                               shots_per_stage=args.shots, seed=args.seed)


def export_walk(trace, prefix, precision=2, plot=False):
    paths = [
        _write(f"{prefix}.csv", midiio.write_csv(trace, precision)),
        _write(f"{prefix}.json", midiio.write_json(trace)),
    ]
    if plot:
        from . import plotting
        Path(prefix).parent.mkdir(parents=True, exist_ok=True)
        paths.append(plotting.plot_walk(trace, f"{prefix}.png"))
        print(f"wrote {prefix}.png")
    return paths


def export_grover(table, prefix, precision=2, plot=False):
    paths = [
        _write(f"{prefix}.csv", midiio.write_csv(table, precision)),
        _write(f"{prefix}_exact.csv", midiio.write_exact_csv(table)),
        _write(f"{prefix}_hist.csv", midiio.write_histogram_csv(table, precision)),
        _write(f"{prefix}.json", midiio.write_json(table)),
    ]
    if plot:
        from . import plotting
        Path(prefix).parent.mkdir(parents=True, exist_ok=True)
        paths.append(plotting.plot_trace_table(table, f"{prefix}_stages.png"))
        print(f"wrote {prefix}_stages.png")
        for k in (1, table.samples.shape[0]):
            paths.append(plotting.plot_stage_histogram(table, k, f"{prefix}_stage{k}.png"))
            print(f"wrote {prefix}_stage{k}.png")
    return paths


def load_values(path):
    """Values and source kind from a trace JSON or a plain number file."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        try:
            trace = midiio.read_json(path.read_text())
        except (KeyError, TypeError, json.JSONDecodeError) as e:
            raise CliError(f"{path}: not a qsonify trace ({e})") from None
        if isinstance(trace, walk.WalkTrace):
            return list(trace.positions), "walk"
        return trace.samples.ravel().tolist(), "grover"
    return midiio.read_numbers(path).values, None


def render_midi(values, source, args):
    mode = args.sonify_mode or "raw"
    transpose = args.transpose if args.transpose is not None else sonify.default_transpose(source, mode)
    cfg = sonify.SonifyConfig(mode=mode, transpose_semitones=transpose, tempo_bpm=args.tempo,
                              note_duration_ms=args.dur_ms, velocity=args.velocity,
                              ticks_per_quarter=args.tpq)
    events = sonify.to_note_events(values, cfg, sonify.SCALES[args.scale])
    doc = midiio.SmfDocument(events, cfg.ticks_per_quarter, cfg.tempo_bpm)
    return cfg, events, midiio.write_smf(doc)


def _summary(events, cfg):
    pitches = [e.pitch for e in events]
    end = events[-1].onset + events[-1].duration
    seconds = end / cfg.ticks_per_quarter * 60.0 / cfg.tempo_bpm
    print(f"{len(events)} notes, pitch range {min(pitches)}-{max(pitches)}, duration {seconds:.2f} s")


def cmd_walk(args):
    cfg = _walk_config(args)
    _echo("walk", walk=asdict(cfg))
    trace = walk.run_walk(cfg)
    return export_walk(trace, args.out_prefix, _precision(args), args.plot)


def cmd_grover(args):
    cfg = _grover_config(args)
    _echo("grover", grover=asdict(cfg))
    table = grover.full_trace(cfg)
    return export_grover(table, args.out_prefix, _precision(args), args.plot)


def cmd_sonify(args):
    values, source = load_values(args.input)
    source = args.source or source or "grover"
    mode = args.sonify_mode or "raw"
    _echo("sonify", input=str(args.input), source=source, mode=mode, scale=args.scale,
          transpose=args.transpose, tempo=args.tempo, dur_ms=args.dur_ms,
          velocity=args.velocity, tpq=args.tpq, seed=args.seed)
    cfg, events, data = render_midi(values, source, args)
    path = _write(args.out, data)
    _summary(events, cfg)
    return [path]


def cmd_pipeline(args):
    prefix = args.out_prefix or args.algorithm
    if args.sonify_mode is None:
        args.sonify_mode = "quantized" if args.algorithm == "walk" else "raw"
    if args.algorithm == "walk":
        cfg = _walk_config(args)
        _echo("pipeline", walk=asdict(cfg), sonify_mode=args.sonify_mode, transpose=args.transpose,
              tempo=args.tempo, dur_ms=args.dur_ms)
        trace = walk.run_walk(cfg)
        paths = export_walk(trace, prefix, _precision(args), args.plot)
        values = trace.positions
    else:
        cfg = _grover_config(args)
        _echo("pipeline", grover=asdict(cfg), sonify_mode=args.sonify_mode, transpose=args.transpose,
              tempo=args.tempo, dur_ms=args.dur_ms)
        table = grover.full_trace(cfg)
        paths = export_grover(table, prefix, _precision(args), args.plot)
        values = table.samples.ravel().tolist()
    scfg, events, data = render_midi(values, args.algorithm, args)
    paths.append(_write(f"{prefix}.mid", data))
    _summary(events, scfg)
    return paths


COMMANDS = {"walk": cmd_walk, "grover": cmd_grover, "sonify": cmd_sonify, "pipeline": cmd_pipeline}


def main(argv=None):
    try:
        args = parse_args(argv)
        COMMANDS[args.command](args)
    except (CliError, ValueError, OSError) as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"qsonify: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

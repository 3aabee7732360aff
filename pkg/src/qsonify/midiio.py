"""File formats: Standard MIDI (format 0), CSV, JSON and plain number lists."""

import csv
import io
import json
import struct
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .grover import LABELS, GroverConfig, TraceTable
from .sonify import NoteEvent
from .statevec import GENERATOR_ID
from .walk import WalkConfig, WalkTrace

FORMAT_VERSION = 1


class NumberFileError(ValueError):
    pass


@dataclass
class SmfDocument:
    events: list
    ticks_per_quarter: int = 480
    tempo_bpm: float = 120.0
    channel: int = 0


@dataclass
class NumberFile:
    values: list
    source_path: str = field(default="")


def var_len(value):
    """MIDI variable-length quantity: 7 bits per byte, MSB set on all but the last."""
    if not 0 <= value <= 0x0FFFFFFF:
        raise ValueError(f"delta time {value} does not fit a variable-length quantity")
    out = [value & 0x7F]
    value >>= 7
    while value:
        out.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(out))


def tempo_microseconds(bpm):
    return round(60_000_000 / bpm)


def _track_events(doc):
    # (tick, order, seq, payload); note-offs sort ahead of note-ons on the same tick
    status_on = 0x90 | doc.channel
    status_off = 0x80 | doc.channel
    timed = []
    for seq, ev in enumerate(doc.events):
        timed.append((ev.onset, 1, seq, bytes((status_on, ev.pitch, ev.velocity))))
        timed.append((ev.onset + ev.duration, 0, seq, bytes((status_off, ev.pitch, 0))))
    timed.sort()
    return timed


def write_smf(doc):
    """Serialize ``doc`` as a single-track format-0 SMF without running status."""
    if not 0 <= doc.channel <= 15:
        raise ValueError(f"channel must be in 0-15, got {doc.channel}")
    if not 1 <= doc.ticks_per_quarter < 0x8000:
        raise ValueError(f"ticks per quarter must be in [1, 32767], got {doc.ticks_per_quarter}")
    usec = tempo_microseconds(doc.tempo_bpm)
    if not 1 <= usec < 1 << 24:
        raise ValueError(f"tempo {doc.tempo_bpm} BPM is not representable")
    for prev, ev in zip(doc.events, doc.events[1:]):
        if ev.onset < prev.onset:
            raise ValueError(f"events are not sorted by onset ({prev.onset} then {ev.onset})")
    for ev in doc.events:
        NoteEvent(ev.pitch, ev.velocity, ev.onset, ev.duration)

    track = bytearray()
    track += var_len(0) + b"\xff\x51\x03" + usec.to_bytes(3, "big")
    now = 0
    for tick, _, _, payload in _track_events(doc):
        track += var_len(tick - now) + payload
        now = tick
    track += var_len(0) + b"\xff\x2f\x00"

    header = b"MThd" + struct.pack(">IHHH", 6, 0, 1, doc.ticks_per_quarter)
    return header + b"MTrk" + struct.pack(">I", len(track)) + bytes(track)


def _fmt(x, precision):
    return repr(float(x)) if precision is None else f"{x:.{precision}f}"


def write_csv(table, precision=2):
    """CSV text for a Grover trace table or a walk trace.

    Grover: ``stage`` then one column per outcome label, tallied proportions.
    Walk: ``step, position`` then the exact site distribution for that step.
    ``precision=None`` writes full float precision.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(table, TraceTable):
        w.writerow(["stage", *LABELS])
        for k, row in enumerate(table.proportions, start=1):
            w.writerow([k, *(_fmt(x, precision) for x in row)])
    elif isinstance(table, WalkTrace):
        n = table.config.n_sites
        has_dist = table.distributions is not None
        w.writerow(["step", "position", *(f"p{j}" for j in range(n) if has_dist)])
        for i, pos in enumerate(table.positions):
            dist = [_fmt(x, precision) for x in table.distributions[i]] if has_dist else []
            w.writerow([i + 1, pos, *dist])
    else:
        raise TypeError(f"cannot write {type(table).__name__} as CSV")
    return buf.getvalue()


def write_exact_csv(table, precision=None):
    """Exact per-stage Born distributions of a Grover trace."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["stage", *LABELS])
    for k, row in enumerate(table.exact, start=1):
        w.writerow([k, *(_fmt(x, precision) for x in row)])
    return buf.getvalue()


def write_histogram_csv(table, precision=2):
    """Long-form histogram data: one row per (stage, outcome)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["stage", "outcome", "label", "count", "proportion", "exact"])
    counts = table.counts
    for k in range(counts.shape[0]):
        for v in range(len(LABELS)):
            w.writerow([k + 1, v, LABELS[v], int(counts[k, v]),
                        _fmt(counts[k, v] / table.shots, precision), _fmt(table.exact[k, v], None)])
    return buf.getvalue()


def metadata(config, **extra):
    meta = {
        "package": f"qsonify {__version__}",
        "format_version": FORMAT_VERSION,
        "generator": GENERATOR_ID,
        "seed": config.seed,
        "config": asdict(config),
    }
    meta.update(extra)
    return meta


def to_dict(obj):
    if isinstance(obj, TraceTable):
        return {
            "kind": "grover",
            "labels": list(LABELS),
            "samples": obj.samples.tolist(),
            "counts": obj.counts.tolist(),
            "proportions": obj.proportions.tolist(),
            "exact": obj.exact.tolist(),
        }
    if isinstance(obj, WalkTrace):
        return {
            "kind": "walk",
            "positions": list(obj.positions),
            "distributions": None if obj.distributions is None else obj.distributions.tolist(),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_json(obj, meta=None):
    """JSON text for a trace; ``meta`` defaults to the trace's own config and seed."""
    doc = {"metadata": meta if meta is not None else metadata(obj.config)}
    doc.update(to_dict(obj))
    # one top-level key per line keeps large sample arrays compact
    body = ",\n".join(f" {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"


def read_json(text):
    """Inverse of :func:`write_json`; returns a ``WalkTrace`` or ``TraceTable``."""
    doc = json.loads(text)
    cfg = doc["metadata"]["config"]
    kind = doc.get("kind")
    if kind == "walk":
        dists = doc["distributions"]
        return WalkTrace(doc["positions"], WalkConfig(**cfg),
                         None if dists is None else np.array(dists, dtype=float))
    if kind == "grover":
        return TraceTable(np.array(doc["samples"], dtype=np.int64),
                          np.array(doc["exact"], dtype=float), GroverConfig(**cfg))
    raise ValueError(f"unknown trace kind {kind!r}")


def parse_numbers(text, source_path=""):
    """Whitespace-separated integers, any number per line; blank lines skipped."""
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split():
            try:
                values.append(int(tok))
            except ValueError:
                raise NumberFileError(f"{source_path or '<text>'}:{lineno}: not an integer: {tok!r}") from None
    if not values:
        raise NumberFileError(f"{source_path or '<text>'}: no numbers found")
    return NumberFile(values, source_path)


def read_numbers(path):
    path = Path(path)
    return parse_numbers(path.read_text(), str(path))


def write_numbers(values):
    return "".join(f"{v}\n" for v in values)

"""Quantum walk and Grover search simulation, sonified as MIDI."""

__version__ = "0.1.0"

from .grover import GroverCircuit, GroverConfig, TraceTable, build_circuit, full_trace  # noqa: E402
from .sonify import C_HARMONIC_MINOR, NoteEvent, ScaleMap, SonifyConfig, quantize, to_note_events  # noqa: E402
from .statevec import SeededSampler  # noqa: E402
from .walk import WalkConfig, WalkTrace, run_walk  # noqa: E402

__all__ = [
    "C_HARMONIC_MINOR",
    "GroverCircuit",
    "GroverConfig",
    "NoteEvent",
    "ScaleMap",
    "SeededSampler",
    "SonifyConfig",
    "TraceTable",
    "WalkConfig",
    "WalkTrace",
    "build_circuit",
    "full_trace",
    "quantize",
    "run_walk",
    "to_note_events",
]

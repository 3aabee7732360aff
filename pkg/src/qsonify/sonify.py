"""Turn integer sequences into monophonic note events."""

from dataclasses import dataclass

SOURCES = ("walk", "grover")


@dataclass(frozen=True)
class ScaleMap:
    """A scale laid out over a fixed number of octaves above ``tonic_pitch``.

    Input values index scale degrees: ``value // len(degree_offsets)`` picks
    the octave and ``value % len(degree_offsets)`` the degree.
    """

    name: str
    tonic_pitch: int
    degree_offsets: tuple
    octaves: int = 2

    def __post_init__(self):
        offs = self.degree_offsets
        if not offs or any(not 0 <= o <= 11 for o in offs):
            raise ValueError(f"degree offsets must lie in [0, 11], got {offs}")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise ValueError(f"degree offsets must be strictly increasing, got {offs}")
        if self.octaves < 1:
            raise ValueError(f"octaves must be >= 1, got {self.octaves}")

    @property
    def span(self):
        return self.octaves * len(self.degree_offsets)

    @property
    def pitch_classes(self):
        return frozenset((self.tonic_pitch + o) % 12 for o in self.degree_offsets)


# C D Eb F G Ab B from C2 over two octaves: sites 0..13 -> MIDI 36..59
C_HARMONIC_MINOR = ScaleMap("c-harmonic-minor", 36, (0, 2, 3, 5, 7, 8, 11))

SCALES = {C_HARMONIC_MINOR.name: C_HARMONIC_MINOR}


@dataclass(frozen=True)
class NoteEvent:
    pitch: int
    velocity: int
    onset: int
    duration: int

    def __post_init__(self):
        if not 0 <= self.pitch <= 127:
            raise ValueError(f"pitch {self.pitch} outside MIDI range 0-127")
        if not 1 <= self.velocity <= 127:
            raise ValueError(f"velocity {self.velocity} outside 1-127")
        if self.onset < 0:
            raise ValueError(f"onset must be >= 0, got {self.onset}")
        if self.duration <= 0:
            raise ValueError(f"duration must be > 0, got {self.duration}")


@dataclass(frozen=True)
class SonifyConfig:
    mode: str = "raw"
    transpose_semitones: int = 0
    tempo_bpm: float = 120.0
    note_duration_ms: float = 250.0
    velocity: int = 100
    ticks_per_quarter: int = 480

    def __post_init__(self):
        if self.mode not in ("raw", "quantized"):
            raise ValueError(f"mode must be 'raw' or 'quantized', got {self.mode!r}")
        if not self.tempo_bpm > 0:
            raise ValueError(f"tempo must be positive, got {self.tempo_bpm}")
        if not self.note_duration_ms > 0:
            raise ValueError(f"note duration must be positive, got {self.note_duration_ms} ms")
        if not 1 <= self.velocity <= 127:
            raise ValueError(f"velocity {self.velocity} outside 1-127")
        if not 1 <= self.ticks_per_quarter < 0x8000:
            raise ValueError(f"ticks per quarter must be in [1, 32767], got {self.ticks_per_quarter}")

    @property
    def duration_ticks(self):
        quarter_ms = 60_000.0 / self.tempo_bpm
        return max(1, round(self.note_duration_ms / quarter_ms * self.ticks_per_quarter))


def default_transpose(source, mode):
    """Octave shift that brings raw data into an audible register.

    Grover outcomes (0-7) go up one octave, walk sites (0-13) up three.
    Quantized output is already placed by the scale's tonic.
    """
    if source not in SOURCES:
        raise ValueError(f"source must be one of {SOURCES}, got {source!r}")
    if mode == "quantized":
        return 0
    return 12 if source == "grover" else 36


def raw_to_pitch(value, transpose_semitones=0):
    pitch = value + transpose_semitones
    if not 0 <= pitch <= 127:
        raise ValueError(f"value {value} transposed by {transpose_semitones} gives pitch {pitch}, outside 0-127")
    return pitch


def quantize(value, scale=C_HARMONIC_MINOR):
    if not 0 <= value < scale.span:
        raise ValueError(f"value {value} outside the {scale.span}-step span of scale {scale.name!r}")
    octave, degree = divmod(value, len(scale.degree_offsets))
    return scale.tonic_pitch + 12 * octave + scale.degree_offsets[degree]


def to_note_events(values, config, scale=None):
    """One note per quarter note, fixed duration and velocity."""
    values = list(values)
    if not values:
        raise ValueError("no values to sonify")
    if config.mode == "quantized":
        scale = scale or C_HARMONIC_MINOR
        pitches = [raw_to_pitch(quantize(v, scale), config.transpose_semitones) for v in values]
    else:
        pitches = [raw_to_pitch(v, config.transpose_semitones) for v in values]
    dur = config.duration_ticks
    tpq = config.ticks_per_quarter
    return [NoteEvent(p, config.velocity, i * tpq, dur) for i, p in enumerate(pitches)]


def melodic_interval_profile(values, n_sites=14):
    """Signed shortest ring distance between consecutive values."""
    values = list(values)
    if len(values) < 2:
        raise ValueError("need at least two values for an interval profile")
    half = n_sites // 2
    out = []
    for a, b in zip(values, values[1:]):
        d = (b - a) % n_sites
        if d > half:
            d -= n_sites
        out.append(d)
    return out

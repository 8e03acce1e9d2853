"""Ingestion of tabulated harmonic power spectra and export plumbing.

CSV format: one ``harmonic_index,power`` row per harmonic, 1-based indices,
optional header row, ``#`` comment lines allowed.  Harmonics missing from the
file below the largest listed index are read as zero power; nothing is padded
above it unless ``normalize`` is asked to.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .orders import FiniteRelation
from .timbre import TimbralVector

FIXTURE_NAMES = (
    "synthetic_clarinet",
    "synthetic_flute",
    "synthetic_horn",
    "synthetic_oboe",
    "synthetic_sax",
    "synthetic_trumpet",
)


class SpectrumFormatError(ValueError):
    """Raised for malformed spectrum files; message carries file and line."""


@dataclass(frozen=True, eq=False)
class RawSpectrum:
    """Unnormalised nonnegative powers in harmonic order, with provenance."""

    name: str
    powers: np.ndarray
    source_path: str

    def __post_init__(self) -> None:
        arr = np.array(self.powers, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("powers must be a nonempty 1-d vector")
        if bool((arr < 0).any()):
            raise ValueError("negative power in raw spectrum")
        arr.setflags(write=False)
        object.__setattr__(self, "powers", arr)


def load_spectrum(path: str | Path, name: str | None = None) -> RawSpectrum:
    """Parse a spectrum CSV; errors name the offending line."""
    path = Path(path)
    text = path.read_text()
    entries: dict[int, float] = {}
    header_allowed = True
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise SpectrumFormatError(f"{path}:{lineno}: expected 'index,power', got {line!r}")
        try:
            index = int(fields[0])
            power = float(fields[1])
        except ValueError:
            if header_allowed:
                header_allowed = False
                continue
            raise SpectrumFormatError(f"{path}:{lineno}: non-numeric field in {line!r}") from None
        header_allowed = False
        if index < 1:
            raise SpectrumFormatError(f"{path}:{lineno}: harmonic index must be >= 1")
        if index in entries:
            raise SpectrumFormatError(f"{path}:{lineno}: duplicate harmonic index {index}")
        if not np.isfinite(power) or power < 0:
            raise SpectrumFormatError(f"{path}:{lineno}: negative or non-finite power {fields[1]}")
        entries[index] = power
    if not entries:
        raise SpectrumFormatError(f"{path}: no spectrum rows found")
    top = max(entries)
    powers = np.zeros(top)
    for index, power in entries.items():
        powers[index - 1] = power
    return RawSpectrum(name if name is not None else path.stem, powers, str(path))


def normalize(raw: RawSpectrum, pad_to: int | None = None) -> TimbralVector:
    """Scale total power to one; optionally zero-pad the high-harmonic end."""
    total = float(raw.powers.sum())
    if total <= 0.0:
        raise ValueError(f"spectrum {raw.name!r} has zero total power")
    powers = raw.powers / total
    if pad_to is not None:
        if pad_to < powers.size:
            raise ValueError(f"pad_to {pad_to} below spectrum length {powers.size}")
        powers = np.concatenate([powers, np.zeros(pad_to - powers.size)])
    return TimbralVector(powers, raw.name)


def vector_to_json(vector: TimbralVector) -> dict:
    return {"name": vector.name, "power": [float(x) for x in vector.power]}


def vector_from_json(data: dict) -> TimbralVector:
    try:
        return TimbralVector(np.asarray(data["power"], dtype=float), data.get("name"))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed timbral vector JSON: {exc}") from exc


def export_dot(cover: FiniteRelation, names: Sequence[str]) -> str:
    """Render a cover relation as a DOT digraph.

    An edge u -> v records that v covers u, i.e. v is the brighter of the
    two.  Node and edge order is lexicographic, so output is byte-stable.
    """
    if len(names) != cover.size:
        raise ValueError("one name per relation element required")
    lines = ["digraph brightness {"]
    for name in sorted(names):
        lines.append(f'  "{name}";')
    edges = sorted((names[i], names[j]) for i, j in cover.pairs())
    for src, dst in edges:
        lines.append(f'  "{src}" -> "{dst}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def fixture_dir() -> Path:
    """Directory holding the bundled synthetic instrument spectra."""
    return Path(str(resources.files("qorder") / "fixtures"))


def load_fixture_collection(pad_to: int | None = None) -> list[TimbralVector]:
    """The six bundled synthetic spectra, normalised, sorted by name."""
    out = []
    for name in FIXTURE_NAMES:
        raw = load_spectrum(fixture_dir() / f"{name}.csv", name)
        out.append(normalize(raw, pad_to))
    return out

"""Pitch class sets in N-tone equal temperament and their transposition classes.

Sets live in Z_N as bitmasks.  A set class is a transposition orbit; its
canonical representative is the lexicographically least ascending member
sequence among the N transpositions, so nonempty representatives always start
at 0.  The subset order on classes ("some transposition embeds") is realised
as a dense relation so the generic order utilities apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from . import _kernels
from .orders import FiniteRelation, minimal_elements

MAX_EDO = 24


@dataclass(frozen=True)
class PitchClassSet:
    """A subset of Z_N; ``members`` is the sorted residue tuple."""

    edo: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.edo < 1:
            raise ValueError("edo must be at least 1")
        members = tuple(sorted(int(x) for x in self.members))
        if len(set(members)) != len(members):
            raise ValueError(f"duplicate pitch classes in {members}")
        for x in members:
            if not 0 <= x < self.edo:
                raise ValueError(f"pitch class {x} out of range for edo {self.edo}")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_mask(cls, edo: int, mask: int) -> "PitchClassSet":
        return cls(edo, tuple(i for i in range(edo) if (mask >> i) & 1))

    @property
    def mask(self) -> int:
        out = 0
        for x in self.members:
            out |= 1 << x
        return out

    @property
    def cardinality(self) -> int:
        return len(self.members)

    def transpose(self, t: int) -> "PitchClassSet":
        return PitchClassSet(self.edo, tuple((x + t) % self.edo for x in self.members))

    def __str__(self) -> str:
        return "{" + ",".join(str(x) for x in self.members) + "}"


@dataclass(frozen=True, order=True)
class SetClass:
    """A transposition orbit of pitch class sets, keyed by its canonical rep."""

    edo: int
    rep: PitchClassSet

    def __post_init__(self) -> None:
        if self.rep.edo != self.edo:
            raise ValueError("representative edo disagrees with class edo")

    @property
    def cardinality(self) -> int:
        return self.rep.cardinality

    @property
    def mask(self) -> int:
        return self.rep.mask

    def __str__(self) -> str:
        return str(self.rep)


def canonical_form(pcs: PitchClassSet) -> SetClass:
    """Set class of ``pcs``: equal outputs exactly for transpositionally related inputs."""
    best = pcs.members
    for t in range(1, pcs.edo):
        candidate = tuple(sorted((x + t) % pcs.edo for x in pcs.members))
        if candidate < best:
            best = candidate
    return SetClass(pcs.edo, PitchClassSet(pcs.edo, best))


def _class_from_mask(edo: int, mask: int) -> SetClass:
    return canonical_form(PitchClassSet.from_mask(edo, mask))


def burnside_count(edo: int) -> int:
    """Number of transposition orbits of subsets of Z_N, by orbit counting.

    Independent of the enumerator: (1/N) * sum over divisors d of
    phi(d) * 2^(N/d).
    """
    total = 0
    for d in range(1, edo + 1):
        if edo % d == 0:
            phi = sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)
            total += phi * (2 ** (edo // d))
    return total // edo


def enumerate_set_classes(edo: int, cap: int = MAX_EDO) -> list[SetClass]:
    """All set classes of Z_N, empty class included, sorted by representative."""
    if not 1 <= edo <= cap:
        raise ValueError(f"edo {edo} outside supported range 1..{cap}")
    canon = _kernels.canonical_masks(edo)
    orbit_masks = np.unique(canon)
    classes = [_class_from_mask(edo, int(m)) for m in orbit_masks]
    classes.sort(key=lambda c: c.rep.members)
    return classes


def class_leq(a: SetClass, b: SetClass) -> bool:
    """True when some transposition of ``a``'s representative is a subset of ``b``'s."""
    if a.edo != b.edo:
        raise ValueError(f"edo mismatch: {a.edo} vs {b.edo}")
    edo = a.edo
    full = (1 << edo) - 1
    am, bm = a.mask, b.mask
    for t in range(edo):
        rot = ((am << t) | (am >> (edo - t))) & full
        if rot & bm == rot:
            return True
    return False


def subset_order(classes: Sequence[SetClass]) -> FiniteRelation:
    """Dense subset order over a family of classes that share an edo."""
    if not classes:
        return FiniteRelation(0, np.zeros((0, 0), dtype=bool))
    edo = classes[0].edo
    for c in classes:
        if c.edo != edo:
            raise ValueError("all classes must share an edo")
    masks = np.array([c.mask for c in classes], dtype=np.int64)
    table = _kernels.subset_leq_matrix(masks, edo)
    return FiniteRelation(len(classes), table, tuple(str(c) for c in classes))


@dataclass(frozen=True)
class SpanProfile:
    """Cyclic step spans of a nonempty class: adjacent and next-but-one."""

    seconds: tuple[int, ...]
    thirds: tuple[int, ...]

    @property
    def min_third(self) -> int:
        return min(self.thirds)


def span_profile(pcs: PitchClassSet | SetClass) -> SpanProfile:
    """Adjacent-step and two-step spans of a set, walking the full octave once.

    For a single pitch class the lone step wraps the whole octave.  The
    profile of a :class:`SetClass` is taken on its canonical representative;
    other representatives give a cyclic rotation of the same profile.
    """
    source = pcs.rep if isinstance(pcs, SetClass) else pcs
    members = source.members
    n = len(members)
    if n == 0:
        raise ValueError("span profile of the empty set is undefined")
    edo = source.edo
    if n == 1:
        seconds: tuple[int, ...] = (edo,)
    else:
        steps = [members[i + 1] - members[i] for i in range(n - 1)]
        steps.append(members[0] + edo - members[-1])  # wrap past the octave
        seconds = tuple(steps)
    thirds = tuple(seconds[i] + seconds[(i + 1) % n] for i in range(n))
    return SpanProfile(seconds, thirds)


def span_limited_classes(edo: int, max_second: int) -> list[SetClass]:
    """Nonempty classes whose every adjacent step spans at most ``max_second``."""
    if not 1 <= max_second <= edo:
        raise ValueError(f"max_second {max_second} outside 1..{edo}")
    out = []
    for cls in enumerate_set_classes(edo):
        if cls.cardinality == 0:
            continue
        if max(span_profile(cls).seconds) <= max_second:
            out.append(cls)
    return out


def span_limited_minimal(edo: int, max_second: int) -> list[SetClass]:
    """Minimal classes of the subset order restricted to the bounded-step family.

    Computed through the generic order machinery (dense relation + minimal
    element scan), not through any structural shortcut.
    """
    members = span_limited_classes(edo, max_second)
    relation = subset_order(members)
    keep = minimal_elements(relation, range(len(members)))
    return [members[i] for i in sorted(keep)]


def thirds_criterion_holds(edo: int, max_second: int) -> bool:
    """Check that the minimal bounded-step classes are exactly those whose
    two-step spans all exceed the step bound."""
    family = span_limited_classes(edo, max_second)
    minimal = set(span_limited_minimal(edo, max_second))
    for cls in family:
        predicted = span_profile(cls).min_third >= max_second + 1
        if predicted != (cls in minimal):
            return False
    return True


# JSON wire format ------------------------------------------------------------


def class_to_json(cls: SetClass) -> dict:
    return {"edo": cls.edo, "members": list(cls.rep.members)}


def class_from_json(data: dict) -> SetClass:
    try:
        return canonical_form(PitchClassSet(int(data["edo"]), tuple(data["members"])))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed set class JSON: {exc}") from exc

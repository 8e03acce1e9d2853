"""Finite relations, permutation group actions, and quotient orders.

The ground set is always an explicit index set ``0..size-1``.  A relation is a
dense boolean table; a group action is an explicit list of permutations that
must contain the identity and be closed under composition and inverse.  The
quotient machinery builds the universal ("strong") and existential ("weak")
relations on the orbit space and checks the axioms that decide when those are
genuine orders.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class Comparison(enum.Enum):
    """Four-way outcome of comparing two elements of a partial order."""

    LESS = "Less"
    GREATER = "Greater"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"

    def __str__(self) -> str:
        return self.value


def componentwise_verdict(u: np.ndarray, v: np.ndarray, tol: float) -> Comparison:
    """Compare two vectors under the component-wise order with tolerance ``tol``.

    Both directions holding within tolerance is reported as EQUAL.
    """
    le = bool(np.all(u <= v + tol))
    ge = bool(np.all(v <= u + tol))
    if le and ge:
        return Comparison.EQUAL
    if le:
        return Comparison.LESS
    if ge:
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


@dataclass(frozen=True, eq=False)
class FiniteRelation:
    """A boolean relation over ``0..size-1``; ``holds[i, j]`` means i precedes j.

    No axioms are assumed at construction: use :func:`relation_axioms` to
    find out what the table actually satisfies.
    """

    size: int
    holds: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        table = np.array(self.holds, dtype=bool)
        if table.shape != (self.size, self.size):
            raise ValueError(
                f"relation table has shape {table.shape}, expected {(self.size, self.size)}"
            )
        table.setflags(write=False)
        object.__setattr__(self, "holds", table)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.size:
                raise ValueError("one label per element required")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_pairs(
        cls,
        size: int,
        pairs: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> "FiniteRelation":
        table = np.zeros((size, size), dtype=bool)
        for i, j in pairs:
            if not (0 <= i < size and 0 <= j < size):
                raise ValueError(f"pair ({i}, {j}) out of range for size {size}")
            table[i, j] = True
        return cls(size, table, None if labels is None else tuple(labels))

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.holds)]

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)


@dataclass(frozen=True)
class RelationAxioms:
    reflexive: bool
    antisymmetric: bool
    transitive: bool

    @property
    def partial_order(self) -> bool:
        return self.reflexive and self.antisymmetric and self.transitive

    @property
    def preorder(self) -> bool:
        return self.reflexive and self.transitive


@dataclass(frozen=True)
class ActionProperties:
    increasing: bool
    transverse: bool


@dataclass(frozen=True, eq=False)
class GroupAction:
    """A finite permutation group acting on ``0..size-1``.

    Construction fails unless the permutation list contains the identity and
    is closed under composition and inverse.
    """

    size: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = set()
        normalized = []
        for perm in self.perms:
            p = tuple(int(x) for x in perm)
            if sorted(p) != list(range(self.size)):
                raise ValueError(f"{p} is not a permutation of 0..{self.size - 1}")
            if p not in seen:
                seen.add(p)
                normalized.append(p)
        normalized.sort()
        identity = tuple(range(self.size))
        if identity not in seen:
            raise ValueError("action must contain the identity permutation")
        for p in normalized:
            inv = tuple(int(x) for x in np.argsort(p))
            if inv not in seen:
                raise ValueError(f"action is not closed under inverse: {p}")
            for q in normalized:
                comp = tuple(p[q[i]] for i in range(self.size))
                if comp not in seen:
                    raise ValueError(f"action is not closed under composition: {p} o {q}")
        object.__setattr__(self, "perms", tuple(normalized))

    @classmethod
    def from_generators(
        cls, size: int, generators: Iterable[Sequence[int]], cap: int = 100_000
    ) -> "GroupAction":
        """Close a generator set under composition (identity added automatically)."""
        identity = tuple(range(size))
        gens = [tuple(int(x) for x in g) for g in generators]
        members = {identity}
        frontier = [identity]
        while frontier:
            current = frontier.pop()
            for g in gens:
                nxt = tuple(g[current[i]] for i in range(size))
                if nxt not in members:
                    members.add(nxt)
                    frontier.append(nxt)
                    if len(members) > cap:
                        raise ValueError(f"group closure exceeded cap of {cap} elements")
        return cls(size, tuple(sorted(members)))

    def __len__(self) -> int:
        return len(self.perms)


@dataclass(frozen=True, eq=False)
class QuotientStructure:
    """Orbit partition of the ground set, optionally with a relation on orbits."""

    class_index: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    relation: FiniteRelation | None = None


def orbits(action: GroupAction) -> QuotientStructure:
    """Partition the ground set into orbits of the action."""
    assignment = [-1] * action.size
    orbit_list: list[tuple[int, ...]] = []
    for element in range(action.size):
        if assignment[element] >= 0:
            continue
        members = sorted({perm[element] for perm in action.perms})
        oid = len(orbit_list)
        for x in members:
            assignment[x] = oid
        orbit_list.append(tuple(members))
    return QuotientStructure(tuple(assignment), tuple(orbit_list))


def _orbit_label(orbit: tuple[int, ...], rel: FiniteRelation) -> str:
    return "{" + ",".join(rel.label_of(i) for i in orbit) + "}"


def induced_relation(
    rel: FiniteRelation, action: GroupAction, mode: str
) -> QuotientStructure:
    """Relation on the orbit space, quantified over representatives.

    ``mode="strong"`` relates orbits A, B when every a in A precedes some
    b in B; ``mode="weak"`` when some a in A precedes some b in B.
    """
    if rel.size != action.size:
        raise ValueError(f"size mismatch: relation {rel.size}, action {action.size}")
    if mode not in ("strong", "weak"):
        raise ValueError(f"mode must be 'strong' or 'weak', got {mode!r}")
    quotient = orbits(action)
    k = len(quotient.orbits)
    table = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(k):
            block = rel.holds[np.ix_(quotient.orbits[a], quotient.orbits[b])]
            if mode == "strong":
                table[a, b] = bool(block.any(axis=1).all())
            else:
                table[a, b] = bool(block.any())
    labels = tuple(_orbit_label(o, rel) for o in quotient.orbits)
    return QuotientStructure(
        quotient.class_index, quotient.orbits, FiniteRelation(k, table, labels)
    )


def action_properties(rel: FiniteRelation, action: GroupAction) -> ActionProperties:
    """Whether the action preserves the relation, and whether Ta <= a forces Ta = a."""
    if rel.size != action.size:
        raise ValueError(f"size mismatch: relation {rel.size}, action {action.size}")
    holds = rel.holds
    increasing = True
    transverse = True
    for perm in action.perms:
        p = np.asarray(perm)
        permuted = holds[np.ix_(p, p)]  # permuted[a, b] == holds[Ta, Tb]
        if increasing and bool((holds & ~permuted).any()):
            increasing = False
        if transverse:
            moved = p != np.arange(rel.size)
            if bool(holds[p[moved], np.arange(rel.size)[moved]].any()):
                transverse = False
        if not increasing and not transverse:
            break
    return ActionProperties(increasing, transverse)


def relation_axioms(rel: FiniteRelation) -> RelationAxioms:
    holds = rel.holds
    n = rel.size
    eye = np.eye(n, dtype=bool)
    reflexive = bool(holds[eye].all()) if n else True
    antisymmetric = not bool((holds & holds.T & ~eye).any())
    two_step = (holds.astype(np.int64) @ holds.astype(np.int64)) > 0
    transitive = not bool((two_step & ~holds).any())
    return RelationAxioms(reflexive, antisymmetric, transitive)


def transitive_closure(rel: FiniteRelation) -> FiniteRelation:
    """Smallest transitive relation containing ``rel``."""
    closure = rel.holds.copy()
    while True:
        step = ((closure.astype(np.int64) @ closure.astype(np.int64)) > 0) | closure
        if bool((step == closure).all()):
            break
        closure = step
    return FiniteRelation(rel.size, closure, rel.labels)


def reflexive_closure(rel: FiniteRelation) -> FiniteRelation:
    table = rel.holds | np.eye(rel.size, dtype=bool)
    return FiniteRelation(rel.size, table, rel.labels)


def minimal_elements(
    rel: FiniteRelation, subset: Iterable[int] | None = None, validate: bool = False
) -> set[int]:
    """Elements of ``subset`` with no distinct predecessor inside ``subset``.

    The caller is responsible for ``rel`` restricted to ``subset`` being a
    partial order; pass ``validate=True`` to check.
    """
    ids = sorted(range(rel.size)) if subset is None else sorted(set(subset))
    for i in ids:
        if not 0 <= i < rel.size:
            raise ValueError(f"element id {i} out of range for size {rel.size}")
    if validate:
        sub = rel.holds[np.ix_(ids, ids)]
        axioms = relation_axioms(FiniteRelation(len(ids), sub))
        if not axioms.partial_order:
            raise ValueError("relation restricted to subset is not a partial order")
    idx = np.asarray(ids)
    out = set()
    for i in ids:
        others = idx[idx != i]
        if others.size == 0 or not bool(rel.holds[others, i].any()):
            out.add(i)
    return out


def maximal_elements(
    rel: FiniteRelation, subset: Iterable[int] | None = None
) -> set[int]:
    flipped = FiniteRelation(rel.size, rel.holds.T, rel.labels)
    return minimal_elements(flipped, subset)


def transitive_reduction(rel: FiniteRelation) -> FiniteRelation:
    """Cover relation of a partial order: reflexive pairs and implied edges dropped."""
    axioms = relation_axioms(rel)
    if not axioms.partial_order:
        raise ValueError("transitive reduction requires a partial order")
    strict = rel.holds & ~np.eye(rel.size, dtype=bool)
    two_step = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
    return FiniteRelation(rel.size, strict & ~two_step, rel.labels)


def submajorize_compare(
    a: Sequence[float], b: Sequence[float], tol: float = 1e-9
) -> Comparison:
    """Compare two real multisets by descending prefix sums.

    Sort each multiset in descending order and form running sums; ``a`` is
    below ``b`` when its running sums are component-wise below, within an
    absolute tolerance.  EQUAL means the sorted multisets coincide.
    """
    left = np.sort(np.asarray(a, dtype=float))[::-1]
    right = np.sort(np.asarray(b, dtype=float))[::-1]
    if left.shape != right.shape:
        raise ValueError(f"size mismatch: {left.size} vs {right.size}")
    if left.size == 0:
        raise ValueError("multisets must be nonempty")
    if bool(np.all(np.abs(left - right) <= tol)):
        return Comparison.EQUAL
    return componentwise_verdict(np.cumsum(left), np.cumsum(right), tol)


# JSON wire formats ---------------------------------------------------------


def relation_to_json(rel: FiniteRelation) -> dict:
    return {"size": rel.size, "pairs": sorted(rel.pairs())}


def relation_from_json(data: dict) -> FiniteRelation:
    try:
        size = int(data["size"])
        pairs = [(int(i), int(j)) for i, j in data["pairs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed relation JSON: {exc}") from exc
    return FiniteRelation.from_pairs(size, pairs)


def action_to_json(action: GroupAction) -> dict:
    return {"size": action.size, "perms": [list(p) for p in action.perms]}


def action_from_json(data: dict) -> GroupAction:
    try:
        size = int(data["size"])
        perms = [tuple(int(x) for x in p) for p in data["perms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed action JSON: {exc}") from exc
    return GroupAction(size, tuple(perms))

"""Exhaustive enumeration of Cayley maps over a group.

A connection set is a union of inversion cells {x, x^-1}; every set is
paired with all (|S|-1)! rotations in canonical phase (the smallest
element leads). ``up-to-cayley-iso`` mode keeps one representative per
orbit of the automorphism group, the lexicographically least canonical
rotation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from itertools import permutations

from .groups import FiniteGroup, automorphisms
from .maps import CayleyMap, make_map


def inversion_cells(h: FiniteGroup) -> list[tuple[int, ...]]:
    """Cells {x, x^-1} of the non-identity elements, sorted."""
    cells = {}
    for x in range(1, h.order):
        key = tuple(sorted({x, h.inverse[x]}))
        cells[key] = None
    return sorted(cells)


def connection_sets(h: FiniteGroup, max_valency: int) -> list[tuple[int, ...]]:
    """All symmetric identity-free subsets with size <= max_valency."""
    cells = inversion_cells(h)
    out: list[tuple[int, ...]] = []

    def grow(idx: int, acc: tuple[int, ...]):
        if acc:
            out.append(tuple(sorted(acc)))
        for j in range(idx, len(cells)):
            cand = acc + cells[j]
            if len(cand) <= max_valency:
                grow(j + 1, cand)

    grow(0, ())
    return sorted(out, key=lambda s: (len(s), s))


def rotations_of(connection_set: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All rotations of a set in canonical phase (minimum first)."""
    s = sorted(connection_set)
    first, rest = s[0], s[1:]
    for tail in permutations(rest):
        yield (first,) + tail


def total_map_count(h: FiniteGroup, max_valency: int) -> int:
    return sum(math.factorial(len(s) - 1) for s in connection_sets(h, max_valency))


def counts_per_valency(h: FiniteGroup, max_valency: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for s in connection_sets(h, max_valency):
        out[len(s)] = out.get(len(s), 0) + math.factorial(len(s) - 1)
    return out


def cayley_class_key(m: CayleyMap) -> tuple[int, ...]:
    """Lexicographically least canonical rotation in the Aut(H)-orbit of m."""
    best = m.rotation
    for sigma in automorphisms(m.group):
        rot = tuple(sigma.images[s] for s in m.rotation)
        i = rot.index(min(rot))
        rot = rot[i:] + rot[:i]
        if rot < best:
            best = rot
    return best


@dataclass
class MapEnumeration:
    """A lazily generated stream of the canonical maps over one group."""

    group: FiniteGroup
    max_valency: int
    mode: str = "all"  # "all" | "up-to-cayley-iso"

    def __post_init__(self):
        if self.mode not in ("all", "up-to-cayley-iso"):
            raise ValueError(f"unknown enumeration mode {self.mode!r}")
        if self.max_valency > self.group.order - 1:
            raise ValueError("max_valency exceeds |H| - 1")

    def __iter__(self) -> Iterator[CayleyMap]:
        for s in connection_sets(self.group, self.max_valency):
            for rot in rotations_of(s):
                m = make_map(self.group, rot)
                if self.mode == "up-to-cayley-iso" and cayley_class_key(m) != m.rotation:
                    continue
                yield m

    def total_count(self) -> int:
        return total_map_count(self.group, self.max_valency)

    def counts(self) -> dict[int, int]:
        return counts_per_valency(self.group, self.max_valency)


def enumerate_cayley_maps(h: FiniteGroup, max_valency: int, mode: str = "all") -> MapEnumeration:
    return MapEnumeration(h, max_valency, mode)

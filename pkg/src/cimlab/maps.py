"""Cayley maps: a finite group plus one cyclic ordering of a symmetric
connection set, applied at every vertex.

The rotation is stored in canonical phase (smallest element first), so
two maps over the same group object are equal iff their rotation tuples
are equal. A map and its mirror image are distinct objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import MapValidationError
from .groups import FiniteGroup, GroupIsomorphism, closure_of
from .perms import Perm, perm_order


@dataclass(frozen=True, eq=False)
class CayleyMap:
    group: FiniteGroup
    rotation: tuple[int, ...]

    @property
    def valency(self) -> int:
        return len(self.rotation)

    @property
    def connection_set(self) -> frozenset[int]:
        return frozenset(self.rotation)

    def rho(self, s: int) -> int:
        i = self.rotation.index(s)
        return self.rotation[(i + 1) % len(self.rotation)]

    def rho_inv(self, s: int) -> int:
        i = self.rotation.index(s)
        return self.rotation[(i - 1) % len(self.rotation)]

    def mirror(self) -> "CayleyMap":
        return make_map(self.group, (self.rotation[0],) + tuple(reversed(self.rotation[1:])))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CayleyMap)
            and self.group is other.group
            and self.rotation == other.rotation
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.rotation))

    def __repr__(self) -> str:
        return f"CayleyMap({self.group.name}, {self.rotation})"


def make_map(h: FiniteGroup, rotation: Sequence[int]) -> CayleyMap:
    """Validate a rotation sequence and store it in canonical phase."""
    rot = tuple(int(s) for s in rotation)
    if not rot:
        raise MapValidationError("duplicate-entry", "rotation must be nonempty")
    if len(set(rot)) != len(rot):
        raise MapValidationError("duplicate-entry", f"repeated element in rotation {rot}")
    if 0 in rot:
        raise MapValidationError("identity-in-s", "identity may not lie in the connection set")
    s = set(rot)
    if any(h.inverse[x] not in s for x in rot):
        raise MapValidationError("s-not-symmetric", f"connection set {sorted(s)} is not closed under inverse")
    i = rot.index(min(rot))
    return CayleyMap(h, rot[i:] + rot[:i])


def connection_subgroup(m: CayleyMap) -> tuple[int, ...]:
    return closure_of(m.group, m.rotation)


def is_connected(m: CayleyMap) -> bool:
    return len(connection_subgroup(m)) == m.group.order


def is_balanced(m: CayleyMap) -> bool:
    """rho(s^-1) == rho(s)^-1 for every s."""
    inv = m.group.inverse
    rot = m.rotation
    k = len(rot)
    pos = {s: i for i, s in enumerate(rot)}
    return all(rot[(pos[inv[s]] + 1) % k] == inv[rot[(pos[s] + 1) % k]] for s in rot)


def is_antibalanced(m: CayleyMap) -> bool:
    """rho(s^-1) == rho^-1(s)^-1 for every s."""
    inv = m.group.inverse
    rot = m.rotation
    k = len(rot)
    pos = {s: i for i, s in enumerate(rot)}
    return all(rot[(pos[inv[s]] + 1) % k] == inv[rot[(pos[s] - 1) % k]] for s in rot)


@dataclass(frozen=True, eq=False)
class TernaryRelation:
    degree: int
    triples: frozenset[tuple[int, int, int]]


def ternary_relation(m: CayleyMap) -> TernaryRelation:
    """(x, y, z) with x^-1 y, x^-1 z in S and rho(x^-1 y) = x^-1 z."""
    g = m.group
    rot = m.rotation
    k = len(rot)
    nxt = {rot[i]: rot[(i + 1) % k] for i in range(k)}
    triples = set()
    for x in g.elements():
        row = g.table[x]
        for s in rot:
            triples.add((x, row[s], row[nxt[s]]))
    return TernaryRelation(g.order, frozenset(triples))


def transport_relation(r: TernaryRelation, sigma: Perm) -> TernaryRelation:
    return TernaryRelation(
        r.degree, frozenset((sigma[x], sigma[y], sigma[z]) for x, y, z in r.triples)
    )


def preserves_relation(r: TernaryRelation, p: Perm) -> bool:
    return all((p[x], p[y], p[z]) in r.triples for x, y, z in r.triples)


def apply_group_automorphism(m: CayleyMap, sigma: GroupIsomorphism) -> CayleyMap:
    """The image map over sigma's target, with rotation [sigma(s0), sigma(s1), ...]."""
    if sigma.source is not m.group:
        raise ValueError("isomorphism source must be the map's group")
    return make_map(sigma.target, tuple(sigma.images[s] for s in m.rotation))


def is_skew_morphism(h: FiniteGroup, phi: Perm) -> bool:
    """Does phi(g*x) = phi(g) * phi^p(g)(x) hold for some power function p?

    phi must fix the identity; the power p(g) is searched over
    0..order(phi)-1 for each g independently.
    """
    n = h.order
    if len(phi) != n or phi[0] != 0:
        return False
    d = perm_order(phi)
    powers = [tuple(range(n))]
    for _ in range(d - 1):
        powers.append(tuple(phi[x] for x in powers[-1]))
    tbl = h.table
    for g in range(n):
        phig_row = tbl[phi[g]]
        g_row = tbl[g]
        if not any(
            all(phi[g_row[x]] == phig_row[power[x]] for x in range(n))
            for power in powers
        ):
            return False
    return True


def skew_power_function(h: FiniteGroup, phi: Perm) -> Optional[tuple[int, ...]]:
    """The power function of a skew-morphism (values in 0..order-1), or None."""
    n = h.order
    if len(phi) != n or phi[0] != 0:
        return None
    d = perm_order(phi)
    powers = [tuple(range(n))]
    for _ in range(d - 1):
        powers.append(tuple(phi[x] for x in powers[-1]))
    tbl = h.table
    out = []
    for g in range(n):
        phig_row = tbl[phi[g]]
        g_row = tbl[g]
        for e, power in enumerate(powers):
            if all(phi[g_row[x]] == phig_row[power[x]] for x in range(n)):
                out.append(e)
                break
        else:
            return None
    return tuple(out)


def face_profile(m: CayleyMap) -> tuple[int, ...]:
    """Sorted multiset of face lengths of the embedded map.

    Faces are the orbits of the arc permutation (h, s) -> (h s, rho(s^-1)).
    The profile is invariant under map isomorphism, which makes it a cheap
    prefilter for isomorphism searches.
    """
    g = m.group
    rot = m.rotation
    k = len(rot)
    nxt = {rot[i]: rot[(i + 1) % k] for i in range(k)}
    inv = g.inverse
    seen = set()
    lengths = []
    for h in g.elements():
        for s in rot:
            arc = (h, s)
            if arc in seen:
                continue
            length = 0
            while arc not in seen:
                seen.add(arc)
                hh, ss = arc
                arc = (g.table[hh][ss], nxt[inv[ss]])
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths))


def map_to_json(m: CayleyMap, inline_group: bool = False) -> dict:
    from .groups import group_to_json

    group: object
    if inline_group:
        group = group_to_json(m.group)
    else:
        group = m.group.name
    return {"group": group, "rotation": list(m.rotation)}

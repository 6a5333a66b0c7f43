"""Map automorphisms and isomorphisms by arc-seeded extension.

For a connected map, an (iso)morphism is determined by the image of one
vertex together with one rotation alignment: every differential
(the map s -> phi(h)^-1 phi(h s)) intertwines the two rotations, and a
full cycle determines its intertwiners from a single value. So there
are at most |S| candidates fixing a vertex, each checked by one
breadth-first propagation over the vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CapacityError, DisconnectedMapError
from .maps import CayleyMap, is_connected
from .perms import Perm, PermutationGroup, from_elements, point_stabilizer

BRUTE_FORCE_CAP = 10


@dataclass(frozen=True, eq=False)
class MapMorphism:
    source: CayleyMap
    target: CayleyMap
    images: tuple[int, ...]

    def validate(self) -> None:
        if not _verify(self.source, self.target, self.images):
            raise ValueError("not a map morphism")

    def __repr__(self) -> str:
        return f"MapMorphism({self.source!r} -> {self.target!r})"


def _verify(m1: CayleyMap, m2: CayleyMap, images) -> bool:
    """Full definition check: bijective, edges to edges, rotations intertwined."""
    g1, g2 = m1.group, m2.group
    n = g1.order
    if g2.order != n or len(images) != n or sorted(images) != list(range(n)):
        return False
    rot1, rot2 = m1.rotation, m2.rotation
    if len(rot1) != len(rot2):
        return False
    k = len(rot1)
    nxt1 = {rot1[i]: rot1[(i + 1) % k] for i in range(k)}
    nxt2 = {rot2[i]: rot2[(i + 1) % k] for i in range(k)}
    mul1, mul2 = g1.table, g2.table
    inv2 = g2.inverse
    in_s2 = set(rot2)
    for h in range(n):
        fh = images[h]
        fh_inv = inv2[fh]
        row1 = mul1[h]
        for s in rot1:
            d = mul2[fh_inv][images[row1[s]]]
            if d not in in_s2:
                return False
            if images[row1[nxt1[s]]] != mul2[fh][nxt2[d]]:
                return False
    return True


def _propagate(m1: CayleyMap, m2: CayleyMap, v0: int, a0: int) -> Optional[tuple[int, ...]]:
    """Extend phi(e) = v0, Delta_e(rot1[i]) = rot2[(a0+i) % k] over a connected m1."""
    g1, g2 = m1.group, m2.group
    n = g1.order
    rot1, rot2 = m1.rotation, m2.rotation
    k = len(rot1)
    pos1 = {s: i for i, s in enumerate(rot1)}
    pos2 = {s: i for i, s in enumerate(rot2)}
    mul1, mul2 = g1.table, g2.table
    inv1, inv2 = g1.inverse, g2.inverse
    images = [-1] * n
    align = [0] * n
    images[0] = v0
    align[0] = a0
    queue = [0]
    while queue:
        h = queue.pop()
        fh = images[h]
        a = align[h]
        row1 = mul1[h]
        row2 = mul2[fh]
        for i in range(k):
            s = rot1[i]
            d = rot2[(a + i) % k]
            v = row1[s]
            w = row2[d]
            if images[v] == -1:
                images[v] = w
                # Delta_v(s^-1) = (Delta_h(s))^-1 pins the alignment at v
                align[v] = (pos2[inv2[d]] - pos1[inv1[s]]) % k
                queue.append(v)
            elif images[v] != w:
                return None
    if -1 in images:
        return None  # m1 was not connected
    out = tuple(images)
    if not _verify(m1, m2, out):
        return None
    return out


def stabilizer_automorphisms(m: CayleyMap) -> list[Perm]:
    """All automorphisms fixing the identity vertex, for a connected map."""
    if not is_connected(m):
        raise DisconnectedMapError("map automorphisms need a connected map")
    out = []
    for j in range(m.valency):
        images = _propagate(m, m, 0, j)
        if images is not None:
            out.append(images)
    return sorted(out)


def map_automorphism_group(m: CayleyMap) -> PermutationGroup:
    """The full automorphism group: left translations times the vertex stabilizer."""
    stab = stabilizer_automorphisms(m)
    table = m.group.table
    n = m.group.order
    elems = [tuple(table[h][x] for x in phi) for h in range(n) for phi in stab]
    gens = [tuple(table[h]) for h in range(1, n)] + [p for p in stab if p != tuple(range(n))]
    if not gens:
        gens = [tuple(range(n))]
    return from_elements(elems, gens)


def map_isomorphisms(m1: CayleyMap, m2: CayleyMap) -> list[MapMorphism]:
    """All isomorphisms between two connected maps, sorted by image tuple."""
    if not is_connected(m1) or not is_connected(m2):
        raise DisconnectedMapError("map isomorphism search needs connected maps")
    if m1.group.order != m2.group.order or m1.valency != m2.valency:
        return []
    base = []
    for a0 in range(m2.valency):
        images = _propagate(m1, m2, 0, a0)
        if images is not None:
            base.append(images)
    table2 = m2.group.table
    n = m2.group.order
    all_images = sorted(
        tuple(table2[h][x] for x in phi) for h in range(n) for phi in base
    )
    return [MapMorphism(m1, m2, f) for f in all_images]


def map_iso_exists(m1: CayleyMap, m2: CayleyMap) -> Optional[tuple[int, ...]]:
    """One isomorphism between connected maps, or None (cheap existence check)."""
    if m1.group.order != m2.group.order or m1.valency != m2.valency:
        return None
    for a0 in range(m2.valency):
        images = _propagate(m1, m2, 0, a0)
        if images is not None:
            return images
    return None


def _bfs_vertex_order(m: CayleyMap) -> list[int]:
    g = m.group
    order = []
    seen = set()
    for start in range(g.order):
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            h = queue.pop(0)
            order.append(h)
            for s in m.rotation:
                v = g.table[h][s]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return order


def bruteforce_map_isomorphism(
    m1: CayleyMap, m2: CayleyMap, cap: int = BRUTE_FORCE_CAP
) -> Optional[tuple[int, ...]]:
    """Backtracking isomorphism search that also handles disconnected maps."""
    n = m1.group.order
    if n > cap:
        raise CapacityError(f"brute-force isomorphism capped at order {cap}")
    if m2.group.order != n or m1.valency != m2.valency:
        return None
    g1, g2 = m1.group, m2.group
    in_s1, in_s2 = set(m1.rotation), set(m2.rotation)
    mul1, mul2 = g1.table, g2.table
    inv1, inv2 = g1.inverse, g2.inverse
    order = _bfs_vertex_order(m1)
    images = [-1] * n
    used = [False] * n

    def ok_pairs(v: int, c: int) -> bool:
        for u in order:
            fu = images[u]
            if fu == -1 or u == v:
                continue
            if (mul1[inv1[u]][v] in in_s1) != (mul2[inv2[fu]][c] in in_s2):
                return False
            if (mul1[inv1[v]][u] in in_s1) != (mul2[inv2[c]][fu] in in_s2):
                return False
        return True

    def assign(idx: int) -> Optional[tuple[int, ...]]:
        if idx == n:
            out = tuple(images)
            return out if _verify(m1, m2, out) else None
        v = order[idx]
        for c in range(n):
            if used[c] or not ok_pairs(v, c):
                continue
            images[v] = c
            used[c] = True
            found = assign(idx + 1)
            if found is not None:
                return found
            images[v] = -1
            used[c] = False
        return None

    return assign(0)


def are_cayley_isomorphic(m1: CayleyMap, m2: CayleyMap):
    """A group isomorphism carrying (S1, rho1) to (S2, rho2), or None.

    Works for disconnected maps too: candidates are one isomorphism of
    the underlying groups composed with every automorphism of the target.
    """
    from .groups import GroupIsomorphism, automorphisms, is_isomorphic

    if m1.valency != m2.valency:
        return None
    if m1.group is m2.group:
        base: Optional[GroupIsomorphism] = GroupIsomorphism(
            m1.group, m2.group, tuple(range(m1.group.order))
        )
    else:
        base = is_isomorphic(m1.group, m2.group)
    if base is None:
        return None
    s2 = set(m2.rotation)
    k = m1.valency
    nxt2 = {m2.rotation[i]: m2.rotation[(i + 1) % k] for i in range(k)}
    rot1 = m1.rotation
    for sigma in automorphisms(m2.group):
        phi = tuple(sigma.images[x] for x in base.images)
        if any(phi[s] not in s2 for s in rot1):
            continue
        if all(phi[rot1[(i + 1) % k]] == nxt2[phi[rot1[i]]] for i in range(k)):
            return GroupIsomorphism(m1.group, m2.group, phi)
    return None


def stabilizer_of_identity(m: CayleyMap) -> PermutationGroup:
    """Point stabilizer of Aut(M) at the identity vertex."""
    return point_stabilizer(map_automorphism_group(m), 0)

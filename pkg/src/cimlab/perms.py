"""Explicit permutation groups on a finite point set.

Permutations are image tuples: ``p[i]`` is the image of point ``i``.
Composition is function composition, ``compose(p, q)(x) == p[q[x]]``.
Groups are stored as full, sorted element lists; the sizes in play here
(degree <= ~64, order <= ~20000) make that exact and fast enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import CapacityError, PreconditionError
from .groups import FiniteGroup, is_cyclic_group, is_in_class_m, is_isomorphic

Perm = tuple[int, ...]
Permutation = Perm

DEFAULT_GROUP_CAP = 20000


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply q first, then p."""
    return tuple(p[x] for x in q)


def inverse_perm(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[pi] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        # lcm accumulate
        a, b = order, length
        while b:
            a, b = b, a % b
        order = order * length // a
    return order


def cycles_of(p: Perm) -> list[tuple[int, ...]]:
    """Cycles of p (fixed points included as 1-cycles), each starting at its minimum."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def is_permutation(images: Sequence[int], degree: int) -> bool:
    return len(images) == degree and sorted(images) == list(range(degree))


@dataclass(frozen=True, eq=False)
class PermutationGroup:
    degree: int
    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.element_set()

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.degree == other.degree and self.element_set() <= other.element_set()

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, order={self.order})"


def closure(gens: Sequence[Perm], cap: int = DEFAULT_GROUP_CAP) -> PermutationGroup:
    """Full element enumeration of <gens> by breadth-first products."""
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ValueError("need at least one permutation")
    degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators must share one degree")
    for g in gens:
        if not is_permutation(g, degree):
            raise ValueError("not a permutation")
    ident = identity_perm(degree)
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[x] for x in g)
                if q not in elems:
                    if len(elems) >= cap:
                        raise CapacityError(f"closure exceeds cap {cap}")
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    return PermutationGroup(degree, tuple(sorted(elems)), tuple(gens))


def from_elements(elements: Iterable[Perm], generators: Sequence[Perm] = ()) -> PermutationGroup:
    """Wrap an element set that is already known to be a group."""
    elems = tuple(sorted(set(tuple(p) for p in elements)))
    degree = len(elems[0])
    gens = tuple(tuple(g) for g in generators) or elems
    return PermutationGroup(degree, elems, gens)


def validate_group(g: PermutationGroup) -> None:
    """Check closure under composition and inverse; for tests and loaded data."""
    elems = g.element_set()
    if identity_perm(g.degree) not in elems:
        raise ValueError("identity missing")
    for p in g.elements:
        if inverse_perm(p) not in elems:
            raise ValueError("not closed under inverse")
        for q in g.generators:
            if compose(p, q) not in elems:
                raise ValueError("not closed under composition")
    if closure(g.generators, cap=len(elems) + 1).order != len(elems):
        raise ValueError("elements do not equal closure(generators)")


def left_regular_representation(h: FiniteGroup) -> PermutationGroup:
    """All left translations x -> g*x of a finite group, acting on its elements."""
    elems = tuple(sorted(tuple(h.table[a]) for a in h.elements()))
    gens = tuple(tuple(h.table[a]) for a in range(h.order) if a != 0) or (identity_perm(h.order),)
    return PermutationGroup(h.order, elems, gens)


def orbit_of(g: PermutationGroup, point: int) -> frozenset[int]:
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            for p in g.generators:
                y = p[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def is_transitive(g: PermutationGroup) -> bool:
    return len(orbit_of(g, 0)) == g.degree


def is_regular(g: PermutationGroup) -> bool:
    return g.order == g.degree and is_transitive(g)


def point_stabilizer(g: PermutationGroup, point: int) -> PermutationGroup:
    elems = tuple(p for p in g.elements if p[point] == point)
    return PermutationGroup(g.degree, elems, elems)


def is_cyclic_permgroup(g: PermutationGroup) -> bool:
    return any(perm_order(p) == g.order for p in g.elements)


def fixed_points(perms: Sequence[Perm]) -> frozenset[int]:
    """Points fixed by every permutation in the list."""
    if not perms:
        raise ValueError("need at least one permutation")
    degree = len(perms[0])
    out = set(range(degree))
    for p in perms:
        out &= {i for i in range(degree) if p[i] == i}
    return frozenset(out)


def is_block(g: PermutationGroup, delta: Iterable[int]) -> bool:
    block = frozenset(delta)
    if not block:
        raise ValueError("block must be nonempty")
    for p in g.elements:
        image = {p[x] for x in block}
        if image != block and image & block:
            return False
    return True


@dataclass(frozen=True, eq=False)
class BlockSystem:
    degree: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def block_of(self, point: int) -> tuple[int, ...]:
        for b in self.blocks:
            if point in b:
                return b
        raise KeyError(point)

    def refines(self, other: "BlockSystem") -> bool:
        cell_of = {}
        for b in other.blocks:
            cell = frozenset(b)
            for x in b:
                cell_of[x] = cell
        return all(set(b) <= cell_of[b[0]] for b in self.blocks)


def _system_from_partition(classes: dict[int, int], degree: int) -> BlockSystem:
    cells: dict[int, list[int]] = {}
    for x in range(degree):
        cells.setdefault(classes[x], []).append(x)
    blocks = tuple(sorted(tuple(sorted(c)) for c in cells.values()))
    return BlockSystem(degree, blocks)


def block_system_from_pair(g: PermutationGroup, a: int, b: int) -> BlockSystem:
    """The finest G-invariant partition in which a and b share a cell."""
    parent = list(range(g.degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[max(rx, ry)] = min(rx, ry)
        return True

    queue = [(a, b)]
    union(a, b)
    while queue:
        x, y = queue.pop()
        for p in g.generators:
            if union(p[x], p[y]):
                queue.append((p[x], p[y]))
    classes = {x: find(x) for x in range(g.degree)}
    return _system_from_partition(classes, g.degree)


def pair_block_systems(g: PermutationGroup) -> list[BlockSystem]:
    """All distinct nontrivial systems generated by a pair {0, delta}."""
    if not is_transitive(g):
        raise PreconditionError("not-transitive", "block systems need a transitive group")
    out = {}
    for delta in range(1, g.degree):
        system = block_system_from_pair(g, 0, delta)
        if 1 < len(system.blocks) < g.degree:
            out[system.blocks] = system
    return [out[k] for k in sorted(out)]


def minimal_block_systems(g: PermutationGroup) -> list[BlockSystem]:
    """Nontrivial systems minimal in the refinement order (finest ones).

    Every minimal system is generated by one point pair, so filtering the
    pair-generated systems is exhaustive. An empty result means g is
    primitive.
    """
    systems = pair_block_systems(g)
    out = []
    for s in systems:
        if not any(t is not s and t.refines(s) and t.blocks != s.blocks for t in systems):
            out.append(s)
    return out


def regular_subgroups_isomorphic_to(
    g: PermutationGroup, h: FiniteGroup, cap: int = DEFAULT_GROUP_CAP
) -> list[PermutationGroup]:
    """All regular subgroups of g isomorphic to h, sorted canonically.

    A regular subgroup has order equal to the degree and consists of the
    identity plus fixed-point-free elements, so the search grows
    subgroups from fixed-point-free elements only, pruning whenever the
    partial closure stops dividing |h|.
    """
    n = h.order
    if g.degree != n:
        raise ValueError("degree must equal |h|")
    if g.order > cap:
        raise CapacityError(f"regular subgroup search capped at {cap}")
    ident = identity_perm(n)

    if g.order == n:
        # g itself is the only candidate
        if is_regular(g) and _perm_group_isomorphic(g, h):
            return [g]
        return []

    fpf = [p for p in g.elements if p != ident and all(p[i] != i for i in range(n))]

    if is_cyclic_group(h):
        found = {}
        for p in fpf:
            if perm_order(p) != n:
                continue
            sub = _cyclic_subgroup(p)
            found.setdefault(tuple(sorted(sub)), p)
        return [
            PermutationGroup(n, key, (found[key],)) for key in sorted(found)
        ]

    fpf_set = set(fpf)
    seen: set[frozenset[Perm]] = set()
    results: dict[tuple[Perm, ...], PermutationGroup] = {}
    start = frozenset({ident})
    frontier = [(start, ())]
    seen.add(start)
    while frontier:
        nxt = []
        for members, gens in frontier:
            for p in fpf:
                if p in members:
                    continue
                new_gens = gens + (p,)
                grown = _grow_closure(members, p, n)
                if grown is None or len(grown) > n or n % len(grown):
                    continue
                if any(q != ident and q not in fpf_set for q in grown):
                    continue
                key = frozenset(grown)
                if key in seen:
                    continue
                seen.add(key)
                if len(grown) == n:
                    sub = PermutationGroup(n, tuple(sorted(grown)), new_gens)
                    if _perm_group_isomorphic(sub, h):
                        results[sub.elements] = sub
                else:
                    nxt.append((key, new_gens))
        frontier = nxt
    return [results[k] for k in sorted(results)]


def _cyclic_subgroup(p: Perm) -> list[Perm]:
    out = [identity_perm(len(p))]
    q = p
    while q != out[0]:
        out.append(q)
        q = compose(q, p)
    return out


def _grow_closure(members: frozenset[Perm], p: Perm, limit: int) -> Optional[set[Perm]]:
    """Closure of members + {p}, or None once it exceeds limit."""
    elems = set(members)
    frontier = [p]
    elems.add(p)
    gens = list(members) + [p]
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens:
                c = compose(a, b)
                if c not in elems:
                    if len(elems) >= limit:
                        return None
                    elems.add(c)
                    nxt.append(c)
                d = compose(b, a)
                if d not in elems:
                    if len(elems) >= limit:
                        return None
                    elems.add(d)
                    nxt.append(d)
        frontier = nxt
    return elems


def perm_group_as_finite_group(g: PermutationGroup) -> tuple[FiniteGroup, list[Perm]]:
    """Abstract multiplication table of g; returns the element order used."""
    ident = identity_perm(g.degree)
    order_list = [ident] + [p for p in g.elements if p != ident]
    index = {p: i for i, p in enumerate(order_list)}
    tbl = tuple(
        tuple(index[compose(a, b)] for b in order_list) for a in order_list
    )
    inv = tuple(index[inverse_perm(a)] for a in order_list)
    return FiniteGroup(len(order_list), tbl, inv, "perm-group"), order_list


def _perm_group_isomorphic(g: PermutationGroup, h: FiniteGroup) -> bool:
    if g.order != h.order:
        return False
    abstract, _ = perm_group_as_finite_group(g)
    return is_isomorphic(abstract, h) is not None


def are_conjugate_subgroups(
    g: PermutationGroup, a: PermutationGroup, b: PermutationGroup
) -> Optional[Perm]:
    """Some x in g with x a x^-1 = b as element sets, or None."""
    if a.order != b.order:
        return None
    b_set = b.element_set()
    a_elems = a.elements
    for x in g.elements:
        x_inv = inverse_perm(x)
        ok = True
        for p in a_elems:
            if tuple(x[p[y]] for y in x_inv) not in b_set:
                ok = False
                break
        if ok:
            return x
    return None


def conjugate_subgroup(sub: PermutationGroup, x: Perm) -> PermutationGroup:
    x_inv = inverse_perm(x)
    elems = tuple(sorted(tuple(x[p[y]] for y in x_inv) for p in sub.elements))
    gens = tuple(tuple(x[p[y]] for y in x_inv) for p in sub.generators)
    return PermutationGroup(sub.degree, elems, gens)


def check_cyclic_stabilizer_conjugacy(g: PermutationGroup, h: FiniteGroup):
    """Are all regular copies of h inside g conjugate? Returns a CiReport.

    Preconditions (g transitive, cyclic point stabilizer, at least one
    regular copy of h) are reported as distinct errors. Membership of h
    in the Z_n x Z_2^r / Z_n x Z_4 / Z_n x Q_8 family is recorded in the
    report but deliberately not enforced, so the bare conjugacy check
    can be run on any instance.
    """
    from .reports import CiReport

    if not is_transitive(g):
        raise PreconditionError("not-transitive", "group is not transitive")
    stab = point_stabilizer(g, 0)
    if not is_cyclic_permgroup(stab):
        raise PreconditionError("stabilizer-not-cyclic", "point stabilizer is not cyclic")
    regs = regular_subgroups_isomorphic_to(g, h)
    if not regs:
        raise PreconditionError("no-regular-copy", "no regular subgroup isomorphic to h")
    witnesses = []
    verdict = True
    base = regs[0]
    for other in regs[1:]:
        x = are_conjugate_subgroups(g, other, base)
        if x is None:
            verdict = False
            witnesses.append(
                {
                    "kind": "non-conjugate-regular-pair",
                    "subgroup_a": [list(p) for p in base.generators],
                    "subgroup_b": [list(p) for p in other.generators],
                }
            )
            break
        witnesses.append(
            {
                "kind": "conjugator",
                "element": list(x),
                "subgroup": [list(p) for p in other.generators],
            }
        )
    return CiReport(
        subject={"kind": "permutation-group", "degree": g.degree, "order": g.order,
                 "regular_group": h.name},
        verdict=verdict,
        method="cyclic-stabilizer-conjugacy",
        witnesses=witnesses,
        stats={"regular_subgroup_count": len(regs), "stabilizer_order": stab.order},
        notes={"h_in_class_m": is_in_class_m(h)},
    )


def permutation_to_json(p: Perm) -> dict:
    return {"degree": len(p), "images": list(p)}


def permutation_from_json(data: dict) -> Perm:
    images = tuple(int(x) for x in data["images"])
    if not is_permutation(images, int(data["degree"])):
        raise ValueError("not a permutation")
    return images


def permgroup_to_json(g: PermutationGroup) -> dict:
    return {"degree": g.degree, "generators": [list(p) for p in g.generators],
            "order": g.order}


def permgroup_from_json(data: dict, cap: int = DEFAULT_GROUP_CAP) -> PermutationGroup:
    gens = [tuple(int(x) for x in p) for p in data["generators"]]
    g = closure(gens, cap=cap)
    if "order" in data and g.order != int(data["order"]):
        raise ValueError("stored order does not match closure")
    return g

import itertools

import pytest

from cimlab.errors import DisconnectedMapError
from cimlab.groups import (
    GroupIsomorphism,
    make_cyclic,
)
from cimlab.maps import make_map, preserves_relation, ternary_relation
from cimlab.mapiso import (
    MapMorphism,
    are_cayley_isomorphic,
    bruteforce_map_isomorphism,
    map_automorphism_group,
    map_iso_exists,
    map_isomorphisms,
    stabilizer_of_identity,
)
from cimlab.perms import (
    fixed_points,
    is_cyclic_permgroup,
    left_regular_representation,
    point_stabilizer,
)


def unit_map(z8):
    return make_map(z8, (1, 3, 5, 7))


def lemma_orbit_map():
    z9 = make_cyclic(9)
    rot, x = [], 1
    for _ in range(6):
        rot.append(x)
        x = 5 * x % 9
    return make_map(z9, rot)


def antibalanced_16_map():
    z16 = make_cyclic(16)
    return make_map(z16, (1, 15, 3, 5, 9, 7, 11, 13))


# ------------------------------------------------------------------ oracle

def aut_by_relation_stabilizer(m):
    """Brute-force oracle: all vertex permutations preserving the ternary
    relation (for |H| <= 8)."""
    n = m.group.order
    assert n <= 8
    r = ternary_relation(m)
    out = []
    for p in itertools.permutations(range(n)):
        if preserves_relation(r, p):
            out.append(p)
    return sorted(out)


# ----------------------------------------------------------- automorphisms

def test_aut_order_54_for_orbit_map():
    assert map_automorphism_group(lemma_orbit_map()).order == 54


def test_aut_order_32_for_antibalanced_16():
    assert map_automorphism_group(antibalanced_16_map()).order == 32


def test_aut_order_32_for_unit_map(z8):
    assert map_automorphism_group(unit_map(z8)).order == 32


def test_aut_requires_connected(z8):
    with pytest.raises(DisconnectedMapError):
        map_automorphism_group(make_map(z8, (2, 6)))


def test_translations_always_automorphisms(z8, k4):
    for m in (unit_map(z8), make_map(k4, (1, 2)), lemma_orbit_map()):
        group = map_automorphism_group(m)
        hhat = left_regular_representation(m.group)
        assert hhat.is_subgroup_of(group)


def test_aut_order_divides_order_times_valency(z8, k4, q8):
    maps = [
        unit_map(z8),
        make_map(k4, (1, 2)),
        lemma_orbit_map(),
        make_map(z8, (1, 2, 6, 7)),
        make_map(q8, (1, 4, 3, 6)),
    ]
    for m in maps:
        group = map_automorphism_group(m)
        assert (m.group.order * m.valency) % group.order == 0


def test_aut_matches_relation_stabilizer_oracle(z8, k4, q8):
    maps = [
        unit_map(z8),
        make_map(z8, (1, 7, 5, 3)),
        make_map(k4, (1, 2)),
        make_map(k4, (1, 2, 3)),
        make_map(q8, (1, 4, 3, 6)),
        make_map(make_cyclic(6), (1, 5, 3)),
    ]
    for m in maps:
        got = list(map_automorphism_group(m).elements)
        assert got == aut_by_relation_stabilizer(m)


def test_stabilizer_properties(z8):
    # cyclic, faithful on S, restriction lies in the rotation's cycle group
    for m in (unit_map(z8), lemma_orbit_map(), antibalanced_16_map()):
        stab = stabilizer_of_identity(m)
        assert is_cyclic_permgroup(stab)
        s = list(m.rotation)
        seen = set()
        for p in stab.elements:
            restriction = tuple(p[x] for x in s)
            assert restriction not in seen  # faithful on S
            seen.add(restriction)
        k = m.valency
        rho_powers = set()
        rot = m.rotation
        for j in range(k):
            rho_powers.add(tuple(rot[(rot.index(x) + j) % k] for x in s))
        assert seen <= rho_powers


# ------------------------------------------------------------ isomorphisms

def test_klein_vs_cyclic_valency2(k4):
    z4 = make_cyclic(4)
    m1 = make_map(k4, (1, 2))
    m2 = make_map(z4, (1, 3))
    isos = map_isomorphisms(m1, m2)
    assert isos
    for morphism in isos:
        morphism.validate()
    # same 4-cycle map, but no Cayley isomorphism between different groups
    assert are_cayley_isomorphic(m1, m2) is None


def test_isomorphisms_of_map_with_itself(z8):
    m = unit_map(z8)
    isos = map_isomorphisms(m, m)
    group = map_automorphism_group(m)
    assert sorted(i.images for i in isos) == list(group.elements)


def test_different_valency_no_isomorphism(z8):
    assert map_isomorphisms(unit_map(z8), make_map(z8, (1, 7))) == []


def test_composition_of_isomorphisms(z8):
    m1 = unit_map(z8)
    m2 = make_map(z8, (1, 7, 5, 3))
    isos12 = map_isomorphisms(m1, m2)
    isos21 = map_isomorphisms(m2, m1)
    all11 = {i.images for i in map_isomorphisms(m1, m1)}
    for a in isos12[:5]:
        for b in isos21[:5]:
            composed = tuple(b.images[x] for x in a.images)
            assert composed in all11


def test_morphism_validation_rejects_scramble(z8):
    m = unit_map(z8)
    bad = MapMorphism(m, m, (0, 2, 1, 3, 4, 5, 6, 7))
    with pytest.raises(ValueError):
        bad.validate()


def test_bruteforce_matches_extension_for_connected(z8):
    m1 = unit_map(z8)
    m2 = make_map(z8, (1, 7, 5, 3))
    assert (map_iso_exists(m1, m2) is not None) == \
        (bruteforce_map_isomorphism(m1, m2) is not None)


def test_bruteforce_handles_disconnected(z8):
    m1 = make_map(z8, (2, 6))
    m2 = make_map(z8, (2, 6))
    found = bruteforce_map_isomorphism(m1, m2)
    assert found is not None
    MapMorphism(m1, m2, found).validate()
    # disconnected 2-regular map vs a different component shape
    m3 = make_map(z8, (4,))
    assert bruteforce_map_isomorphism(m1, m3) is None


# ------------------------------------------------------- cayley isomorphism

def test_cayley_iso_after_automorphism(z8):
    from cimlab.maps import apply_group_automorphism

    m = unit_map(z8)
    sigma = GroupIsomorphism(z8, z8, tuple(3 * x % 8 for x in range(8)))
    image = apply_group_automorphism(m, sigma)
    witness = are_cayley_isomorphic(m, image)
    assert witness is not None
    witness.validate()


def test_unit_map_and_mirror_cayley_isomorphic(z8):
    # negation carries (1,3,5,7) to (1,7,5,3)
    m1 = unit_map(z8)
    m2 = make_map(z8, (1, 7, 5, 3))
    witness = are_cayley_isomorphic(m1, m2)
    assert witness is not None
    # both x -> 3x and x -> 7x carry one rotation to the other
    assert witness.images in {
        tuple(3 * x % 8 for x in range(8)),
        tuple(7 * x % 8 for x in range(8)),
    }
    # independent check of the witness
    rot2 = m2.rotation
    nxt2 = {rot2[i]: rot2[(i + 1) % 4] for i in range(4)}
    for i, s in enumerate(m1.rotation):
        nxt = m1.rotation[(i + 1) % 4]
        assert witness.images[nxt] == nxt2[witness.images[s]]


def test_cayley_iso_needs_isomorphic_groups(q8, z8):
    m_q = make_map(q8, (1, 4, 3, 6))
    m_z = unit_map(z8)
    assert are_cayley_isomorphic(m_q, m_z) is None


# ---------------------------------------------- identity stabilizer blocks

def test_fix_of_stabilizer_subgroups_is_block(z8):
    for m in (unit_map(z8), lemma_orbit_map()):
        group = map_automorphism_group(m)
        stab = point_stabilizer(group, 0)
        assert is_cyclic_permgroup(stab)
        from cimlab.perms import closure, is_block

        seen = set()
        for p in stab.elements:
            sub = closure([p])
            if sub.elements in seen:
                continue
            seen.add(sub.elements)
            assert is_block(group, fixed_points(list(sub.elements)))

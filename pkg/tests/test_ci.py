import pytest

from cimlab.ci import (
    babai_is_ci_map,
    cross_validate,
    definitional_is_ci_map,
    verify_cim_group,
    verify_connected_cim,
)
from cimlab.enumeration import (
    cayley_class_key,
    connection_sets,
    enumerate_cayley_maps,
    total_map_count,
)
from cimlab.errors import CapacityError, UnsupportedReductionError
from cimlab.groups import (
    all_subgroups,
    automorphisms,
    make_abelian,
    make_cyclic,
)
from cimlab.maps import apply_group_automorphism, is_connected, make_map
from cimlab.mapiso import are_cayley_isomorphic, map_iso_exists


def lemma_orbit_map():
    z9 = make_cyclic(9)
    rot, x = [], 1
    for _ in range(6):
        rot.append(x)
        x = 5 * x % 9
    return make_map(z9, rot)


# ------------------------------------------------------------- enumeration

def test_connection_sets_z8(z8):
    sets = connection_sets(z8, 7)
    assert len(sets) == 15
    cells = {frozenset({4}), frozenset({1, 7}), frozenset({2, 6}), frozenset({3, 5})}
    for s in sets:
        rest = set(s)
        used = [c for c in cells if c <= rest]
        assert set().union(*used) == rest


def test_total_map_count_z8_golden(z8):
    assert total_map_count(z8, 7) == 940


def test_valency_two_has_single_rotation(z8):
    maps = [m for m in enumerate_cayley_maps(z8, 2) if m.valency == 2]
    by_set = {}
    for m in maps:
        by_set.setdefault(m.connection_set, []).append(m)
    for group in by_set.values():
        assert len(group) == 1


def test_enumeration_no_duplicates(z8):
    seen = set()
    for m in enumerate_cayley_maps(z8, 7):
        assert m.rotation not in seen
        seen.add(m.rotation)
    assert len(seen) == 940


def test_up_to_cayley_iso_mode(z8):
    all_maps = list(enumerate_cayley_maps(z8, 7))
    reps = list(enumerate_cayley_maps(z8, 7, "up-to-cayley-iso"))
    keys = {cayley_class_key(m) for m in all_maps}
    assert len(reps) == len(keys)
    assert {m.rotation for m in reps} == keys


# ---------------------------------------------------------------- verdicts

def test_orbit_map_not_ci():
    report = babai_is_ci_map(lemma_orbit_map())
    assert report.verdict is False
    kinds = [w["kind"] for w in report.witnesses]
    assert "non-conjugate-regular-subgroup" in kinds
    assert "isomorphic-non-cayley-isomorphic-map" in kinds


def test_antibalanced_16_not_ci():
    z16 = make_cyclic(16)
    m = make_map(z16, (1, 15, 3, 5, 9, 7, 11, 13))
    report = babai_is_ci_map(m)
    assert report.verdict is False
    rival = next(w for w in report.witnesses
                 if w["kind"] == "non-conjugate-regular-subgroup")
    assert rival["order"] == 16


def test_unit_map_is_ci(z8):
    report = babai_is_ci_map(make_map(z8, (1, 3, 5, 7)))
    assert report.verdict is True


def test_babai_invariant_under_group_automorphisms(z8):
    for m in (make_map(z8, (1, 3, 5, 7)), lemma_orbit_map()):
        base = babai_is_ci_map(m).verdict
        for sigma in automorphisms(m.group):
            assert babai_is_ci_map(apply_group_automorphism(m, sigma)).verdict == base


def test_babai_invariant_under_mirror(z8):
    # a map and its mirror share the same automorphism group
    for m in (make_map(z8, (1, 3, 5, 7)), lemma_orbit_map(),
              make_map(z8, (1, 2, 6, 7))):
        assert babai_is_ci_map(m).verdict == babai_is_ci_map(m.mirror()).verdict


def test_regular_witness_map_properties():
    m = lemma_orbit_map()
    report = babai_is_ci_map(m)
    other = next(w for w in report.witnesses
                 if w["kind"] == "isomorphic-non-cayley-isomorphic-map")
    witness = make_map(m.group, other["other"])
    assert map_iso_exists(m, witness) is not None
    assert are_cayley_isomorphic(m, witness) is None


# ------------------------------------------------------------ definitional

def test_definitional_agrees_on_orbit_map():
    report = definitional_is_ci_map(lemma_orbit_map())
    assert report.verdict is False
    assert report.witnesses


def test_definitional_single_involution_map():
    z2 = make_cyclic(2)
    report = definitional_is_ci_map(make_map(z2, (1,)))
    assert report.verdict is True


def test_definitional_bruteforce_backend(k4):
    m = make_map(k4, (1, 2))
    assert definitional_is_ci_map(m, backend="bruteforce").verdict == \
        definitional_is_ci_map(m, backend="auto").verdict


def test_definitional_cap():
    z16 = make_cyclic(16)
    with pytest.raises(CapacityError):
        definitional_is_ci_map(make_map(z16, (1, 15, 3, 5, 9, 7, 11, 13)))


def test_definitional_detects_disconnected_witness():
    # over Z2 x Z4 the two involution types give isomorphic but not
    # Cayley-isomorphic single-edge maps
    g = make_abelian([2, 4])
    square = next(x for x in g.elements() if x != 0 and g.table[x][x] == 0
                  and any(g.table[y][y] == x for y in g.elements()))
    non_square = next(x for x in g.elements() if x != 0 and g.table[x][x] == 0
                      and x != square)
    m = make_map(g, (square,))
    report = definitional_is_ci_map(m)
    assert report.verdict is False


# ------------------------------------------------------------ group-level

def test_verify_cim_z2():
    report = verify_cim_group(make_cyclic(2), 1)
    assert report.verdict is True


def test_verify_cim_z8(z8):
    report = verify_cim_group(z8, 7)
    assert report.verdict is True
    assert report.stats["maps_connected"] == 936
    assert report.stats["maps_disconnected"] == 4
    assert report.stats["maps_total"] == 940


def test_verify_cim_z9_false(z9):
    report = verify_cim_group(z9, 8)
    assert report.verdict is False
    assert report.notes["first_failing_map"]


def test_verify_connected_z4_full():
    report = verify_connected_cim(make_cyclic(4), 3)
    assert report.verdict is True


def test_verify_connected_z3sq_false(z3sq):
    report = verify_connected_cim(z3sq, 6)
    assert report.verdict is False


def test_strategies_agree_on_small_cyclic():
    for n, maxval in ((5, 4), (7, 6), (8, 7), (9, 8)):
        h = make_cyclic(n)
        a = verify_connected_cim(h, maxval, strategy="exhaustive")
        b = verify_connected_cim(h, maxval, strategy="stabilizer")
        assert a.verdict == b.verdict, (n, a.verdict, b.verdict)


def test_stabilizer_strategy_finds_all_rich_maps():
    # against exhaustive stabilizer detection
    from cimlab.ci import _rich_maps_cyclic
    from cimlab.mapiso import stabilizer_automorphisms

    for n, maxval in ((5, 4), (6, 5), (8, 7), (9, 8)):
        h = make_cyclic(n)
        rich, _ = _rich_maps_cyclic(h, maxval)
        expected = set()
        for m in enumerate_cayley_maps(h, maxval):
            if is_connected(m) and len(stabilizer_automorphisms(m)) > 1:
                expected.add(m.rotation)
        assert {m.rotation for m in rich} == expected


def test_stabilizer_strategy_rejects_noncyclic(k4):
    with pytest.raises(CapacityError):
        verify_connected_cim(k4, 3, strategy="stabilizer")


def test_verify_cim_unsupported_reduction():
    # over Z2 x Z4 the two involution types generate subgroups that no
    # automorphism exchanges; at valency 1 there are no connected maps,
    # so the disconnected reduction is reached and must refuse
    g = make_abelian([2, 4])
    with pytest.raises(UnsupportedReductionError):
        verify_cim_group(g, 1)


def test_verify_cim_z2x4_false_via_connected_witness():
    # at full valency the connected sweep already finds a non-CI map,
    # so the verdict is reported before the reduction is consulted
    report = verify_cim_group(make_abelian([2, 4]), 7)
    assert report.verdict is False


def test_subgroup_heredity_of_z8(z8):
    # every subgroup of a verified CIM-group is a connected CIM-group
    assert verify_cim_group(z8, 7).verdict is True
    for sub in all_subgroups(z8):
        if sub.order == 1:
            continue
        k = sub.as_group()
        assert verify_connected_cim(k, k.order - 1).verdict is True


# ---------------------------------------------------------- cross validate

@pytest.mark.parametrize("spec", ["cyclic:4", "abelian:2,2", "semidirect:cyclic:3,2,neg"])
def test_cross_validate_small(spec):
    from cimlab.cli import parse_group_spec

    report = cross_validate(parse_group_spec(spec))
    assert report.verdict is True
    assert report.stats["discrepancies"] == 0


def test_cross_validate_cap():
    with pytest.raises(CapacityError):
        cross_validate(make_cyclic(9))


# ------------------------------------------------------------- workers

def test_worker_counts_do_not_change_reports(z9):
    r1 = verify_cim_group(z9, 8, workers=1)
    r2 = verify_cim_group(z9, 8, workers=2)
    assert r1.verdict == r2.verdict
    assert r1.to_json_dict() == r2.to_json_dict()


@pytest.mark.slow
def test_verify_connected_z16_valency8_false():
    # the antibalanced valency-8 witness is found by the stabilizer sweep
    z16 = make_cyclic(16)
    report = verify_connected_cim(z16, 8, strategy="stabilizer")
    assert report.verdict is False


@pytest.mark.slow
def test_strategies_agree_on_z11_full_valency():
    h = make_cyclic(11)
    a = verify_connected_cim(h, 10, strategy="exhaustive", workers=2)
    b = verify_connected_cim(h, 10, strategy="stabilizer")
    assert a.verdict is True and b.verdict is True

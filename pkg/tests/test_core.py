import pytest
from hypothesis import given, settings

from conftest import closure_spaces
from oracles import closure, join, meet, order_closure, powerset
from spcls import errors
from spcls.bits import members
from spcls.core import (
    cartan_map,
    closure_of,
    validate_closure_space,
    validate_lattice,
    validate_sps,
)
from spcls.fixtures import FIVE_STATE_ORDER

NAMES = ["0", "a", "b", "c", "d", "I"]


def test_five_state_lattice_against_bound_search():
    lat = validate_lattice(FIVE_STATE_ORDER, NAMES)
    leq = order_closure(NAMES, FIVE_STATE_ORDER)
    for x in NAMES:
        for y in NAMES:
            i, j = lat.index(x), lat.index(y)
            assert lat.names[lat.join(i, j)] == join(NAMES, leq, x, y)
            assert lat.names[lat.meet(i, j)] == meet(NAMES, leq, x, y)
    # frozen from the oracle above
    ix = lat.index
    assert lat.names[lat.join(ix("a"), ix("b"))] == "d"
    assert lat.names[lat.join(ix("a"), ix("c"))] == "I"
    assert lat.names[lat.meet(ix("c"), ix("d"))] == "0"
    assert lat.names[lat.bottom] == "0" and lat.names[lat.top] == "I"


def test_hasse_edges_and_full_order_give_same_tables():
    hasse = validate_lattice(FIVE_STATE_ORDER, NAMES)
    full = validate_lattice(sorted(order_closure(NAMES, FIVE_STATE_ORDER)), NAMES)
    assert hasse == full
    assert hasse.order_pairs() == [
        ("0", "a"), ("0", "b"), ("0", "c"), ("a", "d"), ("b", "d"), ("c", "I"), ("d", "I"),
    ]


def test_one_element_lattice():
    lat = validate_lattice([], ["e"])
    assert lat.bottom == lat.top == 0


def test_cycle_rejected():
    with pytest.raises(errors.CycleDetected):
        validate_lattice([("x", "y"), ("y", "x")], ["x", "y"])


@pytest.mark.parametrize(
    "pairs, names, exc",
    [
        ([("0", "a"), ("0", "b")], ["0", "a", "b"], errors.NoTop),
        ([("a", "I"), ("b", "I")], ["a", "b", "I"], errors.NoBottom),
        # two incomparable upper bounds of a and b below the top
        (
            [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"),
             ("c", "I"), ("d", "I")],
            ["0", "a", "b", "c", "d", "I"],
            errors.NoJoin,
        ),
        (
            [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"),
             ("c", "I"), ("d", "I")][::-1],
            ["I", "d", "c", "b", "a", "0"],
            errors.LatticeError,
        ),
    ],
)
def test_non_lattices_rejected(pairs, names, exc):
    with pytest.raises(exc):
        validate_lattice(pairs, names)


def test_no_meet_reported_with_pair():
    pairs = [("0", "c"), ("0", "d"), ("c", "a"), ("c", "b"), ("d", "a"), ("d", "b"),
             ("a", "I"), ("b", "I")]
    with pytest.raises(errors.NoMeet) as info:
        validate_lattice(pairs, ["0", "a", "b", "c", "d", "I"])
    assert set(info.value.pair) == {"a", "b"}


def test_five_state_system_valid(ex5):
    assert ex5.states == ("p", "q", "r", "s", "t")
    assert [ex5.state_set(k) for k in ex5.kappa] == [
        "{}", "{r}", "{p,q}", "{s,t}", "{p,q,r}", "{p,q,r,s,t}",
    ]


def _ex5_xi(**changes):
    xi = {
        "p": ["b", "d", "I"], "q": ["b", "d", "I"], "r": ["a", "d", "I"],
        "s": ["c", "I"], "t": ["c", "I"],
    }
    xi.update(changes)
    return xi


def test_axiom1_violation():
    lat = validate_lattice(FIVE_STATE_ORDER, NAMES)
    with pytest.raises(errors.Axiom1Violation) as info:
        validate_sps("pqrst", lat, _ex5_xi(p=["0", "b", "d", "I"]))
    assert info.value.state == "p"
    assert "axiom (1)" in str(info.value)


def test_removing_d_from_r_breaks_axiom3():
    lat = validate_lattice(FIVE_STATE_ORDER, NAMES)
    with pytest.raises(errors.Axiom3Violation) as info:
        validate_sps("pqrst", lat, _ex5_xi(r=["a", "I"]))
    assert info.value.pair == ("a", "d")
    assert "a <= d" in info.value.direction


def test_axiom2_violation_has_witness():
    lat = validate_lattice(FIVE_STATE_ORDER, NAMES)
    with pytest.raises(errors.Axiom2Violation) as info:
        validate_sps("pqrst", lat, _ex5_xi(p=["b", "c", "d", "I"]))
    assert info.value.state == "p"
    assert info.value.witness == ("b", "c") and info.value.missing == "0"


def test_missing_top_is_axiom2():
    lat = validate_lattice(FIVE_STATE_ORDER, NAMES)
    with pytest.raises(errors.Axiom2Violation) as info:
        validate_sps("pqrst", lat, _ex5_xi(s=["c"]))
    assert info.value.witness == ()


def test_degenerate_systems():
    one = validate_lattice([], ["0"])
    empty = validate_sps([], one, {})
    assert empty.kappa == (0,)
    with pytest.raises(errors.Axiom2Violation):
        validate_sps(["p"], one, {"p": []})
    with pytest.raises(errors.Axiom1Violation):
        validate_sps(["p"], one, {"p": ["0"]})


def test_closure_space_validation():
    cs = validate_closure_space(
        "pqrst", [[], ["r"], ["p", "q"], ["s", "t"], ["p", "q", "r"], list("pqrst")]
    )
    assert [cs.format(c) for c in cs.closed] == [
        "{}", "{r}", "{p,q}", "{s,t}", "{p,q,r}", "{p,q,r,s,t}",
    ]
    indiscrete = validate_closure_space("xy", [[], ["x", "y"], ["y", "x"]])
    assert len(indiscrete.closed) == 2
    with pytest.raises(errors.NotIntersectionClosed) as info:
        validate_closure_space("pqr", [[], ["p", "q"], ["q", "r"], ["p", "q", "r"]])
    assert info.value.pair == ("{p,q}", "{q,r}")
    with pytest.raises(errors.MissingEmpty):
        validate_closure_space("pq", [["p"], ["p", "q"]])
    with pytest.raises(errors.MissingFull):
        validate_closure_space("pq", [[], ["p"]])


def test_cartan_map(ex5):
    assert ex5.state_set(cartan_map(ex5, "a")) == "{r}"
    assert cartan_map(ex5, "0") == 0
    assert cartan_map(ex5, "I") == 0b11111


def test_closure_of(ex5):
    from spcls.categorical import functor_F_obj

    cs = functor_F_obj(ex5)
    assert cs.format(closure_of(cs, ["p"])) == "{p,q}"
    assert closure_of(cs, 0) == 0
    for c in cs.closed:
        assert closure_of(cs, c) == c


def test_kappa_of_meets_is_intersection(ex5):
    lat = ex5.lattice
    for family in powerset(range(len(lat))):
        expected = 0b11111
        for a in family:
            expected &= ex5.kappa[a]
        assert ex5.kappa[lat.meet_all(family)] == expected


@settings(max_examples=60, deadline=None)
@given(closure_spaces())
def test_closure_operator_laws(cs):
    points = cs.points
    family = [frozenset(points[i] for i in members(c)) for c in cs.closed]
    fixpoints = set()
    for a in range(cs.full + 1):
        cl = closure_of(cs, a)
        names = frozenset(points[i] for i in members(a))
        assert frozenset(points[i] for i in members(cl)) == closure(points, family, names)
        assert a & ~cl == 0
        assert closure_of(cs, cl) == cl
        for b in range(cs.full + 1):
            if a & ~b == 0:
                assert cl & ~closure_of(cs, b) == 0
        if cl == a:
            fixpoints.add(a)
    assert fixpoints == set(cs.closed)

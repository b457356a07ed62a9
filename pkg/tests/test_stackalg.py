import random
from fractions import Fraction

import pytest

from _models import assert_product_laws, random_model, random_model_pair
from wallcross.errors import ArityError, BoundExceededError, GroupTooLargeError
from wallcross.stackalg import (
    Atom,
    FactorMultiset,
    FiniteGroupoidModel,
    MapKind,
    Named,
    Point,
    Product,
    SymQuotient,
    canonicalize,
    classify_product_map,
    default_point_ids,
    groupoid_cardinality,
    orbit_space,
    product_model,
    product_of,
    sym_quotient_model,
)

F = Fraction

S3_GENS = ((1, 2, 0), (1, 0, 2))


def test_canonicalize_two_distinct_factors():
    desc = canonicalize({"dp3": 1, "dp4": 1})
    assert desc == Product((Atom("dp3"), Atom("dp4")))
    assert str(desc) == "dp3 x dp4"


def test_canonicalize_repeated_factor():
    desc = canonicalize({"dp4": 2, "p1": 1})
    assert desc == SymQuotient(Atom("dp4"), 2)
    assert str(desc) == "[dp4^2/S2]"


def test_canonicalize_points_only():
    assert canonicalize({"p1": 3}) == Point()
    assert str(Point()) == "pt"


def test_canonicalize_mixed():
    desc = canonicalize({"dp3": 1, "dp4": 2, "p1": 2})
    assert desc == Product((Atom("dp3"), SymQuotient(Atom("dp4"), 2)))
    assert str(desc) == "dp3 x [dp4^2/S2]"


def test_canonicalize_iso_classes_merge():
    desc = canonicalize({"dp3": 1, "dp4": 1}, iso=({"dp3", "dp4"},))
    assert desc == SymQuotient(Atom("dp3"), 2)  # least id of the class


def test_canonicalize_input_order_invariance():
    rng = random.Random(99)
    items = ["dp3", "dp4", "dp4", "p1", "dp3", "dp3"]
    reference = canonicalize(items)
    assert reference == Product(
        (SymQuotient(Atom("dp3"), 3), SymQuotient(Atom("dp4"), 2))
    )
    for _ in range(10):
        shuffled = items[:]
        rng.shuffle(shuffled)
        assert canonicalize(shuffled) == reference


def test_canonicalize_explicit_point_ids():
    desc = canonicalize({"a": 1, "z": 1}, point_ids=frozenset({"z"}))
    assert desc == Atom("a")
    assert canonicalize({"z": 4}, point_ids=frozenset({"z"})) == Point()


def test_default_point_ids():
    assert default_point_ids() == frozenset({"p1"})


def test_descriptor_sort_order():
    desc = product_of([Named("P(1,2,3)"), SymQuotient(Atom("zz"), 2), Atom("dp3")])
    assert desc == Product(
        (Atom("dp3"), Named("P(1,2,3)"), SymQuotient(Atom("zz"), 2))
    )
    assert str(desc) == "dp3 x P(1,2,3) x [zz^2/S2]"


def test_product_of_flattens_and_elides():
    inner = Product((Atom("a"), Atom("b")))
    assert product_of([inner, Point(), Atom("c")]) == Product(
        (Atom("a"), Atom("b"), Atom("c"))
    )
    assert product_of([Point(), Point()]) == Point()
    assert product_of([Atom("a"), Point()]) == Atom("a")


def test_descriptor_validation():
    with pytest.raises(ValueError):
        Product((Atom("b"), Atom("a")))  # not sorted
    with pytest.raises(ValueError):
        Product((Atom("a"),))  # too few
    with pytest.raises(ValueError):
        Product((Atom("a"), Point()))  # point not elided
    with pytest.raises(ValueError):
        Product((Atom("a"), Product((Atom("b"), Atom("c")))))  # nested
    with pytest.raises(ValueError):
        SymQuotient(Atom("a"), 1)
    with pytest.raises(ValueError):
        SymQuotient(Point(), 2)


def test_descriptor_json():
    desc = canonicalize({"dp3": 1, "dp4": 2})
    assert desc.to_json() == {
        "kind": "product",
        "children": [
            {"kind": "atom", "id": "dp3"},
            {"kind": "sym", "base": {"kind": "atom", "id": "dp4"}, "power": 2},
        ],
    }
    assert Point().to_json() == {"kind": "point"}
    assert Named("P(1,2,3)").to_json() == {"kind": "named", "name": "P(1,2,3)"}


def test_factor_multiset_normalization():
    fm = FactorMultiset.of([("a", 1), ("b", 2), ("a", 2)])
    assert fm.entries == (("a", 3), ("b", 2))
    assert fm.total() == 5
    assert FactorMultiset.of(["a", "b", "a"]).entries == (("a", 2), ("b", 1))
    assert FactorMultiset.of({"a": 1}).entries == (("a", 1),)
    with pytest.raises(ValueError):
        FactorMultiset.of({"a": 0})
    with pytest.raises(ValueError):
        FactorMultiset((("a", 1),), (frozenset({"a", "b"}), frozenset({"b", "c"})))


def test_factor_multiset_grouping():
    fm = FactorMultiset.of({"dp3": 1, "dp4": 1}, iso=({"dp3", "dp4"},))
    assert fm.grouped() == (("dp3", 2),)
    assert fm.class_of("dp3") == frozenset({"dp3", "dp4"})
    assert fm.class_of("p1") == frozenset({"p1"})
    plain = FactorMultiset.of({"dp3": 2, "p1": 1})
    assert plain.grouped() == (("dp3", 2), ("p1", 1))


def test_classify_product_map():
    assert classify_product_map({"dp3": 1, "dp4": 1}) is MapKind.ISOMORPHISM
    assert classify_product_map({"dp3": 2}) is MapKind.S2_GERBE
    assert (
        classify_product_map({"dp3": 1, "dp4": 1}, iso=({"dp3", "dp4"},))
        is MapKind.S2_GERBE
    )
    assert MapKind.S2_GERBE.value == "s2-gerbe"
    assert MapKind.ISOMORPHISM.value == "isomorphism"
    with pytest.raises(ArityError):
        classify_product_map({"dp3": 3})
    with pytest.raises(ArityError):
        classify_product_map({"dp3": 1})
    with pytest.raises(ArityError):
        classify_product_map({"dp3": 1, "dp4": 1, "p1": 1})


def test_classify_is_slot_symmetric():
    assert classify_product_map({"dp4": 1, "dp3": 1}) == classify_product_map(
        {"dp3": 1, "dp4": 1}
    )


def test_s3_orbit_space():
    model = FiniteGroupoidModel(("x", "y", "z"), S3_GENS)
    assert model.group_order() == 6
    orbits = orbit_space(model)
    assert len(orbits) == 1
    assert orbits[0].points == ("x", "y", "z")
    assert orbits[0].stabilizer_order == 2
    assert orbits[0].representative == "x"
    assert orbits[0].size == 3
    assert groupoid_cardinality(model) == F(1, 2)


def test_trivial_group_orbit_space():
    model = FiniteGroupoidModel(("w", "x", "y", "z"), ())
    assert model.group_order() == 1
    orbits = orbit_space(model)
    assert len(orbits) == 4
    assert all(o.stabilizer_order == 1 and o.size == 1 for o in orbits)
    assert groupoid_cardinality(model) == 4


def test_half_point_cardinality():
    model = FiniteGroupoidModel(("a", "b", "c"), ((1, 0, 2),))
    orbits = orbit_space(model)
    assert [(o.points, o.stabilizer_order) for o in orbits] == [
        (("a", "b"), 1),
        (("c",), 2),
    ]
    assert groupoid_cardinality(model) == F(3, 2)


def test_model_validates_generators():
    with pytest.raises(ValueError):
        FiniteGroupoidModel(("a", "b"), ((0, 0),))
    with pytest.raises(ValueError):
        FiniteGroupoidModel(("a", "b"), ((0, 1, 2),))


def test_group_order_bound_enforced():
    model = FiniteGroupoidModel(tuple(range(4)), ((1, 2, 3, 0), (1, 0, 2, 3)), 10)
    with pytest.raises(GroupTooLargeError):
        model.group_order()  # S4 has order 24 > 10


def test_product_model_example():
    s3 = FiniteGroupoidModel(("x", "y", "z"), S3_GENS)
    swap = FiniteGroupoidModel(("a", "b"), ((1, 0),))
    prod = product_model(s3, swap)
    assert prod.group_order() == 12
    orbits = orbit_space(prod)
    assert len(orbits) == 1
    assert orbits[0].size == 6
    assert orbits[0].stabilizer_order == 2  # 2 * 1
    assert orbits[0].representative == ("x", "a")


def test_product_model_unit_law():
    one = FiniteGroupoidModel(("*",), ())
    s3 = FiniteGroupoidModel(("x", "y", "z"), S3_GENS)
    left = orbit_space(product_model(one, s3))
    right = orbit_space(product_model(s3, one))
    base = orbit_space(s3)
    assert [(o.size, o.stabilizer_order) for o in left] == [
        (o.size, o.stabilizer_order) for o in base
    ]
    assert [(o.size, o.stabilizer_order) for o in right] == [
        (o.size, o.stabilizer_order) for o in base
    ]
    assert [tuple(p[1] for p in o.points) for o in left] == [o.points for o in base]


def test_product_model_bound_check_precedes_closure():
    s3a = FiniteGroupoidModel(tuple(range(3)), S3_GENS)
    with pytest.raises(GroupTooLargeError):
        product_model(s3a, s3a, order_bound=10)  # 36 > 10


def test_product_laws_random_pairs():
    rng = random.Random(616)
    for _ in range(30):
        a, b = random_model_pair(rng)
        assert_product_laws(a, b)


def test_sym_quotient_counts():
    six = FiniteGroupoidModel(tuple(range(6)), ())
    assert sym_quotient_model(six, 2) == 21
    assert sym_quotient_model(six, 3) == 56
    assert sym_quotient_model(six, 1) == 6
    one = FiniteGroupoidModel(("*",), ())
    assert sym_quotient_model(one, 5) == 1
    s3 = FiniteGroupoidModel(tuple(range(3)), S3_GENS)
    assert sym_quotient_model(s3, 4) == 1  # a single orbit underneath
    with pytest.raises(ValueError):
        sym_quotient_model(six, 0)


def test_sym_quotient_enumeration_bound():
    big = FiniteGroupoidModel(tuple(range(120)), ())
    with pytest.raises(BoundExceededError):
        sym_quotient_model(big, 3)  # 120^3 > 10^6


def test_cardinality_equals_carrier_over_group():
    rng = random.Random(717)
    for _ in range(25):
        model = random_model(rng)
        assert groupoid_cardinality(model) == F(
            len(model.carrier), model.group_order()
        )


def test_orbit_partition_matches_orbit_space():
    rng = random.Random(818)
    for _ in range(25):
        model = random_model(rng)
        parts = model.orbit_partition()
        assert sorted(i for block in parts for i in block) == list(
            range(len(model.carrier))
        )
        spaces = orbit_space(model)
        assert [o.points for o in spaces] == [
            tuple(model.carrier[i] for i in block) for block in parts
        ]
        for o in spaces:
            assert o.size * o.stabilizer_order == model.group_order()


def test_model_json():
    model = FiniteGroupoidModel(("a", "b"), ((1, 0),))
    assert model.to_json() == {"carrier": ["a", "b"], "generators": [[1, 0]]}

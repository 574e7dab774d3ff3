import random

import pytest

from baerkit.core import (
    GroupError,
    Subgroup,
    center,
    centralizer,
    derived_length,
    derived_series,
    derived_subgroup,
    direct_product,
    exponent,
    factorize,
    frattini_p_group,
    is_metabelian,
    lower_central_series,
    nilpotency_class,
    normal_closure,
    normalizer,
    quotient,
    sylow_decomposition,
    upper_central_series,
)
from baerkit.verify import build_group, cyclic_presentation, dihedral_presentation

from oracles import (
    c6_model,
    d8_model,
    find_isomorphism,
    naive_center,
    naive_order,
    q8_model,
    s3_model,
)


def _orders(group):
    return sorted(group.element_order(e) for e in range(group.size))


def test_factorize_frozen_values():
    assert factorize(1) == {}
    assert factorize(720) == {2: 4, 3: 2, 5: 1}
    assert factorize(15625) == {5: 6}


def test_identity_and_inverses(s4):
    for e in range(s4.size):
        assert s4.mult(e, 0) == e
        assert s4.mult(0, e) == e
        assert s4.mult(e, s4.inv(e)) == 0
        assert s4.mult(s4.inv(e), e) == 0


def test_multiplication_is_associative_on_sampled_triples(s4):
    rng = random.Random(7)
    for _ in range(300):
        a, b, c = (rng.randrange(s4.size) for _ in range(3))
        assert s4.mult(s4.mult(a, b), c) == s4.mult(a, s4.mult(b, c))


def test_presented_groups_match_hand_built_models(s3):
    assert find_isomorphism(s3, s3_model(), {"a": 3, "b": 1})
    c6 = build_group(cyclic_presentation(6), name="C6")
    assert find_isomorphism(c6, c6_model(), {"a": 1})


def test_s3_isomorphism_via_generator_search(s3):
    model = s3_model()
    a = s3.gen_element(0)
    b = s3.gen_element(1)
    candidates_a = [e for e in range(model.size) if naive_order(model, e) == 3]
    candidates_b = [e for e in range(model.size) if naive_order(model, e) == 2]
    assert any(
        find_isomorphism(s3, model, {"a": ia, "b": ib})
        for ia in candidates_a for ib in candidates_b)
    assert s3.element_order(a) == 3
    assert s3.element_order(b) == 2


def test_q8_isomorphism_via_generator_search(q8):
    model = q8_model()
    fours = [e for e in range(model.size) if naive_order(model, e) == 4]
    assert any(
        find_isomorphism(q8, model, {"a": ia, "b": ib})
        for ia in fours for ib in fours)


def test_d8_isomorphism_via_generator_search(d8):
    model = d8_model()
    fours = [e for e in range(model.size) if naive_order(model, e) == 4]
    twos = [e for e in range(model.size) if naive_order(model, e) == 2]
    assert any(
        find_isomorphism(d8, model, {"r": ir, "s": is_})
        for ir in fours for is_ in twos)


def test_element_order_profiles_frozen(s3, d8, q8):
    assert _orders(s3) == [1, 2, 2, 2, 3, 3]
    assert _orders(d8) == [1, 2, 2, 2, 2, 2, 4, 4]
    assert _orders(q8) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_power_matches_iterated_multiplication(s4):
    rng = random.Random(3)
    for _ in range(50):
        e = rng.randrange(s4.size)
        k = rng.randrange(-12, 13)
        acc = 0
        step = e if k >= 0 else s4.inv(e)
        for _ in range(abs(k)):
            acc = s4.mult(acc, step)
        assert s4.power(e, k) == acc


def test_center_orders_frozen(s3, d8, q8):
    assert center(s3).size == 1
    assert center(d8).size == 2
    assert center(q8).size == 2
    assert set(center(q8).elements) == {
        e for e in range(q8.size) if q8.element_order(e) <= 2}


def test_center_agrees_with_naive_scan(d8, q8):
    for group in (d8, q8):
        assert set(center(group).elements) == set(naive_center(group))


def test_conjugacy_class_sizes_frozen(s3, d8, q8, s4):
    assert sorted(len(c) for c in s3.conjugacy_classes()) == [1, 2, 3]
    assert sorted(len(c) for c in d8.conjugacy_classes()) == [1, 1, 2, 2, 2]
    assert sorted(len(c) for c in q8.conjugacy_classes()) == [1, 1, 2, 2, 2]
    assert sorted(len(c) for c in s4.conjugacy_classes()) == [1, 3, 6, 6, 8]


def test_conjugation_preserves_order_and_class(s4):
    rng = random.Random(11)
    for _ in range(100):
        x = rng.randrange(s4.size)
        g = rng.randrange(s4.size)
        y = s4.conj(x, g)
        assert s4.element_order(x) == s4.element_order(y)
        assert s4.class_of(x) == s4.class_of(y)


def test_comm_with_perm_matches_pointwise(s4):
    rng = random.Random(13)
    for _ in range(10):
        y = rng.randrange(s4.size)
        table = s4.comm_with_perm(y)
        for x in range(s4.size):
            assert table[x] == s4.comm(x, y)


def test_nilpotency_class_frozen(s3, s4, d8, d16, q8):
    assert nilpotency_class(s3) is None
    assert nilpotency_class(s4) is None
    assert nilpotency_class(d8) == 2
    assert nilpotency_class(d16) == 3
    assert nilpotency_class(q8) == 2
    c6 = build_group(cyclic_presentation(6))
    assert nilpotency_class(c6) == 1


def test_lower_central_series_of_dihedral_16(d16):
    sizes = [s.size for s in lower_central_series(d16)]
    assert sizes == [16, 4, 2, 1]


def test_upper_central_series_starts_at_center(d8, d16):
    series = upper_central_series(d8)
    assert [s.size for s in series] == [2, 8]
    series = upper_central_series(d16)
    assert [s.size for s in series] == [2, 4, 16]


def test_derived_series_and_length(s3, s4, q8):
    assert [s.size for s in derived_series(s4)] == [24, 12, 4, 1]
    assert derived_length(s4) == 3
    assert derived_length(s3) == 2
    assert derived_length(q8) == 2
    assert is_metabelian(s3)
    assert not is_metabelian(s4)


def test_derived_subgroup_frozen(s3, d8, q8):
    assert derived_subgroup(s3).size == 3
    assert derived_subgroup(d8).size == 2
    assert derived_subgroup(q8).size == 2


def test_exponent_frozen(s3, q8):
    assert exponent(s3) == 6
    assert exponent(q8) == 4
    c12 = build_group(cyclic_presentation(12))
    assert exponent(c12) == 12


def test_normal_closure_in_symmetric_groups(s3, s4):
    b = s3.gen_element(1)
    assert normal_closure(Subgroup.generated(s3, [b]), s3).size == 6
    a = s3.gen_element(0)
    assert normal_closure(Subgroup.generated(s3, [a]), s3).size == 3
    double = s4.power(s4.gen_element(0), 2)
    assert normal_closure(Subgroup.generated(s4, [double]), s4).size == 4


def test_centralizer_and_normalizer_in_d8(d8):
    r = d8.gen_element(0)
    s = d8.gen_element(1)
    assert centralizer(d8, [r]).size == 4
    assert normalizer(d8, Subgroup.generated(d8, [s])).size == 4
    assert normalizer(d8, Subgroup.generated(d8, [r])).size == 8


def test_subgroup_generated_and_from_elements(d8):
    r = d8.gen_element(0)
    h = Subgroup.generated(d8, [r])
    assert h.size == 4
    again = Subgroup.from_elements(d8, h.elements)
    assert again.elemset == h.elemset
    with pytest.raises(GroupError):
        Subgroup.from_elements(d8, [0, r])


def test_quotient_of_s4_by_klein_four(s4):
    double = s4.power(s4.gen_element(0), 2)
    v4 = normal_closure(Subgroup.generated(s4, [double]), s4)
    q = quotient(s4, v4)
    assert q.size == 6
    assert nilpotency_class(q) is None
    assert derived_length(q) == 2


def test_quotient_of_d8_by_center_is_klein(d8):
    q = quotient(d8, center(d8))
    assert q.size == 4
    assert exponent(q) == 2


def test_quotient_requires_normal_subgroup(d8):
    s = d8.gen_element(1)
    with pytest.raises(GroupError):
        quotient(d8, Subgroup.generated(d8, [s]))


def test_direct_product_c2_c3_is_cyclic():
    c2 = build_group(cyclic_presentation(2))
    c3 = build_group(cyclic_presentation(3))
    g = direct_product(c2, c3)
    assert g.size == 6
    assert _orders(g) == [1, 2, 3, 3, 6, 6]


def test_direct_product_embeddings_commute(q8):
    c3 = build_group(cyclic_presentation(3))
    g = direct_product(q8, c3)
    left = g.meta["embed_left"]
    right = g.meta["embed_right"]
    for a in range(q8.size):
        for b in range(c3.size):
            assert g.mult(left[a], right[b]) == g.mult(right[b], left[a])
    assert nilpotency_class(g) == 2
    assert exponent(g) == 12


def test_sylow_decomposition_of_c12():
    c12 = build_group(cyclic_presentation(12))
    parts = dict(sylow_decomposition(c12))
    assert sorted(parts) == [2, 3]
    assert parts[2].size == 4
    assert parts[3].size == 3


def test_sylow_decomposition_rejects_non_nilpotent(s3):
    with pytest.raises(GroupError):
        sylow_decomposition(s3)


def test_frattini_subgroup_of_two_groups(d8, q8):
    assert frattini_p_group(d8, 2).size == 2
    assert frattini_p_group(q8, 2).size == 2
    assert set(frattini_p_group(q8, 2).elements) == set(center(q8).elements)


def test_frattini_rejects_wrong_prime(d8):
    with pytest.raises(GroupError):
        frattini_p_group(d8, 3)


def test_word_round_trip(s4):
    for e in range(s4.size):
        assert s4.word_to_element(s4.element_word(e)) == e

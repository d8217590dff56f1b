import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import (
    is_faithful_model,
    matrix_model,
    permutation_model,
    s3_perms,
    s4_perms,
    unitriangular,
)

from pcengel import (
    CapacityError,
    InputError,
    PcPresentation,
    commutator,
    consistency_check,
)
from pcengel.pcgroup import format_word, parse_word


def _matmul(p):
    return lambda a, b: tuple(map(tuple, (np.array(a) @ np.array(b)) % p))


def test_s3_collection_matches_permutations(s3):
    assert is_faithful_model(s3, permutation_model(s3, s3_perms()), lambda a, b: a * b)


def test_s4_collection_matches_permutations(entries):
    g = entries["s4"].presentation
    assert g.relative_orders == (2, 3, 2, 2)
    assert is_faithful_model(g, permutation_model(g, s4_perms()), lambda a, b: a * b)


@pytest.mark.parametrize("p", [3, 5])
def test_heis_collection_matches_matrices(entries, p):
    g = entries[f"heis{p}"].presentation
    assert is_faithful_model(g, matrix_model(g, unitriangular(p), p), _matmul(p))


def test_collect_examples(s3, heis5):
    b, a = s3.word("b"), s3.word("a")
    assert (b * a).exponents == (1, 2)
    assert s3.collect([]).is_identity
    x, y, z = heis5.gens
    assert y * x == x * y * z
    assert s3.collect([("b", 1), ("a", 1)]).exponents == (1, 2)


def test_commutator_convention(s3, heis5):
    x, y, z = heis5.gens
    assert commutator(y, x) == z
    assert commutator(x, y) == z.inverse()
    assert commutator(x, x).is_identity
    a, b = s3.gens
    assert commutator(b, a) == b
    assert commutator(x, y, y).is_identity


def test_unknown_symbol_rejected(s3):
    with pytest.raises(InputError):
        s3.word("a*q")
    with pytest.raises(InputError):
        s3.collect([("q", 1)])


def test_consistency_examples():
    s3 = PcPresentation.from_relations("s3", [("a", 2), ("b", 3)], conjugates={("b", "a"): "b^2"})
    v = consistency_check(s3)
    assert v.ok and s3.order == 6
    c6 = PcPresentation.from_relations("c6", [("a", 2), ("b", 3)], conjugates={("b", "a"): "b"})
    assert consistency_check(c6).ok and c6.order == 6
    # b of order 4 written as b (2), c = b^2 (2); b^a = b^2 forces b^(a^2) = c != b
    bad = PcPresentation.from_relations(
        "bad", [("a", 2), ("b", 2), ("c", 2)], powers={"b": "c"}, conjugates={("b", "a"): "c"}
    )
    v = consistency_check(bad)
    assert not v.ok
    assert v.witness is not None


def test_presentation_invariants_enforced():
    with pytest.raises(InputError, match="not prime"):
        PcPresentation.from_relations("x", [("a", 4)])
    with pytest.raises(InputError):
        PcPresentation.from_relations("x", [("a", 2), ("b", 3)], powers={"b": "a"})
    with pytest.raises(InputError):
        PcPresentation.from_relations("x", [("a", 2), ("b", 3)], conjugates={("a", "b"): "a"})


def test_capacity_is_loud(heis5):
    g = PcPresentation(heis5.name, heis5.generators, heis5.relative_orders,
                       heis5.power_relations, heis5.conjugation_relations, cap=10)
    with pytest.raises(CapacityError):
        g.tables
    assert g.word("x*y").exponents == (1, 1, 0)


def test_word_round_trip(heis5):
    w = parse_word("x^2*y^-1*z", heis5.generators)
    assert parse_word(format_word(w, heis5.generators), heis5.generators) == w
    assert parse_word("eps", heis5.generators) == ()


def test_inverse_cancels_everywhere(catalog):
    for e in catalog:
        g = e.presentation
        idx = np.arange(g.order)
        assert (g.mul_vec(idx, g.inv_vec(idx)) == 0).all(), g.name


def test_element_orders(heis5, entries):
    assert all(x.order() in (1, 5) for x in heis5.elements())
    m27 = entries["m27"].presentation
    assert max(x.order() for x in m27.elements()) == 9


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_associativity_property(catalog, data):
    e = data.draw(st.sampled_from(catalog))
    g = e.presentation
    vec = st.tuples(*[st.integers(0, r - 1) for r in g.relative_orders])
    x, y, z = (g.element(data.draw(vec)) for _ in range(3))
    assert (x * y) * z == x * (y * z)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_scalar_and_vector_products_agree(catalog, data):
    e = data.draw(st.sampled_from(catalog))
    g = e.presentation
    a = data.draw(st.integers(0, g.order - 1))
    b = data.draw(st.integers(0, g.order - 1))
    x, y = g.element_at(a), g.element_at(b)
    assert int(g.mul_vec(np.array([a]), np.array([b]))[0]) == (x * y).index
    assert int(g.comm_vec(np.array([a]), np.array([b]))[0]) == commutator(x, y).index


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_powers_and_conjugation(catalog, data):
    g = data.draw(st.sampled_from(catalog)).presentation
    x = g.element_at(data.draw(st.integers(0, g.order - 1)))
    y = g.element_at(data.draw(st.integers(0, g.order - 1)))
    k = data.draw(st.integers(-7, 7))
    expected = g.identity
    for _ in range(abs(k)):
        expected = expected * (x if k > 0 else x.inverse())
    assert x**k == expected
    assert x.conj(y) == y.inverse() * x * y

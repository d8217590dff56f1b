import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_right_engel_degree

from pcengel import (
    CapacityError,
    HypothesisError,
    InputError,
    adn0_check,
    adnk_index_check,
    associated_lie_ring,
    char_p_identity_check,
    commutator,
    eigenspace_decomposition,
    engel_profile,
    engel_table,
    engel_table_by_iteration,
    extend_scalars,
    heineken_check,
    induced_automorphism,
    is_left_engel,
    is_right_engel,
    leibniz_check,
    linearization_sum,
    zassenhaus_filtration,
)
from pcengel.engel import commutator_ad_nilpotency_check, engel_word


def test_engel_word_examples(s3, heis5):
    a, b = s3.gens
    assert engel_word(b, a, 0) == b
    assert all(engel_word(b, a, n) == b for n in range(1, 6))
    x = heis5.gens[0]
    assert all(engel_word(g, x, 2).is_identity for g in heis5.elements())
    with pytest.raises(InputError):
        engel_word(b, a, -1)


def test_right_left_examples(s3, heis5):
    a, b = s3.gens
    assert is_right_engel(s3.identity).degree == 0
    r = is_right_engel(b)
    assert not r.engel and not commutator(b, r.witness).is_identity
    l = is_left_engel(a)
    assert not l.engel
    # [x, _0 1] = x, so the identity needs one step on a nontrivial group
    assert is_left_engel(s3.identity).degree == 1
    for g in heis5.elements():
        p = engel_profile(g)
        assert p.right_engel and p.right_degree <= 2
        assert p.left_engel and p.left_degree <= 2


def test_table_matches_oracles(s3, heis5, entries):
    for g in (s3, heis5, entries["s4"].presentation, entries["f21"].presentation):
        t = engel_table(g)
        o = engel_table_by_iteration(g)
        assert np.array_equal(t.right, o.right) and np.array_equal(t.left, o.left), g.name
    t = engel_table(s3)
    for y in range(s3.order):
        brute = brute_right_engel_degree(s3, y)
        assert (t.right[y] if t.right[y] >= 0 else None) == brute


def test_right_engel_sets(s3, entries):
    assert engel_table(s3).right_set().tolist() == [0]
    assert engel_table(entries["s4"].presentation).right_set().tolist() == [0]
    heis = entries["heis3"].presentation
    assert engel_table(heis).right_set().size == heis.order


def test_heineken_examples(heis5, s3, entries):
    assert heineken_check(heis5, 2).ok
    assert heineken_check(entries["c5xc5"].presentation, 1).ok
    v = heineken_check(s3, 1)
    assert v.ok and v.witness["tested"] == 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_engel_recursion(catalog, data):
    g = data.draw(st.sampled_from(catalog)).presentation
    y = g.element_at(data.draw(st.integers(0, g.order - 1)))
    x = g.element_at(data.draw(st.integers(0, g.order - 1)))
    n = data.draw(st.integers(0, 6))
    assert engel_word(y, x, n + 1) == commutator(engel_word(y, x, n), x)


def _triples(ring, limit=None):
    basis = ring.all_basis()
    return itertools.islice(itertools.product(basis, repeat=3), limit)


def test_leibniz_on_rings(heis5, entries):
    for g in (heis5, entries["c5wrc5"].presentation, entries["m27"].presentation):
        ring = associated_lie_ring(g)
        for u, v, w in _triples(ring):
            for n in range(7):
                assert leibniz_check(ring, u, v, w, n).ok


def test_char_p_identity(heis5, entries):
    d = associated_lie_ring(heis5, zassenhaus_filtration(heis5, 5))
    for u, v, w in _triples(d):
        assert char_p_identity_check(d, u, v, w, 1).ok
    assert char_p_identity_check(d, d.basis(1)[0], d.basis(1)[1], d.zero(1), 1).ok
    g = entries["heis3xc3xc3"].presentation
    d3 = associated_lie_ring(g, zassenhaus_filtration(g, 3))
    for u, v, w in _triples(d3):
        assert char_p_identity_check(d3, u, v, w, 1).ok
    c25 = associated_lie_ring(entries["c25"].presentation)
    with pytest.raises(HypothesisError):
        char_p_identity_check(c25, *c25.basis(1) * 3, 1)


def _brute_linearization(ring, x0, args):
    w = x0.weight + sum(a.weight for a in args)
    acc = ring.zero(w)
    for perm in itertools.permutations(args):
        acc = acc + ring.left_normed([x0, *perm])
    return acc


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_linearization_matches_permutation_sum_and_is_symmetric(heis7, data):
    ext = extend_scalars(associated_lie_ring(heis7), 3)
    vec = lambda w: st.lists(st.integers(0, 6), min_size=len(ext.flat_moduli(w)), max_size=len(ext.flat_moduli(w)))  # noqa: E731
    x0 = ext.element(1, data.draw(vec(1)))
    n = data.draw(st.integers(1, 3))
    args = [ext.element(1, data.draw(vec(1))) for _ in range(n)]
    s = linearization_sum(ext, x0, args)
    assert s == _brute_linearization(ext, x0, args)
    perm = data.draw(st.permutations(args))
    assert linearization_sum(ext, x0, list(perm)) == s


def test_linearization_examples(heis7, entries):
    ring = associated_lie_ring(heis7)
    x, y = ring.basis(1)
    assert linearization_sum(ring, x, [y]) == ring.bracket(x, y)
    assert linearization_sum(ring, x, [x, x]).is_zero
    with pytest.raises(CapacityError):
        linearization_sum(ring, x, [y] * 9)
    e = entries["heis7xc7"]
    ext = extend_scalars(induced_automorphism(associated_lie_ring(e.presentation), e.automorphism("sq1")), 3)
    dec = eigenspace_decomposition(ext)
    (x0,) = [g for g in dec.generators(1, 0)][:1]
    for a in ext.basis(1):
        for b in ext.basis(1):
            assert linearization_sum(ext, x0, [a, b]).is_zero


def _decomposition(entry, aut):
    phi = entry.automorphism(aut)
    ext = extend_scalars(induced_automorphism(associated_lie_ring(entry.presentation), phi), phi.order)
    return ext, eigenspace_decomposition(ext)


def test_adn0_examples(entries):
    ext, dec = _decomposition(entries["heis7"], "sq")
    assert adn0_check(ext, dec, 0, 7).ok
    ext, dec = _decomposition(entries["heis7xc7"], "sq1")
    assert adn0_check(ext, dec, 1, 7).ok
    ext, dec = _decomposition(entries["heis3xc3xc3"], "invy")
    v = adn0_check(ext, dec, 2, 3)
    assert v.ok and v.witness["multisets"] > 0
    assert not adn0_check(ext, dec, 3, 3).hypothesis_met


def test_adnk_examples(entries):
    ext, dec = _decomposition(entries["heis7"], "sq")
    v = adnk_index_check(ext, dec, 3, 2)
    assert v.ok and v.witness["bound"] == 4
    assert max(max(ix) for ix in v.witness["observed"].values()) <= 2
    ext, dec = _decomposition(entries["heis7xc7"], "sq1")
    assert adnk_index_check(ext, dec, 3, 1).ok


def test_commutator_ad_nilpotency(heis5, entries):
    v = commutator_ad_nilpotency_check(heis5, 5)
    assert v.ok and v.witness["bound"] == 5
    assert max(v.witness["indices"].values()) <= 2
    ab = commutator_ad_nilpotency_check(entries["c5xc5"].presentation, 5)
    assert set(ab.witness["indices"].values()) == {1}
    w = commutator_ad_nilpotency_check(entries["c5wrc5"].presentation, 5)
    assert w.ok

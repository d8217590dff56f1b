import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import matrix_model, unitriangular

from pcengel import (
    GradedLieRing,
    GradedSpan,
    HypothesisError,
    associated_lie_ring,
    check_lie_axioms,
    class_equality_check,
    extend_scalars,
    fixed_subring,
    induced_automorphism,
    lie_nilpotency_class,
    nilpotency_class,
    zassenhaus_filtration,
)
from pcengel.liering import (
    ad_nilpotency_index,
    dp_lp_coincidence_check,
    embed,
    lp_from_zassenhaus,
    minimal_epsilon,
    restrict,
    restrict_scalars,
    subring_generated,
)


def nilpotent(catalog):
    return [e for e in catalog if nilpotency_class(e.presentation) is not None]


def test_heis5_brackets_match_matrix_commutators(heis5):
    ring = associated_lie_ring(heis5)
    assert ring.moduli == {1: (5, 5), 2: (5,)}
    model = matrix_model(heis5, unitriangular(5), 5)
    back = {v: k for k, v in model.items()}
    src = ring.source
    for a, x in enumerate(src.components[1].reps):
        for b, y in enumerate(src.components[1].reps):
            mx, my = np.array(model[x.index]), np.array(model[y.index])
            inv = lambda m: np.round(np.linalg.inv(m)).astype(np.int64) % 5  # noqa: E731
            c = tuple(map(tuple, (inv(mx) @ inv(my) @ mx @ my) % 5))
            expected = src.components[2].coords(heis5.element_at(back[c]))
            got = ring.bracket(ring.basis(1)[a], ring.basis(1)[b])
            assert got.vector == tuple(expected)
    xb, yb = ring.basis(1)
    zb = ring.basis(2)[0]
    assert ring.bracket(yb, xb) == zb
    assert lie_nilpotency_class(ring) == 2


def test_abelian_and_cyclic_rings(entries):
    ring = associated_lie_ring(entries["c5xc5"].presentation)
    assert ring.moduli == {1: (5, 5)}
    assert all(ring.bracket(x, y).is_zero for x in ring.all_basis() for y in ring.all_basis())
    assert lie_nilpotency_class(ring) == 1
    c25 = entries["c25"].presentation
    d = associated_lie_ring(c25, zassenhaus_filtration(c25, 5))
    assert [d.size(w) for w in d.weights] == [5, 1, 1, 1, 5]
    assert check_lie_axioms(d).ok


def test_axioms_and_well_definedness(catalog):
    for e in nilpotent(catalog):
        ring = associated_lie_ring(e.presentation)
        assert check_lie_axioms(ring).ok, e.name
        if e.presentation.order <= 2000:
            assert ring.source.well_defined.ok, e.name


def _corrupted_ring():
    # weight 1: a, b, c; weight 2: u = [a,b], v = [b,c], w = [c,a]; weight 3: t
    s11 = np.zeros((3, 3, 3), dtype=np.int64)
    for (i, j), k in {(0, 1): 0, (1, 2): 1, (2, 0): 2}.items():
        s11[i, j, k] = 1
        s11[j, i, k] = 4
    s21 = np.zeros((3, 3, 1), dtype=np.int64)
    s12 = np.zeros((3, 3, 1), dtype=np.int64)
    good = GradedLieRing({1: (5,) * 3, 2: (5,) * 3, 3: (5,)}, {(1, 1): s11, (2, 1): s21, (1, 2): s12})
    s21[0, 2, 0] = 1  # [u, c] = t
    s12[2, 0, 0] = 4  # [c, u] = -t keeps antisymmetry
    bad = GradedLieRing({1: (5,) * 3, 2: (5,) * 3, 3: (5,)}, {(1, 1): s11, (2, 1): s21, (1, 2): s12})
    return good, bad


def test_corrupted_structure_constant_gives_jacobi_witness():
    good, bad = _corrupted_ring()
    assert check_lie_axioms(good).ok
    v = check_lie_axioms(bad)
    assert not v.ok
    assert v.witness[0] == "jacobi"
    x, y, z = v.witness[1:]
    s = bad.bracket(bad.bracket(x, y), z) + bad.bracket(bad.bracket(y, z), x) + bad.bracket(bad.bracket(z, x), y)
    assert not s.is_zero


def test_zero_ring_axioms():
    ring = GradedLieRing({1: (7, 7)}, {})
    assert check_lie_axioms(ring).ok
    assert lie_nilpotency_class(ring) == 1
    assert ad_nilpotency_index(ring, ring.basis(1)[0]) == 1


def test_class_equality(catalog, entries):
    assert class_equality_check(entries["m27"].presentation).ok
    for e in nilpotent(catalog):
        v = class_equality_check(e.presentation)
        assert v.ok, (e.name, v.witness)
    assert not class_equality_check(entries["s3"].presentation).hypothesis_met


def test_lp_inside_dp(heis5, entries):
    d, lp = lp_from_zassenhaus(heis5, 5)
    assert lp.parts[2] == d.full().parts[2]
    assert dp_lp_coincidence_check(heis5, 5).ok
    assert dp_lp_coincidence_check(entries["c25"].presentation, 5).ok
    assert dp_lp_coincidence_check(entries["c5xc5"].presentation, 5).ok
    assert subring_generated(d, []).is_zero
    ab = associated_lie_ring(entries["c7xc7"].presentation, zassenhaus_filtration(entries["c7xc7"].presentation, 7))
    assert subring_generated(ab, ab.basis(1)) == ab.full()


def test_induced_automorphisms(entries, heis7):
    ring = induced_automorphism(associated_lie_ring(heis7), entries["heis7"].automorphism("sq"))
    assert ring.automorphism[1].tolist() == [[2, 0], [0, 2]]
    assert ring.automorphism[2].tolist() == [[4]]
    assert ring.automorphism_order() == 3
    c7 = entries["c7"]
    r7 = induced_automorphism(associated_lie_ring(c7.presentation), c7.automorphism("sq"))
    assert r7.automorphism[1].tolist() == [[2]]
    ident = induced_automorphism(associated_lie_ring(heis7), entries["heis7"].automorphisms[0])
    assert all(ident.apply(x) == x for x in ident.all_basis())


def test_induced_automorphism_respects_bracket(catalog):
    for e in nilpotent(catalog):
        base = associated_lie_ring(e.presentation)
        for phi in e.automorphisms:
            ring = induced_automorphism(base, phi)
            for x in ring.all_basis():
                for y in ring.all_basis():
                    assert ring.apply(ring.bracket(x, y)) == ring.bracket(ring.apply(x), ring.apply(y))


def test_extension_examples(heis7):
    ring = associated_lie_ring(heis7)
    ext = extend_scalars(ring, 3)
    assert ext.rank == 2 and ext.size(1) == 7**4
    assert lie_nilpotency_class(ext) == lie_nilpotency_class(ring)
    assert check_lie_axioms(ext).ok
    for x in ring.all_basis():
        assert restrict(ring, embed(ext, x)) == x
        assert ext.scalar_mul(embed(ext, x), [1, 0]) == embed(ext, x)
    assert restrict_scalars(ext).moduli == ring.moduli
    with pytest.raises(HypothesisError):
        extend_scalars(ring, 7)
    with pytest.raises(HypothesisError):
        extend_scalars(ring, 4)
    with pytest.raises(HypothesisError):
        extend_scalars(ext, 3)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_extension_bracket_is_scalar_bilinear(heis7, data):
    ext = extend_scalars(associated_lie_ring(heis7), 3)
    vec = lambda w: st.lists(st.integers(0, 6), min_size=len(ext.flat_moduli(w)), max_size=len(ext.flat_moduli(w)))  # noqa: E731
    x = ext.element(1, data.draw(vec(1)))
    y = ext.element(1, data.draw(vec(1)))
    k = data.draw(st.integers(0, 2))
    assert ext.bracket(ext.omega_times(x, k), y) == ext.omega_times(ext.bracket(x, y), k)
    assert ext.bracket(x, ext.omega_times(y, k)) == ext.omega_times(ext.bracket(x, y), k)
    assert (ext.bracket(x, y) + ext.bracket(y, x)).is_zero


def test_ad_index_and_epsilon(heis5):
    ring = associated_lie_ring(heis5)
    xb = ring.basis(1)[0]
    assert ad_nilpotency_index(ring, xb) == 2
    assert ad_nilpotency_index(ring, ring.zero(1)) == 1
    assert minimal_epsilon(ring, GradedSpan.of(ring, [xb])) == 2
    assert minimal_epsilon(ring, GradedSpan.of(ring, [])) == 1
    assert minimal_epsilon(ring, ring.full()) == lie_nilpotency_class(ring)


def test_fixed_subring_by_brute_force(entries):
    e = entries["heis3xc3xc3"]
    ring = induced_automorphism(associated_lie_ring(e.presentation), e.automorphism("invy"))
    fixed = fixed_subring(ring)
    for w in ring.weights:
        for v in np.ndindex(*ring.moduli[w]):
            x = ring.element(w, list(v))
            assert (ring.apply(x) == x) == (x in fixed)

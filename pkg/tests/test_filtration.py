import pytest

from pcengel import (
    HypothesisError,
    custom_filtration,
    fixed_points,
    lcs_filtration,
    lower_central_series,
    validate_strongly_central,
    zassenhaus_filtration,
)
from pcengel.filtration import factor_exponent_ok, intersect_with
from pcengel.subgroups import whole_group


def p_groups(catalog):
    return [e for e in catalog if e.presentation.is_p_group()]


def test_examples(heis5, entries):
    assert lcs_filtration(heis5).orders() == [125, 5, 1]
    assert zassenhaus_filtration(heis5, 5).orders() == [125, 5, 1]
    c25 = entries["c25"].presentation
    assert zassenhaus_filtration(c25, 5).orders() == [25, 5, 5, 5, 5, 1]
    assert zassenhaus_filtration(entries["c5xc5"].presentation, 5).orders() == [25, 1]
    assert lcs_filtration(entries["c7"].presentation).orders() == [7, 1]


def test_zassenhaus_needs_p_group(s3, heis5):
    with pytest.raises(HypothesisError):
        zassenhaus_filtration(s3, 3)
    with pytest.raises(HypothesisError):
        zassenhaus_filtration(heis5, 3)


def test_non_terminating_lcs_is_flagged(s3):
    f = lcs_filtration(s3)
    assert not f.terminating
    assert f.term(5).order == 3
    assert not validate_strongly_central(f).ok


def test_custom_chain_witness(heis5):
    f = custom_filtration(heis5, [whole_group(heis5), []])
    v = validate_strongly_central(f)
    assert not v.ok
    i, j, z = v.witness
    assert (i, j) == (1, 1) and not z.is_identity


def test_strongly_central_on_all_p_groups(catalog):
    for e in p_groups(catalog):
        g = e.presentation
        p = next(iter(g.primes))
        assert validate_strongly_central(lcs_filtration(g)).ok, g.name
        z = zassenhaus_filtration(g, p)
        assert validate_strongly_central(z).ok, g.name
        assert factor_exponent_ok(z, p).ok, g.name


def test_zassenhaus_containments(catalog):
    for e in p_groups(catalog):
        g = e.presentation
        if g.order > 5000:
            continue
        p = next(iter(g.primes))
        z2 = zassenhaus_filtration(g, p).term(2)
        assert lower_central_series(g)[1] <= z2 if len(lower_central_series(g)) > 1 else True
        assert all(x**p in z2 for x in g.elements())


def test_intersections(entries):
    e = entries["heis7xc7"]
    g = e.presentation
    c = fixed_points(e.automorphism("sq1"))
    f = intersect_with(zassenhaus_filtration(g, 7), c)
    assert [t.order for t in f.terms] == [7, 1]
    assert validate_strongly_central(f).ok
    ident = fixed_points(e.automorphisms[0])
    assert intersect_with(lcs_filtration(g), ident).orders() == lcs_filtration(g).orders()
    trivial = fixed_points(entries["heis7"].automorphism("sq"))
    assert all(t.is_trivial for t in intersect_with(lcs_filtration(entries["heis7"].presentation), trivial).terms)


def test_intersected_chains_strongly_central(catalog):
    for e in p_groups(catalog):
        g = e.presentation
        if g.order > 2500:
            continue
        for phi in e.automorphisms[1:]:
            f = intersect_with(lcs_filtration(g), fixed_points(phi))
            assert validate_strongly_central(f).ok, (g.name, phi.name)

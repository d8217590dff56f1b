import pytest

from pcengel import (
    InputError,
    baer_check,
    closure_lemma_check,
    engel_suite,
    higman_check,
    main_theorem_check,
    run_suites,
    thompson_check,
)
from pcengel.certify import default_constants, subgroup_class, verify_higman_constants
from pcengel.subgroups import whole_group


def test_baer_examples(s3, entries, heis5):
    for g in (s3, entries["s4"].presentation, heis5):
        r = baer_check(g)
        assert r.status == "pass"
        assert r.observed["equal"]
    assert baer_check(s3).observed["hypercentre_order"] == 1


def test_thompson_examples(entries):
    assert thompson_check(entries["c7"].presentation, entries["c7"].automorphism("sq")).status == "pass"
    assert thompson_check(entries["heis7"].presentation, entries["heis7"].automorphism("sq")).status == "pass"
    r = thompson_check(entries["f21"].presentation, entries["f21"].automorphism("invb"))
    assert r.status == "hypothesis-not-met" and r.witnesses


def test_higman_examples(entries):
    r = higman_check(entries["c7"].presentation, entries["c7"].automorphism("inv"))
    assert r.status == "pass" and r.observed == {"q": 2, "class": 1, "h": 1}
    r = higman_check(entries["heis7"].presentation, entries["heis7"].automorphism("sq"))
    assert r.status == "pass" and r.observed["class"] == r.observed["h"] == 2
    r = higman_check(entries["c11"].presentation, entries["c11"].automorphism("p4"))
    assert r.status == "hypothesis-not-met" and r.observed["class"] == 1 and r.observed["h"] is None


def test_constants_are_rederived(catalog):
    consts = verify_higman_constants(catalog)
    assert consts.bound(2) == 1 and consts.bound(3) == 2
    assert consts.bound(5) is None
    examples = consts.verification[3].witness["examples"]
    assert {"group": "heis7", "automorphisms": 1, "class": 2} in examples


def test_main_theorem_examples(entries):
    r = main_theorem_check(entries["heis7"].presentation, entries["heis7"].automorphism("sq"))
    assert r.status == "pass" and r.observed["n"] == 0 and r.observed["c"] == 0
    r = main_theorem_check(entries["f21"].presentation, entries["f21"].automorphism("invb"))
    assert r.status == "hypothesis-not-met"
    (w,) = r.witnesses
    assert w.order() == 3
    r = main_theorem_check(entries["s3xc11"].presentation, entries["s3xc11"].automorphism("p4c"))
    assert r.status == "hypothesis-not-met" and r.witnesses


def test_closure_examples(entries):
    for name, aut in (("heis7", "sq"), ("heis3xc3xc3", "invy"), ("c7xc7", "inv")):
        r = closure_lemma_check(entries[name].presentation, entries[name].automorphism(aut))
        assert r.status == "pass", name
    r = closure_lemma_check(entries["c11"].presentation, entries["c11"].automorphism("p4"))
    assert not r.hypotheses_met and "unknown" in r.reasons[-1]


def test_engel_suite_examples(entries):
    r = engel_suite(entries["heis7"].presentation, entries["heis7"].automorphism("sq"))
    assert r.status == "pass" and r.observed["fixed_subring_class"] == 0
    r = engel_suite(entries["heis7xc7"].presentation, entries["heis7xc7"].automorphism("sq1"))
    assert r.status == "pass"
    assert r.observed["fixed_subring_class"] == 1 == r.observed["c"]
    with pytest.raises(InputError):
        engel_suite(entries["heis7"].presentation, entries["heis7"].automorphisms[0])
    r = engel_suite(entries["c5wrc5"].presentation, entries["c5wrc5"].automorphism("invb"))
    assert r.observed["lie_level"] == "hypothesis-not-met"


def test_subgroup_class(s3, heis5):
    assert subgroup_class(whole_group(heis5)) == 2
    assert subgroup_class(whole_group(s3)) is None


def test_reports_are_reproducible_and_sorted(catalog):
    sub = [e for e in catalog if e.name in ("heis5", "f21", "c7")]
    a = [r.to_dict() for r in run_suites(sub, ["main", "baer"])]
    b = [r.to_dict() for r in run_suites(sub, ["baer", "main"])]
    assert a == b
    keys = [(r["group"], r["suite"], r["automorphism"] or "") for r in a]
    assert keys == sorted(keys)
    assert run_suites(sub, []) == []
    with pytest.raises(InputError):
        run_suites(sub, ["nope"])


def test_default_constants_cached():
    assert default_constants() is default_constants()


def test_exhaustive_linearization(entries):
    e = entries["heis3xc3xc3"]
    r = engel_suite(e.presentation, e.automorphism("invy"), exhaustive=True)
    lin = r.observed["checks"]["linearization"]
    assert r.status == "pass" and lin["ok"] and lin["witness"]["exhaustive"] > 0
    big = entries["heis7xc7"]
    r = engel_suite(big.presentation, big.automorphism("sq1"), exhaustive=True)
    assert r.observed["checks"]["linearization"]["witness"]["samples"] == 100

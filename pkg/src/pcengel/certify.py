"""Theorem-suite runner: finite shadows of the Engel/fixed-point results."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable

import numpy as np

from .automorphism import Automorphism, fixed_points, search_automorphisms
from .eigen import eigenspace_decomposition, grading_check
from .engel import (
    EngelTable,
    adn0_check,
    adnk_index_check,
    engel_table,
    linearization_sum,
)
from .errors import InputError, Verdict
from .liering import (
    LieElement,
    associated_lie_ring,
    check_lie_axioms,
    extend_scalars,
    fixed_subring,
    induced_automorphism,
    lie_nilpotency_class,
)
from .pcgroup import GroupElement, PcPresentation, is_prime
from .subgroups import (
    Quotient,
    Subgroup,
    hypercentre,
    lower_central_series,
    nilpotency_class,
    normal_closure,
    subgroup_from_mask,
    trivial_subgroup,
)

SUITES = ("baer", "thompson", "higman", "main", "closure", "engel")
HIGMAN_SEARCH_ORDER = 200
LINEARIZATION_SAMPLES = 100
EXHAUSTIVE_ORDER = 2000


@dataclass
class CertificationReport:
    suite: str
    group: str
    automorphism: str | None
    hypotheses_met: bool
    conclusion_holds: bool
    reasons: list[str] = field(default_factory=list)
    witnesses: list[Any] = field(default_factory=list)
    observed: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.hypotheses_met:
            return "hypothesis-not-met"
        return "pass" if self.conclusion_holds else "fail"

    @property
    def failed(self) -> bool:
        return self.hypotheses_met and not self.conclusion_holds

    def sort_key(self) -> tuple:
        return (self.group, self.suite, self.automorphism or "")

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "group": self.group,
            "automorphism": self.automorphism,
            "status": self.status,
            "hypotheses_met": self.hypotheses_met,
            "conclusion_holds": self.conclusion_holds,
            "reasons": list(self.reasons),
            "witnesses": [jsonable(w) for w in self.witnesses],
            "observed": jsonable(self.observed),
        }


def jsonable(obj: Any) -> Any:
    if isinstance(obj, GroupElement):
        return obj.word()
    if isinstance(obj, Subgroup):
        return {"order": obj.order, "generators": [t.word() for t in obj.induced_generators]}
    if isinstance(obj, LieElement):
        return {"weight": obj.weight, "vector": list(obj.vector)}
    if isinstance(obj, Verdict):
        return {"ok": obj.ok, "hypothesis_met": obj.hypothesis_met, "witness": jsonable(obj.witness), "notes": obj.notes}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


# -- shared computations -----------------------------------------------------


@lru_cache(maxsize=64)
def cached_engel_table(g: PcPresentation) -> EngelTable:
    return engel_table(g)


def subgroup_class(h: Subgroup) -> int | None:
    """Nilpotency class of a subgroup (0 for the trivial one), by commutator sets."""
    if h.is_trivial:
        return 0
    g = h.group
    els = h.element_indices
    cur = h
    k = 0
    while not cur.is_trivial:
        a, b = np.meshgrid(cur.element_indices, els, indexing="ij")
        comm = g.comm_vec(a.ravel(), b.ravel())
        mask = np.zeros(g.order, dtype=bool)
        mask[comm] = True
        nxt = subgroup_from_mask(g, mask)
        k += 1
        if nxt == cur:
            return None
        cur = nxt
    return k


def _coprime_prime(phi: Automorphism) -> list[str]:
    reasons = []
    if not is_prime(phi.order):
        reasons.append(f"order {phi.order} of {phi.name} is not prime")
    if math.gcd(phi.order, phi.group.order) != 1:
        reasons.append(f"order {phi.order} is not coprime to |G| = {phi.group.order}")
    return reasons


def _fixed_engel(phi: Automorphism) -> tuple[Subgroup, list[str], list[GroupElement], int | None]:
    """C_G(φ), reasons if some fixed point is not right Engel, witnesses, max degree n."""
    g = phi.group
    c = fixed_points(phi)
    table = cached_engel_table(g)
    degs = table.right[c.element_indices]
    bad = c.element_indices[degs < 0]
    if bad.size:
        x = g.element_at(int(bad[0]))
        return c, [f"fixed point {x.word()} is not right Engel"], [x], None
    return c, [], [], int(degs.max()) if degs.size else 0


# -- literature constants ----------------------------------------------------


@dataclass
class LiteratureConstants:
    """Higman bounds h(q), usable only after re-derivation on the catalog."""

    higman_bounds: dict[int, int] = field(default_factory=lambda: {2: 1, 3: 2})
    provenance: dict[int, str] = field(
        default_factory=lambda: {
            2: "classical: a fixed-point-free involution forces an abelian group",
            3: "classical: a fixed-point-free automorphism of order 3 forces class at most 2",
        }
    )
    verification: dict[int, Verdict] = field(default_factory=dict)

    def bound(self, q: int) -> int | None:
        v = self.verification.get(q)
        if q not in self.higman_bounds or v is None or not v.ok:
            return None
        return self.higman_bounds[q]


def verify_higman_constants(entries, max_order: int = HIGMAN_SEARCH_ORDER) -> LiteratureConstants:
    """Search every catalog group of order <= max_order for coprime fpf automorphisms of order q.

    Catalog automorphisms that are coprime and fpf are added for groups above
    the search bound.  h(q) is accepted when no example exceeds it.
    """
    consts = LiteratureConstants()
    for q, h in consts.higman_bounds.items():
        examples = []
        worst = None
        for e in entries:
            g = e.presentation
            if math.gcd(q, g.order) != 1:
                continue
            found: list[Automorphism] = []
            if g.order <= max_order:
                found = search_automorphisms(g, order=q, fixed_point_free=True)
            else:
                found = [a for a in e.automorphisms if a.order == q and fixed_points(a).is_trivial]
            if not found:
                continue
            cls = nilpotency_class(g)
            examples.append({"group": g.name, "automorphisms": len(found), "class": cls})
            if cls is None or cls > h:
                worst = worst or {"group": g.name, "class": cls}
        ok = worst is None
        consts.verification[q] = Verdict(ok, witness=worst or {"examples": examples})
    return consts


_DEFAULT_CONSTANTS: LiteratureConstants | None = None


def default_constants() -> LiteratureConstants:
    global _DEFAULT_CONSTANTS
    if _DEFAULT_CONSTANTS is None:
        from .catalog import build_catalog

        _DEFAULT_CONSTANTS = verify_higman_constants(build_catalog())
    return _DEFAULT_CONSTANTS


# -- suites ------------------------------------------------------------------


def baer_check(g: PcPresentation) -> CertificationReport:
    table = cached_engel_table(g)
    right = table.right >= 0
    z = hypercentre(g)
    outside = np.flatnonzero(right & ~z.mask)
    holds = outside.size == 0
    rep = CertificationReport("baer", g.name, None, True, holds)
    rep.observed = {
        "right_engel_set_size": int(right.sum()),
        "hypercentre_order": z.order,
        "equal": bool((right == z.mask).all()),
    }
    if not holds:
        rep.witnesses.append(g.element_at(int(outside[0])))
    return rep


def thompson_check(g: PcPresentation, phi: Automorphism) -> CertificationReport:
    reasons = _coprime_prime(phi)
    c = fixed_points(phi)
    if not c.is_trivial:
        reasons.append(f"C_G(φ) has order {c.order}")
    cls = nilpotency_class(g)
    rep = CertificationReport("thompson", g.name, phi.name, not reasons, cls is not None, reasons)
    rep.observed = {"q": phi.order, "fixed_order": c.order, "class": cls}
    if not c.is_trivial:
        rep.witnesses.append(c)
    return rep


def higman_check(g: PcPresentation, phi: Automorphism, consts: LiteratureConstants | None = None) -> CertificationReport:
    consts = consts or default_constants()
    reasons = _coprime_prime(phi)
    c = fixed_points(phi)
    if not c.is_trivial:
        reasons.append(f"φ is not fixed-point-free (|C_G(φ)| = {c.order})")
    h = consts.bound(phi.order)
    if h is None:
        reasons.append(f"bound unavailable for q = {phi.order}, observed class recorded")
    cls = nilpotency_class(g)
    holds = cls is not None and (h is None or cls <= h)
    rep = CertificationReport("higman", g.name, phi.name, not reasons, holds, reasons)
    rep.observed = {"q": phi.order, "class": cls, "h": h}
    return rep


def main_theorem_check(g: PcPresentation, phi: Automorphism) -> CertificationReport:
    reasons = _coprime_prime(phi)
    c, bad, wit, n = _fixed_engel(phi)
    reasons += bad
    cls = nilpotency_class(g)
    rep = CertificationReport("main", g.name, phi.name, not reasons, cls is not None, reasons, list(wit))
    rep.observed = {"d": g.ngens, "q": phi.order, "n": n, "c": subgroup_class(c), "class": cls}
    return rep


def closure_lemma_check(g: PcPresentation, phi: Automorphism, consts: LiteratureConstants | None = None) -> CertificationReport:
    consts = consts or default_constants()
    reasons = _coprime_prime(phi)
    c, bad, wit, _ = _fixed_engel(phi)
    reasons += bad
    h = consts.bound(phi.order)
    if h is None:
        rep = CertificationReport("closure", g.name, phi.name, False, False, reasons + [f"h({phi.order}) unknown, skipped"])
        return rep
    lcs = lower_central_series(g)

    def gamma(i):
        if i <= len(lcs):
            return lcs[i - 1]
        return lcs[-1] if not lcs[-1].is_trivial else trivial_subgroup(g)

    low = gamma(h + 2)
    q = Quotient(g, low, g, ())
    reps = {}
    for x in c.elements():
        r = q.reduce(x)
        reps.setdefault(r.exponents, x)
    s = list(reps.values())
    closure = normal_closure(s, g) if s else trivial_subgroup(g)
    target = gamma(h + 1)
    holds = target <= closure
    rep = CertificationReport("closure", g.name, phi.name, not reasons, holds, reasons)
    rep.observed = {"h": h, "S_size": len(s), "gamma_order": target.order, "closure_order": closure.order}
    if not holds:
        rep.witnesses.append(target)
    return rep


def _random_element(rng: random.Random, ring, w: int) -> LieElement:
    return ring.element(w, [rng.randrange(d) for d in ring.flat_moduli(w)])


def _random_in(rng: random.Random, ring, gens: list[LieElement], w: int) -> LieElement:
    acc = ring.zero(w)
    for x in gens:
        acc = acc + ring.scale(x, rng.randrange(ring.exponent(w)))
    return acc


def engel_suite(
    g: PcPresentation,
    phi: Automorphism,
    p: int | None = None,
    samples: int = LINEARIZATION_SAMPLES,
    seed: int = 0,
    n_max: int = 4,
    exhaustive: bool = False,
) -> CertificationReport:
    if phi.order == 1:
        raise InputError("the identity automorphism has order 1, which is not prime")
    q = phi.order
    reasons = _coprime_prime(phi)
    c, bad, wit, n = _fixed_engel(phi)
    reasons += bad
    if p is None:
        p = min(g.primes) if len(g.primes) == 1 else None
    if p is None or not g.is_p_group(p):
        reasons.append(f"{g.name} is not a p-group")
    rep = CertificationReport("engel", g.name, phi.name, not reasons, True, reasons, list(wit))
    obs = rep.observed
    obs.update({"p": p, "q": q, "n": n, "c": subgroup_class(c)})
    if reasons:
        rep.conclusion_holds = False
        return rep
    checks: dict[str, Any] = {}
    ring = induced_automorphism(associated_lie_ring(g), phi)
    checks["lie_axioms"] = check_lie_axioms(ring)
    fixed = fixed_subring(ring)
    fixed_class = 0 if fixed.is_zero else lie_nilpotency_class(ring, fixed)
    obs["fixed_subring_class"] = fixed_class
    checks["fixed_subring_class"] = Verdict(fixed_class <= obs["c"])
    ext = extend_scalars(ring, q)
    dec = eigenspace_decomposition(ext)
    obs["eigencomponents"] = dec.describe()
    checks["projections"] = dec.verification
    checks["grading"] = grading_check(dec)
    if p > n:
        checks["adn0"] = adn0_check(ext, dec, n, p, seed=seed)
        checks["adnk"] = adnk_index_check(ext, dec, q, n)
        if exhaustive and g.order <= EXHAUSTIVE_ORDER:
            checks["linearization"] = _linearization_exhaustive(ext, dec, max(n, 1), n_max)
        else:
            checks["linearization"] = _linearization_samples(ext, dec, max(n, 1), samples, seed, n_max)
    else:
        rep.reasons.append(f"Lie-level lemmas need p > n (p = {p}, n = {n}); group-level parts only")
        obs["lie_level"] = "hypothesis-not-met"
    obs["checks"] = {k: jsonable(v) for k, v in checks.items()}
    failed = [k for k, v in checks.items() if v.hypothesis_met and not v.ok]
    rep.conclusion_holds = not failed
    if failed:
        rep.witnesses.append({k: checks[k].witness for k in failed})
    return rep


def _linearization_samples(ext, dec, n: int, samples: int, seed: int, n_max: int) -> Verdict:
    if n > n_max:
        return Verdict(False, hypothesis_met=False, notes=[f"n = {n} exceeds the sampling budget {n_max}"])
    rng = random.Random(seed)
    weights = list(ext.weights)
    for k in range(samples):
        u = rng.choice(weights)
        v = rng.choice(weights)
        x0 = _random_in(rng, ext, dec.generators(u, 0), u)
        args = [_random_element(rng, ext, v) for _ in range(n)]
        s = linearization_sum(ext, x0, args)
        if not s.is_zero:
            return Verdict(False, witness=(x0, args))
    return Verdict(True, witness={"samples": samples, "n": n})


def _linearization_exhaustive(ext, dec, n: int, n_max: int) -> Verdict:
    """Every L_0 generator against every multiset of n basis vectors of one weight.

    The sum is multilinear and symmetric in its arguments, so this covers all
    homogeneous inputs.
    """
    if n > n_max:
        return Verdict(False, hypothesis_met=False, notes=[f"n = {n} exceeds the sampling budget {n_max}"])
    checked = 0
    for u in ext.weights:
        for x0 in dec.generators(u, 0):
            for v in ext.weights:
                basis = ext.basis(v)
                for combo in itertools.combinations_with_replacement(basis, n):
                    checked += 1
                    if not linearization_sum(ext, x0, list(combo)).is_zero:
                        return Verdict(False, witness=(x0, list(combo)))
    return Verdict(True, witness={"exhaustive": checked, "n": n})


def run_suites(
    entries,
    suites: Iterable[str],
    seed: int = 0,
    consts: LiteratureConstants | None = None,
    n_max: int = 4,
    exhaustive: bool = False,
) -> list[CertificationReport]:
    suites = list(dict.fromkeys(suites))
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise InputError(f"unknown suite(s): {', '.join(unknown)}")
    if not suites:
        return []
    if consts is None and ({"higman", "closure"} & set(suites)):
        consts = default_constants()
    out: list[CertificationReport] = []
    for e in entries:
        g = e.presentation
        if "baer" in suites:
            out.append(baer_check(g))
        for phi in e.automorphisms:
            if phi.order == 1:
                continue
            if "thompson" in suites:
                out.append(thompson_check(g, phi))
            if "higman" in suites:
                out.append(higman_check(g, phi, consts))
            if "main" in suites:
                out.append(main_theorem_check(g, phi))
            if "closure" in suites:
                out.append(closure_lemma_check(g, phi, consts))
            if "engel" in suites:
                out.append(engel_suite(g, phi, seed=seed, n_max=n_max, exhaustive=exhaustive))
    out.sort(key=CertificationReport.sort_key)
    return out

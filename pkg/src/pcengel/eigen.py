"""Decomposition of L ⊗ Z[ω] into eigenspaces of an automorphism of order q."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisError, Verdict
from .lattice import Span
from .liering import (
    GradedLieRing,
    GradedSpan,
    LieElement,
    embed,
    fixed_subring,
    matmul_mod,
    restrict_scalars,
)


@dataclass
class EigenDecomposition:
    ring: GradedLieRing
    q: int
    projections: dict[tuple[int, int], np.ndarray] = field(repr=False)
    components: dict[tuple[int, int], Span]
    verification: Verdict

    def generators(self, w: int, j: int) -> list[LieElement]:
        return [LieElement(self.ring, w, v) for v in self.components[(w, j % self.q)].generators()]

    def project(self, x: LieElement, j: int) -> LieElement:
        p = self.projections[(x.weight, j % self.q)]
        return self.ring.element(x.weight, (np.asarray(x.vector, dtype=np.int64) @ p).tolist())

    def eigen_part(self, j: int) -> GradedSpan:
        return GradedSpan(self.ring, {w: self.components[(w, j % self.q)] for w in self.ring.weights})

    def describe(self) -> dict:
        return {f"{w},{j}": s.order for (w, j), s in sorted(self.components.items())}


def eigenspace_decomposition(ring: GradedLieRing, q: int | None = None) -> EigenDecomposition:
    """Projections π_j = q^{-1} Σ_k ω^{-jk} φ^k on every component.

    φ^q = 1 is required; an automorphism of order dividing q is accepted
    (the identity puts everything in L_0).
    """
    if ring.q is None:
        raise HypothesisError("extend scalars first")
    if q is not None and q != ring.q:
        raise HypothesisError(f"ring extended by ω_{ring.q}, not ω_{q}")
    q = ring.q
    if ring.automorphism is None:
        raise HypothesisError("no automorphism attached")
    projections, components = {}, {}
    notes = []
    ok = True
    for w in ring.weights:
        mods = ring.flat_moduli(w)
        n = len(mods)
        phi = ring.automorphism_matrix(w)
        eye = np.eye(n, dtype=np.int64)
        powers = [eye]
        for _ in range(q):
            powers.append(matmul_mod(powers[-1], phi, mods))
        if n and not (powers[q] == eye % np.array(mods)).all():
            raise HypothesisError(f"φ^{q} is not the identity on weight {w}")
        try:
            qinv = pow(q, -1, ring.exponent(w))
        except ValueError:
            raise HypothesisError(f"q = {q} is not invertible on weight {w}") from None
        omegas = [ring.omega_operator(w, m) for m in range(q)]
        total = np.zeros((n, n), dtype=np.int64)
        for j in range(q):
            p = np.zeros((n, n), dtype=np.int64)
            for k in range(q):
                p += matmul_mod(powers[k], omegas[(-j * k) % q], mods)
            if n:
                p = (qinv * p) % np.array(mods, dtype=np.int64)
            projections[(w, j)] = p
            components[(w, j)] = Span(mods, p.tolist())
            total += p
        if not n:
            continue
        m = np.array(mods, dtype=np.int64)
        if not ((total % m) == eye % m).all():
            ok = False
            notes.append(f"projections do not sum to 1 on weight {w}")
        for j in range(q):
            pj = projections[(w, j)]
            if not (matmul_mod(pj, pj, mods) == pj).all():
                ok = False
                notes.append(f"π_{j} is not idempotent on weight {w}")
            if not (matmul_mod(pj, phi, mods) == matmul_mod(pj, omegas[j], mods)).all():
                ok = False
                notes.append(f"φ is not ω^{j} on the image of π_{j}, weight {w}")
            for k in range(q):
                if k != j and matmul_mod(pj, projections[(w, k)], mods).any():
                    ok = False
                    notes.append(f"π_{j} π_{k} != 0 on weight {w}")
    return EigenDecomposition(ring, q, projections, components, Verdict(ok, notes=notes))


def grading_check(dec: EigenDecomposition) -> Verdict:
    """[L_(u)i, L_(v)j] <= L_(u+v)(i+j), and L_0 = C_L(φ) ⊗ Z[ω] per weight."""
    ring, q = dec.ring, dec.q
    for u in ring.weights:
        for i in range(q):
            gi = dec.generators(u, i)
            for v in ring.weights:
                for j in range(q):
                    for x in gi:
                        for y in dec.generators(v, j):
                            z = ring.bracket(x, y)
                            w = u + v
                            if w > ring.max_weight:
                                if not z.is_zero:
                                    return Verdict(False, witness=("bracket", x, y))
                            elif z.vector not in dec.components[(w, (i + j) % q)]:
                                return Verdict(False, witness=("bracket", x, y))
    plain = restrict_scalars(ring)
    fixed = fixed_subring(plain)
    for w in ring.weights:
        gens = []
        for c in fixed.parts[w].generators():
            e = embed(ring, LieElement(plain, w, c))
            gens.extend(ring.omega_times(e, s) for s in range(ring.rank))
        if ring.span(w, gens) != dec.components[(w, 0)]:
            return Verdict(False, witness=("fixed", w), notes=[f"L_0 differs from C_L(φ)⊗Z[ω] at weight {w}"])
    return Verdict(True)

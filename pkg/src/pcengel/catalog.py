"""Built-in catalog of small soluble groups with named automorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .automorphism import Automorphism, automorphism_from_images, identity_automorphism
from .errors import InputError
from .pcgroup import DEFAULT_CAP, PcPresentation, consistency_check
from .textformat import parse_file


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    presentation: PcPresentation
    automorphisms: tuple[Automorphism, ...]
    tags: tuple[str, ...]
    provenance: str = ""

    def automorphism(self, name: str) -> Automorphism:
        for a in self.automorphisms:
            if a.name == name:
                return a
        raise InputError(f"{self.name} has no automorphism {name!r}")


@dataclass
class RunConfig:
    cap: int = DEFAULT_CAP
    n_max: int = 4
    suites: tuple[str, ...] = ("baer", "thompson", "higman", "main", "closure", "engel")
    out: str | None = None
    seed: int = 0
    catalog: str = "builtin"
    groups: tuple[str, ...] = ()
    analyses: tuple[str, ...] = ()
    exhaustive: bool = False

    def __post_init__(self):
        if self.cap < 1 or self.n_max < 1:
            raise InputError("cap and n_max must be positive")
        self.suites = tuple(self.suites)
        self.groups = tuple(self.groups)
        self.analyses = tuple(self.analyses)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise InputError(f"unknown config keys: {', '.join(sorted(extra))}")
        return cls(**data)


def _tags(g: PcPresentation, *extra: str) -> tuple[str, ...]:
    tags = ["soluble"]
    if len(g.primes) == 1:
        tags.append("p-group")
    return tuple(tags) + extra


def _cyclic(n_prime: int, k: int) -> PcPresentation:
    """C_{p^k} with generators g1..gk, g_i^p = g_{i+1}."""
    gens = [(f"g{i}", n_prime) for i in range(1, k + 1)]
    powers = {f"g{i}": f"g{i + 1}" for i in range(1, k)}
    name = f"c{n_prime**k}"
    if k == 1:
        return PcPresentation.from_relations(name, [("g", n_prime)])
    return PcPresentation.from_relations(name, gens, powers=powers)


def _elementary(p: int, rank: int) -> PcPresentation:
    syms = "xyz"[:rank] if rank <= 3 else [f"e{i}" for i in range(rank)]
    return PcPresentation.from_relations("x".join([f"c{p}"] * rank), [(s, p) for s in syms])


def _heis(p: int) -> PcPresentation:
    return PcPresentation.from_relations(f"heis{p}", [("x", p), ("y", p), ("z", p)], conjugates={("y", "x"): "y*z"})


def _heis_times(p: int, extra: list[str]) -> PcPresentation:
    name = f"heis{p}" + "".join(f"xc{p}" for _ in extra)
    return PcPresentation.from_relations(
        name, [("x", p), ("y", p), ("z", p)] + [(s, p) for s in extra], conjugates={("y", "x"): "y*z"}
    )


def _meta(p: int) -> PcPresentation:
    """Extraspecial of exponent p^2: <a, b | a^{p^2}, b^p, a^b = a^{1+p}>, c = a^p."""
    return PcPresentation.from_relations(
        f"m{p**3}", [("b", p), ("a", p), ("c", p)], powers={"a": "c"}, conjugates={("a", "b"): "a*c"}
    )


def _wreath5() -> PcPresentation:
    gens = [("t", 5)] + [(f"b{i}", 5) for i in range(1, 6)]
    conj = {(f"b{i}", "t"): f"b{i}*b{i + 1}" for i in range(1, 5)}
    return PcPresentation.from_relations("c5wrc5", gens, conjugates=conj)


def _aut(g: PcPresentation, name: str, images: list[str]) -> Automorphism:
    return automorphism_from_images(g, images, name=name)


def _power_map(g: PcPresentation, name: str, k: int) -> Automorphism:
    """g -> g^k on a cyclic group written with generators g1..gm (or g)."""
    top = g.gens[0]
    imgs = []
    for i in range(g.ngens):
        imgs.append((top ** (g.relative_orders[0] ** i)) ** k)
    return automorphism_from_images(g, imgs, name=name)


def build_catalog(cap: int = DEFAULT_CAP) -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []

    def add(g, auts=(), tags=(), provenance=""):
        if cap != DEFAULT_CAP:
            g = PcPresentation(g.name, g.generators, g.relative_orders, g.power_relations, g.conjugation_relations, cap)
            auts = [automorphism_from_images(g, [y.word() for y in a.images], name=a.name) for a in auts]
        entries.append(CatalogEntry(g.name, g, (identity_automorphism(g),) + tuple(auts), _tags(g, *tags), provenance))

    for p, k, extra in [(3, 1, ()), (5, 1, ()), (7, 1, ((2, "sq"),)), (3, 2, ()), (5, 2, ()), (7, 2, ((18, "p18"),)), (11, 1, ((4, "p4"),))]:
        g = _cyclic(p, k)
        auts = [_power_map(g, "inv", -1)] + [_power_map(g, nm, e) for e, nm in extra]
        add(g, auts, provenance="cyclic")

    for p in (3, 5, 7):
        g = _elementary(p, 2)
        auts = [_aut(g, "inv", ["x^-1", "y^-1"]), _aut(g, "swap", ["y", "x"])]
        if p != 3:
            # companion matrix of t^2 + t + 1
            auts.append(_aut(g, "rot3", ["y", "x^-1*y^-1"]))
        add(g, auts, provenance="elementary abelian, rank 2")
    for p in (3, 7):
        g = _elementary(p, 3)
        auts = [_aut(g, "inv", ["x^-1", "y^-1", "z^-1"]), _aut(g, "cyc", ["y", "z", "x"])]
        add(g, auts, provenance="elementary abelian, rank 3")

    for p in (3, 5, 7):
        g = _heis(p)
        auts = [
            _aut(g, "inv2", ["x^-1", "y^-1", "z"]),
            _aut(g, "invy", ["x", "y^-1", "z^-1"]),
        ]
        if p == 7:
            auts.append(_aut(g, "sq", ["x^2", "y^2", "z^4"]))
        add(g, auts, provenance="extraspecial of exponent p, upper unitriangular 3x3 over F_p")
        m = _meta(p)
        add(m, [_aut(m, "inva", ["b", "a^-1", "c^-1"])], provenance="extraspecial of exponent p^2")

    w = _wreath5()
    add(w, [_aut(w, "invb", ["t"] + [f"b{i}^-1" for i in range(1, 6)])], provenance="C5 wr C5, class 5")

    h = _heis_times(3, ["u", "v"])
    add(h, [_aut(h, "invy", ["x", "y^-1", "z^-1", "u", "v^-1"])], provenance="Heis(3) x C3 x C3")
    h = _heis_times(7, ["w"])
    add(h, [_aut(h, "sq1", ["x^2", "y^2", "z^4", "w"])], provenance="Heis(7) x C7")

    s3 = PcPresentation.from_relations("s3", [("a", 2), ("b", 3)], conjugates={("b", "a"): "b^2"})
    add(s3, [_aut(s3, "inn_b", ["a*b", "b"])], tags=("near-miss",),
        provenance="symmetric group; every automorphism is inner, orders 2 and 3 divide 6")
    s4 = PcPresentation.from_relations(
        "s4",
        [("a", 2), ("b", 3), ("c", 2), ("d", 2)],
        conjugates={("b", "a"): "b^2", ("d", "a"): "c*d", ("c", "b"): "c*d", ("d", "b"): "c"},
    )
    add(s4, tags=("near-miss",), provenance="symmetric group; a=(12), b=(123), c=(12)(34), d=(13)(24)")
    f21 = PcPresentation.from_relations("f21", [("a", 3), ("b", 7)], conjugates={("b", "a"): "b^2"})
    add(f21, [_aut(f21, "invb", ["a", "b^-1"])], tags=("near-miss",), provenance="Frobenius group C7 : C3")
    d10 = PcPresentation.from_relations("d10", [("a", 2), ("b", 5)], conjugates={("b", "a"): "b^4"})
    add(d10, provenance="dihedral of order 10")
    s3c = PcPresentation.from_relations(
        "s3xc11", [("a", 2), ("b", 3), ("c", 11)], conjugates={("b", "a"): "b^2"}
    )
    add(s3c, [_aut(s3c, "p4c", ["a", "b", "c^4"])], tags=("near-miss",), provenance="S3 x C11")
    return entries


def catalog_by_name(entries: list[CatalogEntry]) -> dict[str, CatalogEntry]:
    return {e.name: e for e in entries}


def validate_entry(e: CatalogEntry):
    return consistency_check(e.presentation)


def load_catalog(source: str, cap: int = DEFAULT_CAP) -> list[CatalogEntry]:
    """``builtin`` or a directory of text-format files (*.pc)."""
    if source == "builtin":
        return build_catalog(cap)
    path = Path(source)
    if not path.is_dir():
        raise InputError(f"catalog {source!r} is neither 'builtin' nor a directory")
    entries = []
    for f in sorted(path.glob("*.pc")):
        parsed = parse_file(f)
        for name, g in parsed.groups.items():
            auts = tuple(parsed.automorphisms.get(name, {}).values())
            entries.append(CatalogEntry(name, g, (identity_automorphism(g),) + auts, _tags(g), f"file {f.name}"))
    return entries

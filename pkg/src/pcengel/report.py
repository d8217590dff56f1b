"""Analysis sections and the JSON report envelope."""

from __future__ import annotations

import datetime as _dt
import json
from dataclasses import asdict
from typing import Any

from .automorphism import Automorphism, fixed_points
from .certify import CertificationReport, cached_engel_table, jsonable
from .errors import InputError
from .filtration import Filtration, lcs_filtration, validate_strongly_central, zassenhaus_filtration
from .liering import associated_lie_ring, lie_nilpotency_class
from .pcgroup import PcPresentation
from .subgroups import hypercentre, nilpotency_class, upper_central_series

SCHEMA_VERSION = "pcengel-report/1"
FILTRATIONS = ("lcs", "zassenhaus")


def build_filtration(g: PcPresentation, kind: str) -> Filtration:
    if kind == "lcs":
        return lcs_filtration(g)
    if kind == "zassenhaus":
        if len(g.primes) != 1:
            raise InputError(f"{g.name} is not a p-group; the Zassenhaus filtration needs one")
        return zassenhaus_filtration(g, next(iter(g.primes)))
    raise InputError(f"unknown filtration {kind!r}; expected one of {', '.join(FILTRATIONS)}")


def analyze_group(g: PcPresentation, filtration: str = "lcs", automorphisms: tuple[Automorphism, ...] = ()) -> dict:
    """Series, associated Lie ring and Engel summary for one group."""
    f = build_filtration(g, filtration)
    out: dict[str, Any] = {
        "group": g.name,
        "order": g.order,
        "generators": list(g.generators),
        "relative_orders": list(g.relative_orders),
        "class": nilpotency_class(g),
        "upper_central_orders": [z.order for z in upper_central_series(g)],
        "hypercentre_order": hypercentre(g).order,
        "filtration": {
            "kind": f.kind,
            "orders": f.orders(),
            "terminating": f.terminating,
            "strongly_central": validate_strongly_central(f).ok,
        },
    }
    if f.terminating:
        ring = associated_lie_ring(g, f)
        out["lie_ring"] = {
            "components": {str(w): list(ring.moduli[w]) for w in ring.weights},
            "component_orders": [ring.size(w) for w in ring.weights],
            "class": lie_nilpotency_class(ring),
        }
    else:
        out["lie_ring"] = None
    table = cached_engel_table(g)
    right = table.right >= 0
    left = table.left >= 0
    out["engel"] = {
        "right_engel_count": int(right.sum()),
        "left_engel_count": int(left.sum()),
        "max_right_degree": int(table.right[right].max()) if right.any() else None,
        "max_left_degree": int(table.left[left].max()) if left.any() else None,
    }
    out["automorphisms"] = [
        {"name": a.name, "order": a.order, "coprime": a.is_coprime(), "fixed_order": fixed_points(a).order}
        for a in automorphisms
    ]
    return out


def make_report(reports: list[CertificationReport], analyses: list[dict], config: Any = None) -> dict:
    cfg = asdict(config) if config is not None and hasattr(config, "__dataclass_fields__") else config
    header = {"generated": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")}
    if isinstance(cfg, dict) and "out" in cfg:
        # where the report lands is not part of what was computed
        cfg = dict(cfg)
        header["out"] = cfg.pop("out")
    return {
        "schema": SCHEMA_VERSION,
        "header": header,
        "config": jsonable(cfg),
        "reports": [r.to_dict() for r in sorted(reports, key=CertificationReport.sort_key)],
        "analyses": sorted(analyses, key=lambda a: (a["group"], a["filtration"]["kind"])),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def strip_header(text: str) -> dict:
    """Parsed report without the timestamp header, for comparisons."""
    data = json.loads(text)
    data.pop("header", None)
    return data

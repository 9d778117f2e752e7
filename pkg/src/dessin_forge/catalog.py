"""Catalog files: one JSON record per dessin class, after a version header line."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import __version__
from .classification import admissible_params, verify_family
from .dessin import DessinInvariants, enumerate_dessins, invariants
from .errors import DessinForgeError
from .groups import build_group
from .specs import Family, GroupSpec, parse_spec

CATALOG_FORMAT = "dessin-forge-catalog"
CATALOG_VERSION = 1


class CatalogError(DessinForgeError):
    """Missing or corrupt catalog file."""


@dataclass(frozen=True)
class CatalogRecord:
    group_spec: str
    class_index: int
    class_count: int
    x_index: int
    y_index: int
    invariants: DessinInvariants
    orbit_size: int
    verdicts: dict = field(default_factory=dict)
    version: str = __version__

    @property
    def unique(self) -> bool:
        return self.class_count == 1

    def to_dict(self) -> dict:
        return {
            "group_spec": self.group_spec,
            "class_index": self.class_index,
            "class_count": self.class_count,
            "x_index": self.x_index,
            "y_index": self.y_index,
            "invariants": self.invariants.to_dict(),
            "orbit_size": self.orbit_size,
            "verdicts": dict(self.verdicts),
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "CatalogRecord":
        d = dict(d)
        d["invariants"] = DessinInvariants.from_dict(d["invariants"])
        return cls(**d)


def records_for(spec: GroupSpec) -> list[CatalogRecord]:
    G = build_group(spec)
    classes = enumerate_dessins(G)
    verdicts = {}
    if isinstance(spec, Family):
        verdicts = {e.claim: e.verdict for e in verify_family(spec).entries}
    return [
        CatalogRecord(
            group_spec=str(spec),
            class_index=k,
            class_count=len(classes),
            x_index=c.dessin.x,
            y_index=c.dessin.y,
            invariants=invariants(c.dessin),
            orbit_size=c.orbit_size,
            verdicts=verdicts,
        )
        for k, c in enumerate(classes)
    ]


def build_catalog(specs: Sequence[GroupSpec] = (), max_order: Optional[int] = None) -> list[CatalogRecord]:
    todo: list[GroupSpec] = list(specs)
    if max_order is not None:
        todo += [p for p in admissible_params(max_order) if p not in todo]
    records = []
    for spec in todo:
        records.extend(records_for(spec))
    return records


def write_catalog(path: Path | str, records: Iterable[CatalogRecord]) -> int:
    path = Path(path)
    count = 0
    with path.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"format": CATALOG_FORMAT, "version": CATALOG_VERSION}) + "\n")
        for r in records:
            fh.write(r.to_json() + "\n")
            count += 1
    return count


def read_catalog(path: Path | str) -> list[CatalogRecord]:
    path = Path(path)
    if not path.exists():
        raise CatalogError(f"catalog {path} does not exist")
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise CatalogError(f"catalog {path} is empty (no header)")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog {path}: bad header") from exc
    if header.get("format") != CATALOG_FORMAT or header.get("version") != CATALOG_VERSION:
        raise CatalogError(f"catalog {path}: unsupported header {header}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            record = CatalogRecord.from_dict(json.loads(line))
            parse_spec(record.group_spec)
        except (json.JSONDecodeError, TypeError, KeyError, DessinForgeError) as exc:
            raise CatalogError(f"catalog {path}: corrupt record on line {lineno}: {exc}") from exc
        records.append(record)
    return records


def query(
    records: Iterable[CatalogRecord],
    *,
    genus_min: Optional[int] = None,
    genus_max: Optional[int] = None,
    type_triple: Optional[tuple[int, int, int]] = None,
    symmetric: Optional[bool] = None,
    reflexible: Optional[bool] = None,
    totally_symmetric: Optional[bool] = None,
    unique: Optional[bool] = None,
) -> list[CatalogRecord]:
    out = []
    for r in records:
        inv = r.invariants
        if genus_min is not None and inv.genus < genus_min:
            continue
        if genus_max is not None and inv.genus > genus_max:
            continue
        if type_triple is not None and tuple(inv.type_triple) != tuple(type_triple):
            continue
        if symmetric is not None and inv.symmetric != symmetric:
            continue
        if reflexible is not None and inv.reflexible != reflexible:
            continue
        if totally_symmetric is not None and inv.totally_symmetric != totally_symmetric:
            continue
        if unique is not None and r.unique != unique:
            continue
        out.append(r)
    return out

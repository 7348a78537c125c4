"""Classification pipeline, catalog files and verification against references.

Pipeline for ``n`` points:

1. enumerate allowable structures, split into independent subtrees at the
   joint choice of the first two nodes;
2. key every structure by its permutation invariants and canonicalize it,
   keeping one representative per canonical form (an invariant key that
   differs inside one canonical class is a defect and aborts the run);
3. solve the margin LP on each representative;
4. sort the generic classes by canonical form.
"""
from __future__ import annotations

import bisect
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import comb
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .canon import InvariantKey, canonical_form, invariant_key
from .core import GromovStructure, from_code, parse, serialize
from .enumerate import MAX_N, MIN_N, _check_n, allowable_codes, is_allowable, subtree_masks
from .errors import (
    CatalogFileError,
    CorruptRecord,
    LookupFailure,
    NotFound,
    NotDeltaGeneric,
    SchemaVersionMismatch,
    SizeMismatch,
    ValidationError,
)
from .fixtures import Fixture, name_map
from .genericity import build_problem, solve, witness_distances
from .matrixrep import chain_decomposition, closed_subsets, invariants, structure_matrix
from .metric import DistanceMatrix, pendant_free_reduction, structure_of_metric

__all__ = [
    "SCHEMA_VERSION",
    "Containment",
    "ClassRecord",
    "Catalog",
    "ReportLine",
    "VerificationReport",
    "RankAudit",
    "rank_audit",
    "classify_all",
    "identify",
    "classify_substructures",
    "verify_fixtures",
    "save",
    "load",
    "shipped_catalog",
    "catalog_dir",
]

SCHEMA = "gromovclass-catalog"
SCHEMA_VERSION = 1
CATALOG_DIR_ENV = "GROMOVCLASS_CATALOG_DIR"


@dataclass(frozen=True)
class Containment:
    size: int
    label: str
    nodes: tuple[int, ...]


@dataclass(frozen=True)
class ClassRecord:
    class_id: int
    canonical: str
    n: int
    key: InvariantKey
    block: int
    generic: bool
    margin: Fraction
    witness: tuple[tuple[int, ...], ...] | None
    contains: tuple[Containment, ...] = ()
    label: str | None = None

    @property
    def structure(self) -> GromovStructure:
        return parse(self.canonical, self.n)

    @property
    def name(self) -> str:
        """Published name when there is one, else ``C<n>.<id>``."""
        return self.label or f"C{self.n}.{self.class_id}"

    def witness_metric(self) -> DistanceMatrix | None:
        return None if self.witness is None else DistanceMatrix.from_rows(self.witness)


@dataclass(frozen=True)
class Catalog:
    n: int
    records: tuple[ClassRecord, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def find(self, canonical: str) -> ClassRecord | None:
        keys = [r.canonical for r in self.records]
        i = bisect.bisect_left(keys, canonical)
        if i < len(keys) and keys[i] == canonical:
            return self.records[i]
        return None

    def by_id(self, class_id: int) -> ClassRecord:
        return self.records[class_id - 1]


# ---------------------------------------------------------------- pipeline


def _map(fn, items: list, workers: int):
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _classes_of(args) -> tuple[int, np.ndarray, np.ndarray]:
    """Allowable count, unique canonical codes and their invariant rows for one task."""
    n, mode, mask = args
    codes = kernels.enumerate_codes(n, mask) if mode == "full" else allowable_codes(n, mode)
    if len(codes) == 0:
        empty = np.zeros((0, n), dtype=np.uint8)
        return 0, empty, np.zeros((0, 0), dtype=np.int64)
    table = kernels.invariant_table(codes, n)
    canon = kernels.canonical_codes(codes, n)
    both = np.unique(np.hstack([canon.astype(np.int64), table]), axis=0)
    return len(codes), both[:, :n].astype(np.uint8), both[:, n:]


def _solve_code(args) -> tuple[Fraction, tuple | None]:
    n, code = args
    verdict = solve(build_problem(from_code(n, code)))
    if not verdict.generic:
        return verdict.margin, None
    d = witness_distances(verdict.witness)
    return verdict.margin, tuple(tuple(int(x) for x in row) for row in d.d)


_CACHE: dict[tuple[int, str], Catalog] = {}


def classify_all(n: int, workers: int | None = None, mode: str = "full", substructures: bool = True) -> Catalog:
    """Catalog of all generic classes of ``n``-point structures.

    The result does not depend on ``workers``.  ``mode="chain-seeded"``
    enumerates only structures with their longest chain laid out on the
    first nodes; it reaches every class and serves as a cross-check.
    """
    _check_n(n)
    workers = (os.cpu_count() or 1) if workers is None else max(1, workers)
    if mode == "full":
        tasks = [(n, mode, m) for m in subtree_masks(n)]
    else:
        tasks = [(n, mode, None)]
    parts = _map(_classes_of, tasks, workers)
    allowable = sum(p[0] for p in parts)
    canon = np.concatenate([p[1] for p in parts if len(p[1])])
    table = np.concatenate([p[2] for p in parts if len(p[2])])
    rows, first = np.unique(canon, axis=0, return_index=True)
    merged = np.unique(np.hstack([canon.astype(np.int64), table]), axis=0)
    if len(merged) != len(rows):
        raise RuntimeError("invariant key differs inside a canonical class")
    buckets = len(np.unique(table[first], axis=0))

    results = _map(_solve_code, [(n, tuple(int(x) for x in r)) for r in rows], workers)
    names = name_map()
    smaller = _smaller_catalogs(n, workers, mode) if substructures else {}
    records = []
    non_generic = []
    for code, (margin, witness) in zip(rows, results):
        s = from_code(n, code)
        text = serialize(s)
        if witness is None:
            non_generic.append(text)
            continue
        key = invariant_key(s)
        block = invariants(structure_matrix(s), s).block
        contains = classify_substructures(smaller, s) if substructures else ()
        records.append(
            ClassRecord(len(records) + 1, text, n, key, block, True, margin, witness, contains, names.get(text))
        )
    metadata = {
        "raw": comb(n - 1, 2) ** n,
        "allowable": allowable,
        "canonical": len(rows),
        "generic": len(records),
        "invariant_buckets": buckets,
        "mode": mode,
        "non_generic": non_generic,
    }
    cat = Catalog(n, tuple(records), metadata)
    if substructures:
        _CACHE[(n, mode)] = cat
    return cat


def _smaller_catalogs(n: int, workers: int, mode: str) -> dict[int, Catalog]:
    out = {}
    for m in range(MIN_N, n):
        if (m, mode) not in _CACHE:
            classify_all(m, workers, mode)
        out[m] = _CACHE[(m, mode)]
    return out


def classify_substructures(catalogs: Mapping[int, Catalog], s: GromovStructure) -> tuple[Containment, ...]:
    """Classes of the restrictions of ``s`` to its closed proper subsets."""
    out = []
    for sub in closed_subsets(s):
        if sub.structure is None:
            raise LookupFailure(f"closed subset {sub.nodes} of {s} is too small to carry a structure")
        m = len(sub.nodes)
        cat = catalogs.get(m)
        if cat is None:
            raise LookupFailure(f"no {m}-point catalog available")
        rec = cat.find(canonical_form(sub.structure).text)
        if rec is None:
            raise LookupFailure(f"restriction of {s} to {sub.nodes} is not in the {m}-point catalog")
        out.append(Containment(m, rec.name, sub.nodes))
    return tuple(out)


def identify(c: Catalog, d: DistanceMatrix) -> ClassRecord:
    if d.n != c.n:
        raise SizeMismatch(c.n, d.n)
    s = structure_of_metric(d)
    text = canonical_form(s).text
    rec = c.find(text)
    if rec is None:
        raise NotFound(f"structure {serialize(s)} (canonical {text}) is realized by a metric but missing "
                       f"from the {c.n}-point catalog")
    return rec


# ---------------------------------------------------------------- files


def _record_json(r: ClassRecord) -> dict:
    k = r.key
    return {
        "id": r.class_id,
        "canonical": r.canonical,
        "label": r.label,
        "type": k.type_label,
        "roles": list(k.roles),
        "removed": k.removed,
        "rank": k.rank,
        "traces": list(k.traces),
        "irreducible": k.irreducible,
        "block": r.block,
        "generic": r.generic,
        "margin": str(r.margin) if r.margin.denominator != 1 else f"{r.margin}/1",
        "witness": [list(row) for row in r.witness] if r.witness is not None else None,
        "contains": [{"size": x.size, "label": x.label, "nodes": list(x.nodes)} for x in r.contains],
    }


def save(c: Catalog, path) -> None:
    doc = {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "n": c.n,
        "metadata": c.metadata,
        "records": [_record_json(r) for r in c.records],
    }
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, ensure_ascii=False)
            fh.write("\n")
    except OSError as exc:
        raise CatalogFileError(f"cannot write {path}: {exc}") from exc


def _record_from_json(n: int, pos: int, obj: dict, verify_witnesses: bool) -> ClassRecord:
    where = f"record {pos + 1}"
    try:
        s = parse(obj["canonical"], n)
        key = InvariantKey(
            n, obj["type"], tuple(obj["roles"]), int(obj["removed"]), int(obj["rank"]),
            tuple(obj["traces"]), bool(obj["irreducible"]),
        )
        num, _, den = obj["margin"].partition("/")
        margin = Fraction(int(num), int(den or 1))
        witness = None if obj["witness"] is None else tuple(tuple(int(x) for x in row) for row in obj["witness"])
        contains = tuple(Containment(int(x["size"]), x["label"], tuple(x["nodes"])) for x in obj["contains"])
        rec = ClassRecord(int(obj["id"]), obj["canonical"], n, key, int(obj["block"]), bool(obj["generic"]),
                          margin, witness, contains, obj.get("label"))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise CorruptRecord(f"{where}: malformed field ({exc})") from None
    if rec.class_id != pos + 1:
        raise CorruptRecord(f"{where}: id {rec.class_id} out of sequence")
    if canonical_form(s).text != rec.canonical:
        raise CorruptRecord(f"{where}: {rec.canonical} is not in canonical form")
    if not is_allowable(s):
        raise CorruptRecord(f"{where}: {rec.canonical} is not allowable")
    if invariant_key(s) != key:
        raise CorruptRecord(f"{where}: stored invariants do not match {rec.canonical}")
    if (witness is not None) != rec.generic or not rec.generic:
        raise CorruptRecord(f"{where}: catalogs hold generic classes with witnesses only")
    if rec.margin <= 0:
        raise CorruptRecord(f"{where}: nonpositive margin on a generic class")
    if bool(contains) == key.irreducible:
        raise CorruptRecord(f"{where}: substructure list inconsistent with irreducibility")
    if verify_witnesses:
        try:
            realized = structure_of_metric(rec.witness_metric())
        except (ValidationError, NotDeltaGeneric) as exc:
            raise CorruptRecord(f"{where}: unusable witness metric ({exc})") from None
        if realized != s:
            raise CorruptRecord(f"{where}: witness metric does not realize {rec.canonical}")
    return rec


def load(path, verify_witnesses: bool = False) -> Catalog:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CatalogFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogFileError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise CatalogFileError(f"{path} is not a gromovclass catalog")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"{path} has schema version {doc.get('schema_version')}, expected {SCHEMA_VERSION}"
        )
    try:
        n = int(doc["n"])
        raw = list(doc["records"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptRecord(f"{path}: bad header ({exc})") from None
    records = tuple(_record_from_json(n, i, obj, verify_witnesses) for i, obj in enumerate(raw))
    texts = [r.canonical for r in records]
    if texts != sorted(texts) or len(set(texts)) != len(texts):
        raise CorruptRecord(f"{path}: records not strictly sorted by canonical form")
    return Catalog(n, records, dict(doc.get("metadata", {})))


def catalog_dir():
    """Directory holding ``n<k>.json`` catalogs: ``$GROMOVCLASS_CATALOG_DIR`` or the bundled one."""
    env = os.environ.get(CATALOG_DIR_ENV)
    if env:
        return env
    return resources.files("gromovclass") / "data" / "catalogs"


def shipped_catalog(n: int, directory=None) -> Catalog:
    base = directory if directory is not None else catalog_dir()
    return load(os.path.join(str(base), f"n{n}.json"))


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class ReportLine:
    severity: str  # "error" or "note"
    check: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity.upper():5} [{self.check}] {self.where}: {self.message}"


@dataclass
class VerificationReport:
    n: int
    rows: int = 0
    matched: int = 0
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    census: list = field(default_factory=list)
    reducible_groups: dict = field(default_factory=dict)

    @property
    def errors(self) -> list[ReportLine]:
        return [x for x in self.lines if x.severity == "error"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def add(self, severity: str, check: str, where: str, message: str) -> None:
        self.lines.append(ReportLine(severity, check, where, message))

    def render(self) -> str:
        out = [
            f"n={self.n}: {self.rows} fixture rows, {self.matched} matched, "
            f"{len(self.missing)} missing from catalog, {len(self.extra)} catalog classes not in fixture"
        ]
        for name, computed, printed in self.census:
            mark = "ok" if computed == printed else "MISMATCH"
            out.append(f"census {name}: computed {computed}, printed {printed} {mark}")
        for size, count in sorted(self.reducible_groups.items()):
            out.append(f"reducible rows whose smallest closed subset has {size} points: {count}")
        out.extend(str(x) for x in self.lines)
        out.append("verdict: " + ("PASS" if self.ok else f"FAIL ({len(self.errors)} errors)"))
        return "\n".join(out)


def _partition(s: GromovStructure) -> tuple[tuple[int, ...], bool]:
    comps = chain_decomposition(s).components
    lengths = tuple(sorted((len(nodes) for _, nodes in comps), reverse=True))
    return lengths, any(kind == "cycle" for kind, _ in comps)


def _parse_census_type(text: str):
    """``"7 (Cycle)"`` -> ((7,), True); ``"4+3"`` -> ((4, 3), None); ``"1×7"`` -> ((1,)*7, None)."""
    body, _, suffix = text.partition("(")
    body = body.strip()
    cycle = None
    if suffix:
        cycle = suffix.lower().startswith("cycle")
    if "×" in body:
        k, _, m = body.partition("×")
        lengths = (int(k),) * int(m)
    else:
        lengths = tuple(int(x) for x in body.split("+") if x != "0")
    return tuple(sorted(lengths, reverse=True)), cycle


def _smallest_closed(rec_contains: Iterable[Containment]) -> int | None:
    sizes = [x.size for x in rec_contains]
    return min(sizes) if sizes else None


def verify_fixtures(c: Catalog, f: Fixture, catalogs: Mapping[int, Catalog] | None = None) -> VerificationReport:
    """Compare a catalog with a reference fixture; every discrepancy becomes a report line.

    ``catalogs`` supplies the smaller catalogs used to name closed
    substructures of fixture rows; they are computed when needed.
    """
    if f.n != c.n:
        raise SizeMismatch(c.n, f.n)
    rep = VerificationReport(c.n)
    seen: dict[str, str] = {}
    matched_ids = set()

    def where(t, r):
        return f"{f.source}:{r.line} ({t.name})"

    for t, r in f.rows():
        rep.rows += 1
        loc = where(t, r)
        s = r.structure
        v = is_allowable(s)
        if not v:
            rep.add("error", "a", loc, f"{serialize(s)} is not allowable: {v.reason}")
            continue
        cf = canonical_form(s)
        # (c) pairwise inequivalence
        if cf.text in seen:
            rep.add("error", "c", loc, f"{serialize(s)} is equivalent to the row at {seen[cf.text]}")
        else:
            seen[cf.text] = loc
        rec = c.find(cf.text)
        # (a) genericity: relabel the catalog witness onto the row, else solve the row itself
        if rec is not None:
            d = rec.witness_metric().relabeled(cf.permutation.inverse())
            if structure_of_metric(d) != s:
                rep.add("error", "a", loc, f"relabeled witness of class {rec.name} does not realize the row")
        else:
            verdict = solve(build_problem(s))
            if not verdict.generic:
                rep.add("error", "a", loc, f"{serialize(s)} is not generic (margin {verdict.margin})")
            else:
                rep.add("error", "b", loc, f"{serialize(s)} is generic but its class {cf.text} is not in the catalog")
            rep.missing.append((loc, serialize(s)))
            continue
        rep.matched += 1
        matched_ids.add(rec.class_id)
        _check_row_fields(rep, t, r, rec, loc)

    # (d) classes the fixture does not list
    for rec in c.records:
        if rec.class_id not in matched_ids:
            rep.extra.append(rec)
            rep.add("error", "d", f"catalog class {rec.class_id}", f"{rec.canonical} ({rec.key.type_label}) "
                    "is not listed in the fixture")

    if f.census:
        _check_census(rep, c, f)
    headed = [(t, r) for t, r in f.rows() if r.heading is not None]
    if headed:
        _check_headings(rep, c, f, headed, catalogs)
    return rep


def _check_row_fields(rep: VerificationReport, t, r, rec: ClassRecord, loc: str) -> None:
    """(e) printed type, roles, removed edges and R/I flag against computed ones."""
    s = r.structure
    dec = chain_decomposition(s)
    fields = r.fields
    if "type" in fields and fields["type"] != dec.label:
        rep.add("error", "e", loc, f"type printed {fields['type']!r}, computed {dec.label!r}")
    if all(k in fields for k in ("disc", "end", "int")):
        printed = (int(fields["disc"]), int(fields["end"]), int(fields["int"]))
        if printed != dec.roles:
            rep.add("error", "e", loc, f"(isolated, end, interior) printed {printed}, computed {dec.roles}")
    if "remv" in fields and int(fields["remv"]) != len(s.image()):
        rep.add("error", "e", loc, f"removed edges printed {fields['remv']}, computed {len(s.image())}")
    if "ri" in fields:
        computed = "I" if rec.key.irreducible else "R"
        if fields["ri"] != computed:
            rep.add("error", "e", loc, f"R/I printed {fields['ri']}, computed {computed}")
    if "label" in fields and rec.label is not None and fields["label"] != rec.label:
        rep.add("error", "e", loc, f"label printed {fields['label']}, name map gives {rec.label}")
    if "partition" in t.expect:
        want = _parse_census_type(t.expect["partition"])[0]
        got = _partition(s)[0]
        if want != got:
            rep.add("error", "e", loc, f"table {t.name} lists {t.expect['partition']}, computed components "
                    f"{'+'.join(map(str, got))}")


def _check_census(rep: VerificationReport, c: Catalog, f: Fixture) -> None:
    """Per-type counts of irreducible classes and grouping of reducible ones."""
    groups: list[list] = []
    for row in f.census:
        if groups and row.number is None:
            groups[-1].append(row)
        else:
            groups.append([row])
    irreducible = [r for r in c.records if r.key.irreducible]
    reducible = [r for r in c.records if not r.key.irreducible]
    assigned = Counter()
    for group in groups:
        name = " / ".join(r.type for r in group)
        printed = group[0].number
        if group[0].type.startswith("Contains"):
            size = int(group[0].type.split("(")[1].split(")")[0])
            computed = sum(1 for r in reducible if _smallest_closed(r.contains) == size)
            rep.census.append((name, computed, printed))
            if computed != printed:
                rep.add("error", "census", f"{f.source}:{group[0].line}",
                        f"{name}: printed {printed}, computed {computed}")
            continue
        members = []
        for rec in irreducible:
            lengths, cyc = _partition(rec.structure)
            for row in group:
                want, want_cycle = _parse_census_type(row.type)
                if lengths == want and (want_cycle is None or want_cycle == cyc):
                    members.append((rec, row))
                    break
        flagged = set()
        for rec, row in members:
            assigned[rec.class_id] += 1
            if row.roles is None or row.roles == rec.key.roles or row.line in flagged:
                continue
            flagged.add(row.line)
            if sum(row.roles) != c.n:
                # printed roles cannot describe n points; report and use the computed ones
                rep.add("note", "census", f"{f.source}:{row.line}",
                        f"{row.type}: printed (isolated, end, internal) {row.roles} do not sum to {c.n}; "
                        f"computed {rec.key.roles}")
            else:
                rep.add("error", "census", f"{f.source}:{row.line}",
                        f"{row.type}: printed roles {row.roles}, computed {rec.key.roles} for {rec.canonical}")
        computed = len(members)
        rep.census.append((name, computed, printed))
        if computed != printed:
            rep.add("error", "census", f"{f.source}:{group[0].line}", f"{name}: printed {printed}, computed {computed}")
    for rec in irreducible:
        if assigned[rec.class_id] != 1:
            rep.add("error", "census", f"catalog class {rec.class_id}",
                    f"{rec.canonical} falls in {assigned[rec.class_id]} census groups")


def _check_headings(rep, c: Catalog, f: Fixture, headed, catalogs) -> None:
    """(f) each headed row contains the heading's class; tally smallest closed subsets."""
    if catalogs is None:
        catalogs = {m: classify_all(m) for m in range(MIN_N, c.n)}
    tally = Counter()
    for t, r in headed:
        loc = f"{f.source}:{r.line} ({t.name}, under {r.heading})"
        try:
            contains = classify_substructures(catalogs, r.structure)
        except LookupFailure as exc:
            rep.add("error", "f", loc, str(exc))
            continue
        if not contains:
            rep.add("error", "f", loc, f"{serialize(r.structure)} is irreducible")
            continue
        tally[_smallest_closed(contains)] += 1
        labels = {x.label for x in contains}
        if r.heading not in labels:
            found = ", ".join(f"{x.label} on {x.nodes}" for x in contains)
            rep.add("error", "f", loc, f"heading {r.heading} not among closed substructures ({found})")
    rep.reducible_groups = dict(tally)
    printed = {
        int(g.type.split("(")[1].split(")")[0]): g.number for g in f.census if g.type.startswith("Contains")
    }
    for size, count in sorted(printed.items()):
        if tally.get(size, 0) != count:
            rep.add("error", "f", f.source, f"reducible rows with smallest closed subset of {size} points: "
                    f"printed {count}, fixture rows give {tally.get(size, 0)}")


def pipeline_summary(c: Catalog) -> str:
    m = c.metadata
    return (f"n={c.n}: raw {m.get('raw')}, allowable {m.get('allowable')}, canonical {m.get('canonical')}, "
            f"generic {m.get('generic')}\nclasses: {len(c)}")


@dataclass
class RankAudit:
    """Matrix rank against the number of edges a pendant-free reduction removes."""

    n: int
    agreements: int = 0
    divergences: list = field(default_factory=list)  # (canonical, rank, removed)

    @property
    def classes(self) -> int:
        return self.agreements + len(self.divergences)

    def render(self) -> str:
        out = [f"n={self.n}: rank equals removed-edge count on {self.agreements} of {self.classes} classes"]
        out.extend(f"  {text}: rank {rank}, removed {removed}" for text, rank, removed in self.divergences)
        return "\n".join(out)


def rank_audit(c: Catalog) -> RankAudit:
    """Compare rank and removed edges on every class.

    The removed-edge count is measured on the witness metric's pendant-free
    reduction, so it does not rely on the stored invariants.
    """
    audit = RankAudit(c.n)
    for r in c:
        removed = comb(c.n, 2) - len(pendant_free_reduction(r.witness_metric()).edges)
        if removed != r.key.removed:
            raise RuntimeError(f"{r.canonical}: reduction removes {removed} edges, invariants say {r.key.removed}")
        if removed == r.key.rank:
            audit.agreements += 1
        else:
            audit.divergences.append((r.canonical, r.key.rank, removed))
    return audit


# keep the supported range visible to callers of this module
SUPPORTED_N = range(MIN_N, MAX_N + 1)

"""Reader for the bundled reference lists of published structures.

File format, one item per line::

    # comment
    n 7
    @census type | ri | isolated | end | internal | number
    @count 6+1 | I | 1 | 2 | 4 | 8
    @table A2 | 6+1 Decomposition
    @expect partition=6+1
    @columns structure
    @heading R_1
    124 213 324 435 546 657 713

``@columns`` names the ``|``-separated fields of the data lines that follow;
one of them must be ``structure``.  ``@heading`` tags the following rows of
the current table with a substructure label.  Data is kept as printed, so a
typo in a source table shows up as a report line, not a parse failure,
unless the row cannot be read as a structure at all.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .core import GromovStructure, parse
from .errors import FixtureError, ValidationError

__all__ = [
    "Fixture",
    "FixtureTable",
    "FixtureRow",
    "CensusRow",
    "parse_fixture",
    "read_fixture",
    "bundled_fixture",
    "name_map",
]


@dataclass(frozen=True)
class FixtureRow:
    line: int
    structure: GromovStructure
    fields: dict = field(default_factory=dict, compare=False)
    heading: str | None = None

    @property
    def label(self) -> str | None:
        return self.fields.get("label")


@dataclass(frozen=True)
class FixtureTable:
    name: str
    caption: str
    columns: tuple[str, ...]
    expect: dict
    rows: tuple[FixtureRow, ...]


@dataclass(frozen=True)
class CensusRow:
    line: int
    type: str
    ri: str
    roles: tuple[int, int, int] | None
    number: int | None


@dataclass(frozen=True)
class Fixture:
    n: int
    tables: tuple[FixtureTable, ...]
    census: tuple[CensusRow, ...] = ()
    source: str = "<string>"

    def rows(self):
        for t in self.tables:
            for r in t.rows:
                yield t, r

    def table(self, name: str) -> FixtureTable:
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(name)


def _split(text: str) -> list[str]:
    return [x.strip() for x in text.split("|")]


def _int_or_none(text: str) -> int | None:
    return int(text) if text else None


def parse_fixture(text: str, source: str = "<string>") -> Fixture:
    n = None
    tables: list[FixtureTable] = []
    census: list[CensusRow] = []
    census_cols: list[str] = []
    cur: dict | None = None

    def close():
        if cur is not None:
            tables.append(
                FixtureTable(cur["name"], cur["caption"], tuple(cur["columns"]), cur["expect"], tuple(cur["rows"]))
            )

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("n ") and n is None:
            try:
                n = int(line[2:])
            except ValueError:
                raise FixtureError(f"bad size line {line!r}", lineno) from None
            continue
        if n is None:
            raise FixtureError("the size line 'n <int>' must come first", lineno)
        if line.startswith("@"):
            word, _, rest = line.partition(" ")
            if word == "@table":
                close()
                name, _, caption = rest.partition("|")
                cur = {"name": name.strip(), "caption": caption.strip(), "columns": ["structure"],
                       "expect": {}, "rows": [], "heading": None}
            elif word == "@census":
                census_cols = _split(rest)
            elif word == "@count":
                vals = dict(zip(census_cols, _split(rest)))
                try:
                    iso, end, inner = (_int_or_none(vals.get(k, "")) for k in ("isolated", "end", "internal"))
                    roles = None if None in (iso, end, inner) else (iso, end, inner)
                    census.append(CensusRow(lineno, vals["type"], vals.get("ri", ""), roles,
                                            _int_or_none(vals.get("number", ""))))
                except (KeyError, ValueError) as exc:
                    raise FixtureError(f"bad census row: {exc}", lineno) from None
            elif cur is None:
                raise FixtureError(f"{word} outside a table", lineno)
            elif word == "@columns":
                cur["columns"] = _split(rest)
                if "structure" not in cur["columns"]:
                    raise FixtureError("@columns must include 'structure'", lineno)
            elif word == "@expect":
                key, _, value = rest.partition("=")
                cur["expect"][key.strip()] = value.strip()
            elif word == "@heading":
                cur["heading"] = rest.strip()
            else:
                raise FixtureError(f"unknown directive {word}", lineno)
            continue
        if cur is None:
            raise FixtureError("data row outside a table", lineno)
        vals = _split(line)
        if len(vals) != len(cur["columns"]):
            raise FixtureError(f"expected {len(cur['columns'])} fields, got {len(vals)}", lineno)
        fields = dict(zip(cur["columns"], vals))
        try:
            s = parse(fields.pop("structure"), n)
        except ValidationError as exc:
            raise FixtureError(str(exc), lineno) from None
        cur["rows"].append(FixtureRow(lineno, s, fields, cur["heading"]))
    close()
    if n is None:
        raise FixtureError("empty fixture")
    return Fixture(n, tuple(tables), tuple(census), source)


def read_fixture(path) -> Fixture:
    with open(path, encoding="utf-8") as fh:
        return parse_fixture(fh.read(), str(path))


@lru_cache(maxsize=None)
def bundled_fixture(n: int) -> Fixture:
    ref = resources.files("gromovclass") / "data" / "fixtures" / f"n{n}.txt"
    if not ref.is_file():
        raise FileNotFoundError(f"no bundled fixture for n={n}")
    return parse_fixture(ref.read_text(encoding="utf-8"), f"n{n}.txt")


@lru_cache(maxsize=None)
def name_map() -> dict[str, str]:
    """Published names of the 4-, 5- and 6-point classes, keyed by canonical form."""
    from .canon import canonical_form

    out = {}
    for n in (4, 5, 6):
        for _, row in bundled_fixture(n).rows():
            if row.label:
                out[canonical_form(row.structure).text] = row.label
    return out

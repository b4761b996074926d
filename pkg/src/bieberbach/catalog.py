"""AGS group file parsing/serialization and catalog classification.

AGS is a small text format for affine group specifications: UTF-8, '#'
comments, whitespace-separated tokens::

    ags 1
    dim <n>
    name <string>      # optional
    gen                # repeated per generator
    <n+1 rows, each with n+1 entries: integer or p/q>

The last row of every generator block must be 0 ... 0 1; the lattice Z^n is
implicit and never listed. Witness sets use the same header with ``elt``
blocks instead of ``gen``.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .affine import GroupSpec, AffineElement, fixed_space_rank, holonomy_closure, validate
from .decider import Verdict, decide
from .finite_groups import is_solvable, sylow_all_cyclic
from .witness import ElementSet

CSV_HEADER = "name,dimension,betti,holonomy_order,solvable,sylow_cyclic,verdict,chain"

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def bundled_fixture(name: str) -> Path:
    """Path of a bundled .ags fixture, e.g. bundled_fixture('hw_standard')."""
    return FIXTURE_DIR / f"{name}.ags"


def bundled_catalog_dir() -> Path:
    """Directory of the bundled dims 1-3 catalog (13 groups)."""
    return FIXTURE_DIR / "catalog_dims1to3"


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _logical_lines(text: str):
    """(line_number, tokens) for each non-empty line, comments stripped."""
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield i, body.split()


def _parse_entry(token: str, line: int) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f"bad rational entry {token!r}") from None


def _parse_blocks(text: str, keyword: str):
    """Shared reader for 'gen'/'elt' files; returns (dim, name, matrices)."""
    lines = list(_logical_lines(text))
    pos = 0
    if pos >= len(lines) or lines[pos][1] != ["ags", "1"]:
        raise ParseError(lines[pos][0] if pos < len(lines) else 1,
                         "expected header 'ags 1'")
    pos += 1
    if pos >= len(lines) or lines[pos][1][0] != "dim" or len(lines[pos][1]) != 2:
        raise ParseError(lines[pos][0] if pos < len(lines) else 1,
                         "expected 'dim <n>'")
    try:
        dim = int(lines[pos][1][1])
    except ValueError:
        raise ParseError(lines[pos][0], "dimension must be an integer") from None
    if dim < 0:
        raise ParseError(lines[pos][0], "dimension must be >= 0")
    pos += 1
    name = None
    if pos < len(lines) and lines[pos][1][0] == "name":
        if len(lines[pos][1]) < 2:
            raise ParseError(lines[pos][0], "empty name")
        name = " ".join(lines[pos][1][1:])
        pos += 1
    matrices = []
    while pos < len(lines):
        line_no, tokens = lines[pos]
        if tokens != [keyword]:
            raise ParseError(line_no, f"expected '{keyword}', got {' '.join(tokens)!r}")
        pos += 1
        rows = []
        for r in range(dim + 1):
            if pos >= len(lines):
                raise ParseError(line_no, f"{keyword} block truncated")
            row_line, row_tokens = lines[pos]
            if len(row_tokens) != dim + 1:
                raise ParseError(
                    row_line,
                    f"expected {dim + 1} entries, got {len(row_tokens)}",
                )
            rows.append([_parse_entry(t, row_line) for t in row_tokens])
            pos += 1
        if rows[dim] != [Fraction(0)] * dim + [Fraction(1)]:
            raise ParseError(line_no, "last row of affine matrix must be 0 ... 0 1")
        matrices.append((line_no, rows))
    return dim, name, matrices


def _to_affine(rows, dim: int, line_no: int) -> AffineElement:
    linear = [row[:dim] for row in rows[:dim]]
    if any(e.denominator != 1 for row in linear for e in row):
        raise ParseError(line_no, "linear part must be integral")
    translation = tuple(rows[i][dim] for i in range(dim))
    try:
        return AffineElement(tuple(tuple(int(e) for e in row) for row in linear),
                             translation)
    except ValueError as exc:
        raise ParseError(line_no, str(exc)) from None


def parse_group(text: str) -> GroupSpec:
    dim, name, matrices = _parse_blocks(text, "gen")
    generators = tuple(_to_affine(rows, dim, ln) for ln, rows in matrices)
    return GroupSpec(dim, generators, name=name)


def parse_element_set(text: str) -> tuple[ElementSet, str | None]:
    dim, name, matrices = _parse_blocks(text, "elt")
    elements = tuple(_to_affine(rows, dim, ln) for ln, rows in matrices)
    return ElementSet(dim, elements), name


def _entry_text(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _serialize_blocks(dim: int, name: str | None, keyword: str,
                      elements: Iterable[AffineElement]) -> str:
    out = ["ags 1", f"dim {dim}"]
    if name:
        out.append(f"name {name}")
    for g in elements:
        out.append(keyword)
        for i in range(dim):
            row = [_entry_text(Fraction(e)) for e in g.linear[i]]
            row.append(_entry_text(g.translation[i]))
            out.append(" ".join(row))
        out.append(" ".join(["0"] * dim + ["1"]))
    return "\n".join(out) + "\n"


def serialize_group(spec: GroupSpec) -> str:
    return _serialize_blocks(spec.dimension, spec.name, "gen", spec.generators)


def serialize_element_set(A: ElementSet, name: str | None = None) -> str:
    return _serialize_blocks(A.dimension, name, "elt", A.elements)


def serialize_affine(g: AffineElement) -> str:
    """One affine matrix as AGS rows (used in verbose reports)."""
    rows = []
    for i in range(g.dimension):
        row = [_entry_text(Fraction(e)) for e in g.linear[i]]
        row.append(_entry_text(g.translation[i]))
        rows.append(" ".join(row))
    rows.append(" ".join(["0"] * g.dimension + ["1"]))
    return "\n".join(rows)


@dataclass(frozen=True)
class Catalog:
    entries: tuple[tuple[str, GroupSpec], ...]
    source: str = ""

    def __post_init__(self):
        names = [n for n, _ in self.entries]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate catalog names: {dupes}")


def load_catalog(directory: str | Path) -> Catalog:
    directory = Path(directory)
    entries = []
    for path in sorted(directory.glob("*.ags")):
        spec = parse_group(path.read_text())
        name = spec.name or path.stem
        entries.append((name, spec))
    return Catalog(tuple(entries), source=str(directory))


@dataclass(frozen=True)
class GroupRow:
    name: str
    dimension: int
    betti: int
    holonomy_order: int
    solvable: bool
    sylow_cyclic: bool
    verdict: str
    chain: str

    def csv(self) -> str:
        return ",".join(
            [
                self.name,
                str(self.dimension),
                str(self.betti),
                str(self.holonomy_order),
                "true" if self.solvable else "false",
                "true" if self.sylow_cyclic else "false",
                self.verdict,
                self.chain,
            ]
        )


@dataclass(frozen=True)
class ClassificationTable:
    rows: tuple[GroupRow, ...]
    invalid: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def per_dimension(self) -> list[tuple[int, int, int, int]]:
        """(dimension, total, non_diffuse, diffuse) rows, ascending dimension."""
        dims = sorted({row.dimension for row in self.rows})
        out = []
        for d in dims:
            sub = [r for r in self.rows if r.dimension == d]
            nd = sum(1 for r in sub if r.verdict == "non-diffuse")
            out.append((d, len(sub), nd, len(sub) - nd))
        return out

    def csv_text(self) -> str:
        return "\n".join([CSV_HEADER] + [row.csv() for row in self.rows]) + "\n"

    def json_text(self) -> str:
        return json.dumps(
            [
                {
                    "name": r.name,
                    "dimension": r.dimension,
                    "betti": r.betti,
                    "holonomy_order": r.holonomy_order,
                    "solvable": r.solvable,
                    "sylow_cyclic": r.sylow_cyclic,
                    "verdict": r.verdict,
                    "chain": r.chain,
                }
                for r in self.rows
            ],
            indent=2,
        ) + "\n"

    def summary_text(self) -> str:
        lines = ["dimension total non_diffuse diffuse"]
        for d, total, nd, df in self.per_dimension():
            lines.append(f"{d} {total} {nd} {df}")
        return "\n".join(lines) + "\n"


def group_row(name: str, spec: GroupSpec) -> GroupRow:
    H = holonomy_closure(spec)
    verdict: Verdict = decide(spec, check=False)
    return GroupRow(
        name=name,
        dimension=spec.dimension,
        betti=fixed_space_rank(H),
        holonomy_order=H.order,
        solvable=is_solvable(H),
        sylow_cyclic=sylow_all_cyclic(H),
        verdict=verdict.outcome.value,
        chain=verdict.chain_text(),
    )


def _classify_one(item: tuple[str, GroupSpec]):
    name, spec = item
    report = validate(spec)
    if not report.accepted:
        return name, None, report.failures
    return name, group_row(name, spec), ()


def classify_catalog(catalog: Catalog, jobs: int = 1) -> ClassificationTable:
    """Classify every catalog entry; invalid entries are reported, not thrown.

    Output is independent of processing order and parallelism degree: rows
    are sorted by name.
    """
    items = list(catalog.entries)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_classify_one, items))
    else:
        results = [_classify_one(item) for item in items]
    rows = sorted((r for _, r, _ in results if r is not None), key=lambda r: r.name)
    invalid = tuple(
        sorted(((n, f) for n, r, f in results if r is None), key=lambda t: t[0])
    )
    return ClassificationTable(tuple(rows), invalid)

"""Journal-to-journal citation matrices: parsing, merging, totals, profiles.

The interchange format is a plain edge-list CSV:

    citing,cited,count

one directed edge per line, counts as base-10 nonnegative integers, UTF-8,
LF line endings.  Diagonal entries (``citing == cited``) are within-journal
self-citations and are stored like any other cell; downstream code decides
whether to exclude them.  Duplicate ``(citing, cited)`` rows are summed so
per-issue extracts can be concatenated.

A persisted matrix is the edge-list CSV plus a sidecar JSON document
(``<path>.meta.json``) holding the year and the journal registry, including
journals that have no citation links at all.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from types import MappingProxyType
from typing import IO, Iterable, Mapping, Sequence

from .errors import EdgeListParseError, UnknownJournalError, YearMismatchError

JournalId = str

EDGE_HEADER = "citing,cited,count"
REGISTRY_HEADER = ("id", "display_name", "source_index")
SIDECAR_SUFFIX = ".meta.json"

# Cell counts for journals indexed in both source databases are summed on
# merge; the sidecar records this so persisted matrices are self-describing.
MERGE_POLICY = "sum"


class SourceIndex(Enum):
    """Which citation index a journal record came from."""

    SCI = "SCI"
    SSCI = "SSCI"
    BOTH = "BOTH"


def _validate_id(token: str) -> str:
    if not token:
        raise ValueError("journal id must be nonempty")
    if any(ch.isspace() for ch in token):
        raise ValueError(f"journal id {token!r} must not contain whitespace")
    return token


@dataclass(frozen=True)
class Journal:
    """A journal keyed by its abbreviation token."""

    id: JournalId
    display_name: str
    source_index: SourceIndex = SourceIndex.SCI

    def __post_init__(self) -> None:
        _validate_id(self.id)
        if not self.display_name:
            raise ValueError(f"journal {self.id!r}: display_name must be nonempty")


class CitationMatrix:
    """Sparse directed weighted journal-to-journal citation counts for one year.

    Immutable once constructed: all accessors return read-only views, so a
    matrix can be shared across concurrent computations without coordination.
    Only strictly positive counts are stored; every journal referenced by a
    cell is present in the registry (the registry may contain additional,
    isolated journals).
    """

    __slots__ = ("_year", "_journals", "_cells", "_rows", "_cols")

    def __init__(
        self,
        year: int,
        journals: Iterable[Journal],
        cells: Mapping[tuple[JournalId, JournalId], int],
    ) -> None:
        registry: dict[JournalId, Journal] = {}
        for journal in journals:
            existing = registry.get(journal.id)
            if existing is not None and existing != journal:
                raise ValueError(f"conflicting registry entries for {journal.id!r}")
            registry[journal.id] = journal

        stored: dict[tuple[JournalId, JournalId], int] = {}
        rows: dict[JournalId, dict[JournalId, int]] = {}
        cols: dict[JournalId, dict[JournalId, int]] = {}
        for (citing, cited), count in cells.items():
            if count < 0:
                raise ValueError(f"cell ({citing}, {cited}): negative count {count}")
            if count == 0:
                continue
            if citing not in registry:
                raise ValueError(f"cell ({citing}, {cited}): unknown citing journal")
            if cited not in registry:
                raise ValueError(f"cell ({citing}, {cited}): unknown cited journal")
            stored[(citing, cited)] = count
            rows.setdefault(citing, {})[cited] = count
            cols.setdefault(cited, {})[citing] = count

        self._year = year
        self._journals = dict(sorted(registry.items()))
        self._cells = stored
        self._rows = rows
        self._cols = cols

    @property
    def year(self) -> int:
        return self._year

    @property
    def journals(self) -> Mapping[JournalId, Journal]:
        return MappingProxyType(self._journals)

    @property
    def cells(self) -> Mapping[tuple[JournalId, JournalId], int]:
        return MappingProxyType(self._cells)

    def __contains__(self, journal_id: JournalId) -> bool:
        return journal_id in self._journals

    def __len__(self) -> int:
        return len(self._journals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CitationMatrix):
            return NotImplemented
        return (
            self._year == other._year
            and self._journals == other._journals
            and self._cells == other._cells
        )

    def __repr__(self) -> str:
        return (
            f"CitationMatrix(year={self._year}, journals={len(self._journals)}, "
            f"cells={len(self._cells)})"
        )

    def cell(self, citing: JournalId, cited: JournalId) -> int:
        """Count of citations from *citing* to *cited* (0 if absent)."""
        return self._rows.get(citing, {}).get(cited, 0)

    def row(self, citing: JournalId) -> Mapping[JournalId, int]:
        """Outgoing counts of *citing*: cited journal -> count."""
        return MappingProxyType(self._rows.get(citing, {}))

    def col(self, cited: JournalId) -> Mapping[JournalId, int]:
        """Incoming counts of *cited*: citing journal -> count."""
        return MappingProxyType(self._cols.get(cited, {}))


def _parse_count(field: str, line_no: int) -> int:
    if field.isascii() and field.isdigit():
        return int(field)
    try:
        value = int(field)
    except ValueError:
        raise EdgeListParseError(line_no, f"non-integer count {field!r}") from None
    if value < 0:
        raise EdgeListParseError(line_no, f"negative count {value}")
    # Reject forms like "+5" or "1_0" that int() would accept.
    raise EdgeListParseError(line_no, f"malformed count {field!r}")


def parse_citation_csv(
    stream: IO[str] | str,
    year: int,
    *,
    source: SourceIndex = SourceIndex.SCI,
    registry: Mapping[JournalId, Journal] | None = None,
) -> CitationMatrix:
    """Parse an edge-list CSV into a :class:`CitationMatrix`.

    A leading ``citing,cited,count`` header line is skipped; blank lines are
    ignored.  Duplicate ``(citing, cited)`` rows are summed.  Journals seen in
    the edge list default to ``display_name == id`` and the given *source*
    unless *registry* supplies a record; all registry journals are included
    even when they have no edges.

    Raises :class:`EdgeListParseError` (with the offending line number) on a
    malformed row, and for input containing no data rows at all.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)

    cells: dict[tuple[JournalId, JournalId], int] = {}
    seen: dict[JournalId, None] = {}
    data_rows = 0
    for line_no, raw_line in enumerate(stream, start=1):
        line = raw_line.rstrip("\r\n")
        if not line.strip():
            continue
        if line_no == 1 and line.strip().lower() == EDGE_HEADER:
            continue
        fields = line.split(",")
        if len(fields) != 3:
            raise EdgeListParseError(line_no, f"expected 3 fields, got {len(fields)}")
        citing_field, cited_field, count_field = (f.strip() for f in fields)
        try:
            citing = _validate_id(citing_field)
            cited = _validate_id(cited_field)
        except ValueError as exc:
            raise EdgeListParseError(line_no, str(exc)) from None
        count = _parse_count(count_field, line_no)
        data_rows += 1
        seen.setdefault(citing)
        seen.setdefault(cited)
        if count > 0:
            key = (citing, cited)
            cells[key] = cells.get(key, 0) + count

    if data_rows == 0:
        raise EdgeListParseError(0, "empty input: no edge rows")

    journals: dict[JournalId, Journal] = {}
    if registry:
        journals.update(registry)
    for journal_id in seen:
        if journal_id not in journals:
            journals[journal_id] = Journal(journal_id, journal_id, source)
    return CitationMatrix(year, journals.values(), cells)


def _merge_journal(a: Journal | None, b: Journal | None) -> Journal:
    if a is None:
        assert b is not None
        return b
    if b is None:
        return a
    # Present in both inputs: mark as doubly indexed, prefer a non-default
    # display name from the first operand.
    name = a.display_name if a.display_name != a.id else b.display_name
    return Journal(a.id, name, SourceIndex.BOTH)


def merge_indices(a: CitationMatrix, b: CitationMatrix) -> CitationMatrix:
    """Merge two same-year matrices: union of journals, cell counts summed.

    Journals present in both inputs get ``SourceIndex.BOTH``.  Raises
    :class:`YearMismatchError` when the years differ.
    """
    if a.year != b.year:
        raise YearMismatchError(f"cannot merge year {a.year} with year {b.year}")
    ids = set(a.journals) | set(b.journals)
    journals = [
        _merge_journal(a.journals.get(journal_id), b.journals.get(journal_id))
        for journal_id in sorted(ids)
    ]
    cells = dict(a.cells)
    for key, count in b.cells.items():
        cells[key] = cells.get(key, 0) + count
    return CitationMatrix(a.year, journals, cells)


def totals(m: CitationMatrix, j: JournalId) -> tuple[int, int, int]:
    """Return ``(cited_total, citing_total, self_cites)`` for journal *j*.

    Column and row sums both include the diagonal self-citation cell.
    """
    if j not in m:
        raise UnknownJournalError(f"unknown journal {j!r}")
    cited_total = sum(m.col(j).values())
    citing_total = sum(m.row(j).values())
    return cited_total, citing_total, m.cell(j, j)


def row_profile(
    m: CitationMatrix, j: JournalId, columns: Sequence[JournalId]
) -> list[int]:
    """Outgoing citation counts of *j* along the given coordinate axes."""
    if j not in m:
        raise UnknownJournalError(f"unknown journal {j!r}")
    if not columns:
        raise ValueError("columns must be nonempty")
    row = m.row(j)
    return [row.get(column, 0) for column in columns]


def col_profile(
    m: CitationMatrix, j: JournalId, rows: Sequence[JournalId]
) -> list[int]:
    """Incoming citation counts of *j* along the given coordinate axes."""
    if j not in m:
        raise UnknownJournalError(f"unknown journal {j!r}")
    if not rows:
        raise ValueError("rows must be nonempty")
    col = m.col(j)
    return [col.get(row, 0) for row in rows]


def serialize_matrix(m: CitationMatrix) -> str:
    """Deterministic edge-list CSV text (sorted cells, LF endings)."""
    lines = [EDGE_HEADER]
    for (citing, cited), count in sorted(m.cells.items()):
        lines.append(f"{citing},{cited},{count}")
    return "\n".join(lines) + "\n"


def _sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + SIDECAR_SUFFIX)


def write_matrix(m: CitationMatrix, path: str | Path) -> None:
    """Persist a matrix: edge-list CSV at *path* plus a metadata sidecar."""
    path = Path(path)
    path.write_text(serialize_matrix(m), encoding="utf-8", newline="\n")
    meta = {
        "format": "citation-matrix",
        "year": m.year,
        "merge_policy": MERGE_POLICY,
        "journals": [
            {
                "id": journal.id,
                "display_name": journal.display_name,
                "source_index": journal.source_index.value,
            }
            for journal in m.journals.values()
        ],
    }
    _sidecar_path(path).write_text(
        json.dumps(meta, indent=2) + "\n", encoding="utf-8", newline="\n"
    )


def read_matrix(path: str | Path, *, year: int | None = None) -> CitationMatrix:
    """Load a persisted matrix (CSV plus sidecar).

    Without a sidecar the *year* argument is required and all journals
    default to SCI with ``display_name == id``.
    """
    path = Path(path)
    sidecar = _sidecar_path(path)
    registry: dict[JournalId, Journal] | None = None
    if sidecar.exists():
        meta = json.loads(sidecar.read_text(encoding="utf-8"))
        year = meta["year"]
        registry = {
            entry["id"]: Journal(
                entry["id"], entry["display_name"], SourceIndex(entry["source_index"])
            )
            for entry in meta["journals"]
        }
    elif year is None:
        raise ValueError(f"no sidecar at {sidecar} and no year given")
    with open(path, encoding="utf-8") as fh:
        return parse_citation_csv(fh, year, registry=registry)


def read_registry(stream: IO[str] | str) -> dict[JournalId, Journal]:
    """Parse a journal registry CSV: ``id,display_name,source_index``."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    registry: dict[JournalId, Journal] = {}
    for line_no, fields in enumerate(reader, start=1):
        if not fields or not any(f.strip() for f in fields):
            continue
        if line_no == 1 and tuple(f.strip().lower() for f in fields) == REGISTRY_HEADER:
            continue
        if len(fields) != 3:
            raise EdgeListParseError(line_no, f"expected 3 fields, got {len(fields)}")
        journal_id, display_name, source_field = (f.strip() for f in fields)
        try:
            source = SourceIndex(source_field.upper())
        except ValueError:
            raise EdgeListParseError(
                line_no, f"unknown source_index {source_field!r}"
            ) from None
        try:
            registry[journal_id] = Journal(journal_id, display_name, source)
        except ValueError as exc:
            raise EdgeListParseError(line_no, str(exc)) from None
    if not registry:
        raise EdgeListParseError(0, "empty registry")
    return registry

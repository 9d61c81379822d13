"""Country-indicator table: CSV parsing and z-value standardization.

The canonical 171-country dataset for 2005 ships with the package
(``data/quality_of_life_2005.csv``) together with the published reference
index and ranking (``data/table1_reference.tsv``).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import DuplicateCountry, EmptyTable, MalformedRow, ZeroVariance

INDICATOR_COLUMNS = ("gdp_ppp", "life_expectancy", "tb_incidence", "infant_mortality")
CSV_HEADER = ("country",) + INDICATOR_COLUMNS

_PACKAGED_CSV = "quality_of_life_2005.csv"
_PACKAGED_REFERENCE = "table1_reference.tsv"


@dataclass(frozen=True)
class CountryRecord:
    """One country with its four raw indicator values."""

    name: str
    gdp_ppp: float
    life_expectancy: float
    tb_incidence: float
    infant_mortality: float

    def values(self) -> tuple[float, float, float, float]:
        return (self.gdp_ppp, self.life_expectancy, self.tb_incidence, self.infant_mortality)


@dataclass(frozen=True)
class CountryTable:
    """Ordered collection of country records with unique names."""

    records: tuple[CountryRecord, ...]

    def __post_init__(self):
        if len(self.records) < 2:
            raise EmptyTable(f"need at least 2 data rows, got {len(self.records)}")
        seen = set()
        for rec in self.records:
            if rec.name in seen:
                raise DuplicateCountry(rec.name)
            seen.add(rec.name)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(rec.name for rec in self.records)

    def raw_values(self) -> np.ndarray:
        return np.array([rec.values() for rec in self.records], dtype=float)


@dataclass(frozen=True)
class StandardizedMatrix:
    """N x 4 z-scored data plus the per-column moments used to produce it."""

    values: np.ndarray
    column_means: np.ndarray
    column_stds: np.ndarray
    names: tuple[str, ...]

    def __post_init__(self):
        for arr in (self.values, self.column_means, self.column_stds):
            arr.setflags(write=False)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]


def _parse_number(token: str, row_num: int, column: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise MalformedRow(f"row {row_num}: cannot parse {column}={token!r}") from None
    if not math.isfinite(value):
        raise MalformedRow(f"row {row_num}: non-finite {column}={token!r}")
    return value


def parse_table(source: str) -> CountryTable:
    """Parse CSV text (header ``country,gdp_ppp,...``) into a CountryTable.

    Raises MalformedRow, DuplicateCountry or EmptyTable.
    """
    reader = csv.reader(io.StringIO(source))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyTable("no header row") from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise MalformedRow(f"bad header {header!r}, expected {','.join(CSV_HEADER)}")

    records = []
    for row_num, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise MalformedRow(f"row {row_num}: expected {len(CSV_HEADER)} fields, got {len(row)}")
        name = row[0].strip()
        if not name:
            raise MalformedRow(f"row {row_num}: empty country name")
        nums = [_parse_number(tok, row_num, col) for tok, col in zip(row[1:], INDICATOR_COLUMNS)]
        records.append(CountryRecord(name, *nums))
    return CountryTable(tuple(records))


def serialize_table(table: CountryTable) -> str:
    """Inverse of parse_table; numbers keep full precision."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in table.records:
        writer.writerow([rec.name] + [_format_number(v) for v in rec.values()])
    return buf.getvalue()


def _format_number(v: float) -> str:
    return repr(int(v)) if float(v).is_integer() else repr(v)


def standardize(table: CountryTable) -> StandardizedMatrix:
    """Rescale every column to zero mean and unit variance (population std)."""
    raw = table.raw_values()
    means = raw.mean(axis=0)
    stds = raw.std(axis=0)
    for j, std in enumerate(stds):
        if std == 0.0:
            raise ZeroVariance(f"column {INDICATOR_COLUMNS[j]!r} is constant")
    return StandardizedMatrix((raw - means) / stds, means, stds, table.names)


def destandardize(matrix: StandardizedMatrix, point: np.ndarray) -> np.ndarray:
    """Map a z-space 4-vector back to raw indicator units."""
    return np.asarray(point, dtype=float) * matrix.column_stds + matrix.column_means


def standardize_with(raw: np.ndarray, means: np.ndarray, stds: np.ndarray) -> np.ndarray:
    """Standardize raw rows with previously stored moments."""
    return (np.asarray(raw, dtype=float) - means) / stds


def packaged_data_path() -> str:
    """Filesystem path of the shipped canonical CSV."""
    return str(resources.files(__package__).joinpath("data", _PACKAGED_CSV))


def load_packaged_table() -> CountryTable:
    text = resources.files(__package__).joinpath("data", _PACKAGED_CSV).read_text("utf-8")
    return parse_table(text)


def load_reference_ranking() -> dict[str, tuple[float, int]]:
    """Published reference index value and rank per country."""
    text = resources.files(__package__).joinpath("data", _PACKAGED_REFERENCE).read_text("utf-8")
    out: dict[str, tuple[float, int]] = {}
    for line in text.splitlines()[1:]:
        name, idx, rank = line.split("\t")
        out[name] = (float(idx), int(rank))
    return out

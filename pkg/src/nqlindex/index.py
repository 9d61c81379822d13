"""Projection of countries onto the fitted curve and the resulting rankings.

Arclength along the oriented polyline, rescaled to [-1, +1], is the
nonlinear quality-of-life (NQL) index.  The first principal component,
oriented the same way, provides the linear index used for comparison.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .dataset import StandardizedMatrix
from .errors import DegenerateSegment, UnknownCountry
from .pca import PrincipalBasis, pc1_scores

if TYPE_CHECKING:
    from .chain import ElasticChain


@dataclass(frozen=True)
class PolylineProjection:
    """Closest point on the polyline: segment index, fraction, arclength, distance."""

    segment: int
    t: float
    arclength: float
    distance: float


@dataclass(frozen=True)
class IndexRow:
    name: str
    nql_index: float
    nql_rank: int
    linear_index: float
    linear_rank: int


@dataclass(frozen=True)
class IndexTable:
    rows: tuple[IndexRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def row(self, name: str) -> IndexRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise UnknownCountry(name)

    def by_nql_rank(self) -> tuple[IndexRow, ...]:
        return tuple(sorted(self.rows, key=lambda r: r.nql_rank))

    def to_tsv(self) -> str:
        lines = ["rank\tcountry\tnql_index\tlinear_rank\tlinear_index"]
        for r in self.by_nql_rank():
            lines.append("%d\t%s\t%s\t%d\t%s" % (
                r.nql_rank, r.name, _fmt3(r.nql_index), r.linear_rank, _fmt3(r.linear_index)))
        return "\n".join(lines) + "\n"


def _fmt3(value: float) -> str:
    rounded = round(value, 3) + 0.0  # avoid the "-0.000" rendering
    return "%.3f" % rounded


def _segment_geometry(nodes: np.ndarray):
    starts = nodes[:-1]
    deltas = nodes[1:] - starts
    lengths_sq = (deltas ** 2).sum(axis=1)
    if (lengths_sq == 0.0).any():
        bad = int(np.argmin(lengths_sq))
        raise DegenerateSegment(f"segment {bad} has zero length")
    lengths = np.sqrt(lengths_sq)
    cumulative = np.concatenate([[0.0], np.cumsum(lengths)])
    return starts, deltas, lengths_sq, lengths, cumulative


def _project_batch(values: np.ndarray, nodes: np.ndarray):
    """Vectorized exact projection of rows onto the polyline.

    Returns (segment, t, arclength, distance) arrays plus the total length.
    """
    starts, deltas, lengths_sq, lengths, cumulative = _segment_geometry(nodes)
    offsets = values[:, None, :] - starts[None, :, :]
    t = (offsets * deltas[None, :, :]).sum(axis=2) / lengths_sq[None, :]
    t = np.clip(t, 0.0, 1.0)
    feet = starts[None, :, :] + t[:, :, None] * deltas[None, :, :]
    dist_sq = ((values[:, None, :] - feet) ** 2).sum(axis=2)
    segment = dist_sq.argmin(axis=1)  # ties to the lower segment index
    rows = np.arange(values.shape[0])
    t_best = t[rows, segment]
    arclength = cumulative[segment] + t_best * lengths[segment]
    distance = np.sqrt(dist_sq[rows, segment])
    return segment, t_best, arclength, distance, float(cumulative[-1])


def polyline_length(nodes: np.ndarray) -> float:
    return _segment_geometry(np.asarray(nodes, dtype=float))[4][-1]


def project_point(point: np.ndarray, chain: "ElasticChain") -> PolylineProjection:
    """Exact closest point on the chain's polyline for a single 4-vector."""
    values = np.asarray(point, dtype=float)[None, :]
    segment, t, arclength, distance, _ = _project_batch(values, chain.nodes)
    return PolylineProjection(int(segment[0]), float(t[0]), float(arclength[0]), float(distance[0]))


def project_rows(matrix: StandardizedMatrix, chain: "ElasticChain") -> list[PolylineProjection]:
    segment, t, arclength, distance, _ = _project_batch(matrix.values, chain.nodes)
    return [PolylineProjection(int(s), float(tt), float(a), float(d))
            for s, tt, a, d in zip(segment, t, arclength, distance)]


def projection_distances(values: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    return _project_batch(np.asarray(values, dtype=float), np.asarray(nodes, dtype=float))[3]


def orient(chain: "ElasticChain", matrix: StandardizedMatrix) -> "ElasticChain":
    """Reverse the chain if arclength runs against the GDP z-score."""
    arclength = _project_batch(matrix.values, chain.nodes)[2]
    if _gdp_correlation(arclength, matrix) < 0.0:
        return dataclasses.replace(chain, nodes=chain.nodes[::-1].copy())
    return chain


def _gdp_correlation(values: np.ndarray, matrix: StandardizedMatrix) -> float:
    gdp = matrix.values[:, 0]
    if values.std() == 0.0 or gdp.std() == 0.0:
        return 0.0
    return float(np.corrcoef(values, gdp)[0, 1])


def nql_index(projection: PolylineProjection, total_length: float) -> float:
    """Affine rescale of arclength to [-1, +1]."""
    if total_length <= 0:
        raise ValueError("total_length must be positive")
    return 2.0 * projection.arclength / total_length - 1.0


def rank(values: np.ndarray, names: tuple[str, ...]) -> np.ndarray:
    """Ranks 1..N by descending value; ties broken by ascending name."""
    values = np.asarray(values, dtype=float)
    order = np.lexsort((np.array(names), -values))
    ranks = np.empty(len(values), dtype=int)
    ranks[order] = np.arange(1, len(values) + 1)
    return ranks


def build_index_table(matrix: StandardizedMatrix, basis: PrincipalBasis,
                      chain: "ElasticChain") -> IndexTable:
    """Orient the chain, project every country and rank both indices."""
    oriented = orient(chain, matrix)
    arclength = _project_batch(matrix.values, oriented.nodes)[2]
    total = polyline_length(oriented.nodes)
    nql = 2.0 * arclength / total - 1.0

    linear = pc1_scores(matrix, basis)
    if _gdp_correlation(linear, matrix) < 0.0:
        linear = -linear

    nql_ranks = rank(nql, matrix.names)
    linear_ranks = rank(linear, matrix.names)
    rows = tuple(
        IndexRow(name, float(nql[i]), int(nql_ranks[i]), float(linear[i]), int(linear_ranks[i]))
        for i, name in enumerate(matrix.names)
    )
    return IndexTable(rows)


@dataclass(frozen=True)
class RankShift:
    name: str
    linear_rank: int
    nql_rank: int

    @property
    def shift(self) -> int:
        return self.linear_rank - self.nql_rank


@dataclass(frozen=True)
class PairVerdict:
    first: str
    second: str
    linear_first_above: bool
    nql_first_above: bool

    @property
    def order_reversed(self) -> bool:
        return self.linear_first_above != self.nql_first_above


@dataclass(frozen=True)
class ComparisonReport:
    shifts: tuple[RankShift, ...]
    movers: tuple[RankShift, ...]
    pair: PairVerdict | None


def compare_linear_nonlinear(table: IndexTable, pair: tuple[str, str] | None = None,
                             n_movers: int = 10) -> ComparisonReport:
    """Per-country rank shifts, the largest movers, and a pairwise verdict."""
    shifts = tuple(RankShift(r.name, r.linear_rank, r.nql_rank) for r in table.rows)
    movers = tuple(sorted(shifts, key=lambda s: (-abs(s.shift), s.name))[:n_movers])
    verdict = None
    if pair is not None:
        first, second = (table.row(pair[0]), table.row(pair[1]))
        verdict = PairVerdict(
            first.name, second.name,
            linear_first_above=first.linear_rank < second.linear_rank,
            nql_first_above=first.nql_rank < second.nql_rank,
        )
    return ComparisonReport(shifts, movers, verdict)

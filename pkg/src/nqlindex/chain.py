"""One-dimensional elastic-map principal curve.

The curve is an ordered polyline of nodes in z-space, fitted by alternating
two exact steps under an annealing schedule of penalty coefficients:

* assign every data row to its nearest node (Euclidean, ties to the lower
  node index);
* with the assignment fixed, minimize

      U = U_A + lambda * U_E + mu * U_B

  over all node positions, where U_A is the mean squared row-to-node
  residual, U_E the sum of squared edge lengths and U_B the sum of squared
  second differences over interior node triples.  The minimizer solves one
  shared pentadiagonal symmetric positive-definite system per coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, solveh_banded

from .dataset import StandardizedMatrix
from .errors import SingularSystem
from .pca import PrincipalBasis, pc1_scores

DEFAULT_LAMBDA_SCHEDULE = (0.1, 0.05, 0.02, 0.01)
DEFAULT_MU_SCHEDULE = (40.0, 20.0, 10.0, 5.0)


@dataclass(frozen=True)
class ChainConfig:
    """Fit hyperparameters.

    Schedules list one (lambda, mu) pair per annealing epoch and must be
    non-increasing.  ``seed`` is reserved; fitting is deterministic.
    """

    n_nodes: int = 50
    lambda_schedule: tuple[float, ...] = DEFAULT_LAMBDA_SCHEDULE
    mu_schedule: tuple[float, ...] = DEFAULT_MU_SCHEDULE
    max_iters_per_epoch: int = 100
    tol: float = 1e-7
    seed: int = 0

    def __post_init__(self):
        if self.n_nodes < 3:
            raise ValueError(f"n_nodes must be >= 3, got {self.n_nodes}")
        lam, mu = self.lambda_schedule, self.mu_schedule
        if len(lam) != len(mu) or not lam:
            raise ValueError("lambda and mu schedules must be non-empty and equal length")
        for sched, name in ((lam, "lambda"), (mu, "mu")):
            if any(v <= 0 for v in sched):
                raise ValueError(f"{name} schedule must be positive")
            if any(a < b for a, b in zip(sched, sched[1:])):
                raise ValueError(f"{name} schedule must be non-increasing")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iters_per_epoch < 1:
            raise ValueError("max_iters_per_epoch must be >= 1")


@dataclass(frozen=True)
class ElasticChain:
    """Ordered node positions of the fitted curve."""

    nodes: np.ndarray
    config: ChainConfig | None = None

    def __post_init__(self):
        self.nodes.setflags(write=False)

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]

    def reversed(self) -> "ElasticChain":
        return ElasticChain(self.nodes[::-1].copy(), self.config)


@dataclass(frozen=True)
class Partition:
    """Nearest-node assignment of every data row."""

    assignment: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        self.assignment.setflags(write=False)
        self.counts.setflags(write=False)


@dataclass(frozen=True)
class EnergyBreakdown:
    approximation: float
    stretching: float
    bending: float
    total: float


@dataclass(frozen=True)
class EnergyLogEntry:
    epoch: int
    iteration: int
    lam: float
    mu: float
    energy: EnergyBreakdown


@dataclass(frozen=True)
class FitResult:
    chain: ElasticChain
    energy_log: tuple[EnergyLogEntry, ...] = field(repr=False)


def init_chain(matrix: StandardizedMatrix, basis: PrincipalBasis, n_nodes: int) -> ElasticChain:
    """Equally spaced nodes along PC1 covering the data's score range."""
    if n_nodes < 3:
        raise ValueError(f"n_nodes must be >= 3, got {n_nodes}")
    scores = pc1_scores(matrix, basis)
    ticks = np.linspace(scores.min(), scores.max(), n_nodes)
    return ElasticChain(ticks[:, None] * basis.components[0][None, :])


def _nearest_nodes(values: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    d2 = ((values[:, None, :] - nodes[None, :, :]) ** 2).sum(axis=2)
    return d2.argmin(axis=1)  # argmin resolves ties to the lower index


def assign(matrix: StandardizedMatrix, chain: ElasticChain) -> Partition:
    """Map each row to its nearest node (ties to the lower node index)."""
    assignment = _nearest_nodes(matrix.values, chain.nodes)
    counts = np.bincount(assignment, minlength=chain.n_nodes)
    return Partition(assignment, counts)


def _banded_system(counts: np.ndarray, lam: float, mu: float, n: int, n_rows: int) -> np.ndarray:
    """Upper-banded form of diag(counts/N) + lam*E + mu*S^T S (bandwidth 2)."""
    idx = np.arange(n)
    edge_diag = np.where((idx == 0) | (idx == n - 1), 1.0, 2.0)
    # bending stencil S has rows (1, -2, 1) for triples k = 0 .. n-3
    in_rib = lambda k: ((k >= 0) & (k <= n - 3)).astype(float)
    bend_diag = in_rib(idx - 2) + 4.0 * in_rib(idx - 1) + in_rib(idx)
    sub = np.arange(n - 1)
    bend_off1 = -2.0 * (in_rib(sub - 1) + in_rib(sub))

    ab = np.zeros((3, n))
    ab[2] = counts / n_rows + lam * edge_diag + mu * bend_diag
    ab[1, 1:] = -lam + mu * bend_off1
    if n >= 3:
        ab[0, 2:] = mu
    return ab


def solve_nodes(matrix: StandardizedMatrix, partition: Partition,
                lam: float, mu: float, n_nodes: int) -> np.ndarray:
    """Exact minimizer of the elastic energy with the assignment held fixed."""
    values = matrix.values
    n_rows = values.shape[0]
    counts = partition.counts.astype(float)
    rhs = np.zeros((n_nodes, values.shape[1]))
    np.add.at(rhs, partition.assignment, values)
    rhs /= n_rows

    ab = _banded_system(counts, lam, mu, n_nodes, n_rows)
    try:
        return solveh_banded(ab, rhs, lower=False)
    except LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc


def energy(matrix: StandardizedMatrix, chain: ElasticChain, partition: Partition,
           lam: float, mu: float) -> EnergyBreakdown:
    """Approximation, stretching and bending terms plus the weighted total."""
    nodes = chain.nodes
    residuals = matrix.values - nodes[partition.assignment]
    approximation = float((residuals ** 2).sum() / matrix.values.shape[0])
    stretching = float((np.diff(nodes, axis=0) ** 2).sum())
    bending = float(((nodes[:-2] - 2.0 * nodes[1:-1] + nodes[2:]) ** 2).sum())
    total = approximation + lam * stretching + mu * bending
    return EnergyBreakdown(approximation, stretching, bending, total)


def fit(matrix: StandardizedMatrix, basis: PrincipalBasis, config: ChainConfig) -> FitResult:
    """Fit the curve: init along PC1, then anneal through the schedules."""
    return fit_from(matrix, init_chain(matrix, basis, config.n_nodes), config)


def fit_from(matrix: StandardizedMatrix, initial: ElasticChain, config: ChainConfig) -> FitResult:
    """Run the annealing loop from an explicit initial chain."""
    chain = ElasticChain(np.array(initial.nodes), config)
    partition = assign(matrix, chain)
    log: list[EnergyLogEntry] = []

    for epoch, (lam, mu) in enumerate(zip(config.lambda_schedule, config.mu_schedule)):
        breakdown = energy(matrix, chain, partition, lam, mu)
        log.append(EnergyLogEntry(epoch, 0, lam, mu, breakdown))
        previous = breakdown.total
        for iteration in range(1, config.max_iters_per_epoch + 1):
            nodes = solve_nodes(matrix, partition, lam, mu, config.n_nodes)
            chain = ElasticChain(nodes, config)
            partition = assign(matrix, chain)
            breakdown = energy(matrix, chain, partition, lam, mu)
            log.append(EnergyLogEntry(epoch, iteration, lam, mu, breakdown))
            relative_drop = (previous - breakdown.total) / previous if previous > 0 else 0.0
            previous = breakdown.total
            if relative_drop < config.tol:
                break
    return FitResult(chain, tuple(log))


def curve_explained_variance(matrix: StandardizedMatrix, chain: ElasticChain) -> float:
    """1 - MSE/total variance, with MSE from segment-wise polyline projection."""
    from .index import projection_distances

    distances = projection_distances(matrix.values, chain.nodes)
    total_variance = float((matrix.values ** 2).sum(axis=1).mean())
    return 1.0 - float((distances ** 2).mean()) / total_variance

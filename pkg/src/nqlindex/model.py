"""Plain-text persistence of a fitted model.

The file is versioned and sectioned (COLUMNS, MEANS, STDS, BASIS, NODES,
ENERGY_LOG) with full-precision decimal floats so fit outputs diff cleanly
and reload exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainConfig, ElasticChain, EnergyBreakdown, EnergyLogEntry
from .pca import PrincipalBasis

FORMAT_LINE = "nql-model v1"


@dataclass(frozen=True)
class FittedModel:
    columns: tuple[str, ...]
    means: np.ndarray
    stds: np.ndarray
    basis: PrincipalBasis
    chain: ElasticChain
    energy_log: tuple[EnergyLogEntry, ...]


def _floats(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def render_model(model: FittedModel) -> str:
    lines = [FORMAT_LINE]
    lines.append("COLUMNS " + " ".join(model.columns))
    lines.append("MEANS")
    lines.append(_floats(model.means))
    lines.append("STDS")
    lines.append(_floats(model.stds))
    lines.append("BASIS")
    lines.append(_floats(model.basis.eigenvalues))
    for component in model.basis.components:
        lines.append(_floats(component))
    lines.append(f"NODES {model.chain.n_nodes}")
    for node in model.chain.nodes:
        lines.append(_floats(node))
    lines.append(f"ENERGY_LOG {len(model.energy_log)}")
    for e in model.energy_log:
        lines.append("%d %d %s" % (e.epoch, e.iteration,
                                   _floats([e.lam, e.mu, e.energy.approximation,
                                            e.energy.stretching, e.energy.bending,
                                            e.energy.total])))
    return "\n".join(lines) + "\n"


def save_model(model: FittedModel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_model(model))


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise ValueError("model file truncated")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def floats(self, count: int) -> np.ndarray:
        parts = self.next().split()
        if len(parts) != count:
            raise ValueError(f"expected {count} numbers, got {len(parts)}")
        return np.array([float(p) for p in parts])

    def expect(self, token: str) -> list[str]:
        line = self.next()
        parts = line.split()
        if not parts or parts[0] != token:
            raise ValueError(f"expected section {token!r}, got {line!r}")
        return parts[1:]


def parse_model(text: str, config: ChainConfig | None = None) -> FittedModel:
    reader = _Reader(text)
    if reader.next() != FORMAT_LINE:
        raise ValueError(f"not a model file (missing {FORMAT_LINE!r} header)")
    columns = tuple(reader.expect("COLUMNS"))
    dim = len(columns)
    reader.expect("MEANS")
    means = reader.floats(dim)
    reader.expect("STDS")
    stds = reader.floats(dim)
    reader.expect("BASIS")
    eigenvalues = reader.floats(dim)
    components = np.vstack([reader.floats(dim) for _ in range(dim)])
    basis = PrincipalBasis(components, eigenvalues, float(eigenvalues.sum()))
    (n_nodes_str,) = reader.expect("NODES")
    nodes = np.vstack([reader.floats(dim) for _ in range(int(n_nodes_str))])
    (n_entries_str,) = reader.expect("ENERGY_LOG")
    log = []
    for _ in range(int(n_entries_str)):
        parts = reader.next().split()
        if len(parts) != 8:
            raise ValueError("bad energy-log line")
        epoch, iteration = int(parts[0]), int(parts[1])
        lam, mu, ua, ue, ub, total = (float(p) for p in parts[2:])
        log.append(EnergyLogEntry(epoch, iteration, lam, mu,
                                  EnergyBreakdown(ua, ue, ub, total)))
    return FittedModel(columns, means, stds, basis, ElasticChain(nodes, config), tuple(log))


def load_model(path) -> FittedModel:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())

"""Flat ``key = value`` run configuration with dotted keys.

Example file::

    data = src/nqlindex/data/quality_of_life_2005.csv
    output_dir = out
    chain.n_nodes = 50
    chain.lambda_schedule = 0.1, 0.05, 0.02, 0.01
    chain.mu_schedule = 40, 20, 10, 5
    chain.max_iters_per_epoch = 100
    chain.tol = 1e-7
    chain.seed = 0
    plot.axes = 1, 2

Relative paths are resolved against the current working directory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .chain import ChainConfig


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


@dataclass(frozen=True)
class RunConfig:
    data_path: Path
    output_dir: Path
    chain: ChainConfig = field(default_factory=ChainConfig)
    plot_axes: tuple[int, int] = (1, 2)

    def __post_init__(self):
        validate_axes(self.plot_axes)


def validate_axes(axes: tuple[int, int]) -> None:
    a, b = axes
    if a == b or not (1 <= a <= 4) or not (1 <= b <= 4):
        raise ConfigError(f"plot axes must be two distinct components in 1..4, got {a},{b}")


def parse_key_values(text: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in pairs:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        pairs[key] = value.strip()
    return pairs


def _float_list(value: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in value.replace(",", " ").split())


_CHAIN_KEYS = {
    "n_nodes": int,
    "lambda_schedule": _float_list,
    "mu_schedule": _float_list,
    "max_iters_per_epoch": int,
    "tol": float,
    "seed": int,
}


def chain_config_from_pairs(pairs: dict[str, str], prefix: str = "chain.") -> ChainConfig:
    kwargs = {}
    for name, convert in _CHAIN_KEYS.items():
        value = pairs.get(prefix + name)
        if value is not None:
            try:
                kwargs[name] = convert(value)
            except ValueError as exc:
                raise ConfigError(f"{prefix}{name}: {exc}") from None
    try:
        return ChainConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def chain_config_to_pairs(config: ChainConfig, prefix: str = "chain.") -> dict[str, str]:
    def join(seq):
        return ", ".join(repr(v) for v in seq)

    return {
        prefix + "n_nodes": str(config.n_nodes),
        prefix + "lambda_schedule": join(config.lambda_schedule),
        prefix + "mu_schedule": join(config.mu_schedule),
        prefix + "max_iters_per_epoch": str(config.max_iters_per_epoch),
        prefix + "tol": repr(config.tol),
        prefix + "seed": str(config.seed),
    }


_RUN_KEYS = ("data", "output_dir", "plot.axes")


def parse_run_config(text: str) -> RunConfig:
    pairs = parse_key_values(text)
    known = set(_RUN_KEYS) | {"chain." + k for k in _CHAIN_KEYS}
    unknown = sorted(set(pairs) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    if "data" not in pairs:
        raise ConfigError("missing required key 'data'")

    axes = (1, 2)
    if "plot.axes" in pairs:
        parts = _float_list(pairs["plot.axes"])
        if len(parts) != 2 or any(p != int(p) for p in parts):
            raise ConfigError(f"plot.axes must be two integers, got {pairs['plot.axes']!r}")
        axes = (int(parts[0]), int(parts[1]))

    return RunConfig(
        data_path=Path(pairs["data"]),
        output_dir=Path(pairs.get("output_dir", "out")),
        chain=chain_config_from_pairs(pairs),
        plot_axes=axes,
    )


def load_run_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_run_config(fh.read())


def render_run_config(config: RunConfig) -> str:
    pairs = {"data": str(config.data_path), "output_dir": str(config.output_dir)}
    pairs.update(chain_config_to_pairs(config.chain))
    pairs["plot.axes"] = "%d, %d" % config.plot_axes
    return "".join(f"{k} = {v}\n" for k, v in pairs.items())

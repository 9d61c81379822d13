import numpy as np
import pytest

from nqlindex.chain import ChainConfig, fit
from nqlindex.dataset import load_packaged_table, load_reference_ranking, standardize
from nqlindex.index import build_index_table, orient
from nqlindex.pca import covariance, eigendecompose


@pytest.fixture(scope="session")
def table():
    return load_packaged_table()


@pytest.fixture(scope="session")
def matrix(table):
    return standardize(table)


@pytest.fixture(scope="session")
def basis(matrix):
    return eigendecompose(covariance(matrix))


@pytest.fixture(scope="session")
def default_config():
    return ChainConfig()


@pytest.fixture(scope="session")
def fit_result(matrix, basis, default_config):
    return fit(matrix, basis, default_config)


@pytest.fixture(scope="session")
def oriented_chain(fit_result, matrix):
    return orient(fit_result.chain, matrix)


@pytest.fixture(scope="session")
def index_table(matrix, basis, fit_result):
    return build_index_table(matrix, basis, fit_result.chain)


@pytest.fixture(scope="session")
def reference_ranking():
    return load_reference_ranking()


def toy_matrix(raw, names=None):
    """Standardize a small raw array through the real dataset path."""
    from nqlindex.dataset import CountryRecord, CountryTable, standardize as _standardize

    raw = np.asarray(raw, dtype=float)
    if names is None:
        names = tuple(f"P{i:03d}" for i in range(raw.shape[0]))
    records = tuple(CountryRecord(n, *row) for n, row in zip(names, raw))
    return _standardize(CountryTable(records))

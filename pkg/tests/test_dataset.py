import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nqlindex.dataset import (CSV_HEADER, CountryRecord, CountryTable, destandardize,
                              parse_table, serialize_table, standardize, standardize_with)
from nqlindex.errors import DuplicateCountry, EmptyTable, MalformedRow, ZeroVariance

HEADER_LINE = ",".join(CSV_HEADER)


def make_csv(*rows):
    return HEADER_LINE + "\n" + "\n".join(rows) + "\n"


class TestParseTable:
    def test_first_reference_row(self):
        table = parse_table(make_csv("Luxembourg,70014,79.56,6,4", "Norway,47551,80.29,3,3"))
        rec = table.records[0]
        assert rec == CountryRecord("Luxembourg", 70014.0, 79.56, 6.0, 4.0)

    def test_zero_indicator_accepted(self):
        table = parse_table(make_csv("Puerto Rico,19725,78.401,2,0", "Norway,47551,80.29,3,3"))
        assert table.records[0].infant_mortality == 0.0

    def test_unparseable_number(self):
        with pytest.raises(MalformedRow):
            parse_table(make_csv("X,abc,1,2,3", "Y,1,1,2,3"))

    def test_wrong_column_count(self):
        with pytest.raises(MalformedRow):
            parse_table(make_csv("X,1,2,3", "Y,1,1,2,3"))

    def test_non_finite_rejected(self):
        with pytest.raises(MalformedRow):
            parse_table(make_csv("X,nan,1,2,3", "Y,1,1,2,3"))

    def test_duplicate_country(self):
        with pytest.raises(DuplicateCountry):
            parse_table(make_csv("X,1,2,3,4", "X,5,6,7,8"))

    def test_too_few_rows(self):
        with pytest.raises(EmptyTable):
            parse_table(make_csv("X,1,2,3,4"))
        with pytest.raises(EmptyTable):
            parse_table("")

    def test_bad_header(self):
        with pytest.raises(MalformedRow):
            parse_table("a,b,c,d,e\nX,1,2,3,4\nY,1,2,3,4\n")

    def test_quoted_comma_name(self):
        table = parse_table(make_csv('"Korea, Rep.",21342,78.585,38,5', "Norway,1,2,3,4"))
        assert table.records[0].name == "Korea, Rep."

    def test_shipped_table_has_171_unique_countries(self, table):
        assert len(table) == 171
        assert len(set(table.names)) == 171


class TestSerializeRoundTrip:
    def test_shipped_table(self, table):
        assert parse_table(serialize_table(table)) == table

    names_st = st.text(
        alphabet=st.characters(blacklist_categories=("Cs", "Cc")),
        min_size=1, max_size=12,
    ).map(str.strip).filter(bool)
    values_st = st.floats(min_value=-1e6, max_value=1e6,
                          allow_nan=False, allow_infinity=False)

    @given(st.lists(st.tuples(names_st, values_st, values_st, values_st, values_st),
                    min_size=2, max_size=8, unique_by=lambda r: r[0]))
    @settings(max_examples=60)
    def test_random_tables(self, rows):
        t = CountryTable(tuple(CountryRecord(*row) for row in rows))
        assert parse_table(serialize_table(t)) == t


class TestStandardize:
    def test_two_point_column(self):
        m = standardize(CountryTable((
            CountryRecord("A", 0.0, 0.0, 0.0, 0.0),
            CountryRecord("B", 2.0, 2.0, 2.0, 2.0),
        )))
        assert np.allclose(m.column_means, 1.0)
        assert np.allclose(m.column_stds, 1.0)  # population convention
        assert np.allclose(m.values, [[-1.0] * 4, [1.0] * 4])

    def test_already_standardized_is_fixed_point(self):
        m = standardize(CountryTable((
            CountryRecord("A", -1.0, -1.0, -1.0, -1.0),
            CountryRecord("B", 1.0, 1.0, 1.0, 1.0),
        )))
        again = standardize_with(m.values, m.values.mean(axis=0), m.values.std(axis=0))
        assert np.allclose(again, m.values, atol=1e-12)

    def test_shipped_table_moments(self, matrix):
        # oracle: recompute the moments from the standardized output
        assert np.abs(matrix.values.mean(axis=0)).max() < 1e-9
        assert np.abs(matrix.values.var(axis=0) - 1.0).max() < 1e-9

    def test_zero_variance_names_column(self):
        with pytest.raises(ZeroVariance, match="life_expectancy"):
            standardize(CountryTable((
                CountryRecord("A", 1.0, 5.0, 1.0, 2.0),
                CountryRecord("B", 2.0, 5.0, 3.0, 4.0),
            )))

    @given(
        scale=st.floats(min_value=1e-3, max_value=1e3, allow_nan=False),
        shift=st.floats(min_value=-1e3, max_value=1e3, allow_nan=False),
        column=st.integers(min_value=0, max_value=3),
    )
    @settings(max_examples=40, deadline=None)
    def test_affine_equivariance(self, scale, shift, column, table):
        raw = table.raw_values()
        raw[:, column] = raw[:, column] * scale + shift
        records = tuple(CountryRecord(n, *row) for n, row in zip(table.names, raw))
        rescaled = standardize(CountryTable(records))
        baseline = standardize(table)
        assert np.allclose(rescaled.values, baseline.values, atol=1e-9)


class TestDestandardize:
    def test_zero_maps_to_means(self, matrix):
        assert np.allclose(destandardize(matrix, np.zeros(4)), matrix.column_means)

    def test_luxembourg_round_trip(self, table, matrix):
        lux = np.array(table.records[0].values())
        z = standardize_with(lux, matrix.column_means, matrix.column_stds)
        back = destandardize(matrix, z)
        assert np.allclose(back, lux, rtol=1e-6)

    @given(point=st.lists(st.floats(min_value=-10, max_value=10, allow_nan=False),
                          min_size=4, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_random_round_trip(self, matrix, point):
        z = np.array(point)
        raw = destandardize(matrix, z)
        again = standardize_with(raw, matrix.column_means, matrix.column_stds)
        assert np.allclose(again, z, atol=1e-9)

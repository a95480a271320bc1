import math

import numpy as np
import pytest

from qphom import DataError, TimeSeries, load_csv, validate


def write(tmp_path, text, name="series.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_load_one_value_per_row(tmp_path):
    ts = load_csv(write(tmp_path, "0\n1\n0\n-1\n0\n"))
    assert len(ts) == 5
    assert ts.values.tolist() == [0.0, 1.0, 0.0, -1.0, 0.0]


def test_load_single_row(tmp_path):
    ts = load_csv(write(tmp_path, "7.5\n"))
    assert len(ts) == 1
    assert ts.values[0] == 7.5


def test_load_fifty_rows(tmp_path):
    text = "\n".join(str(0.1 * i) for i in range(50))
    assert len(load_csv(write(tmp_path, text))) == 50


def test_load_t_value_rows_with_column_index(tmp_path):
    ts = load_csv(write(tmp_path, "1,0.5\n2,0.7\n3,0.9\n"), column=1)
    assert ts.values.tolist() == [0.5, 0.7, 0.9]


def test_load_by_header_name(tmp_path):
    ts = load_csv(write(tmp_path, "t,eeg\n1,10\n2,20\n"), column="eeg")
    assert ts.values.tolist() == [10.0, 20.0]


def test_comments_and_blank_lines_skipped(tmp_path):
    ts = load_csv(write(tmp_path, "# header comment\n1\n\n2\n# tail\n3\n"))
    assert ts.values.tolist() == [1.0, 2.0, 3.0]


def test_missing_file():
    with pytest.raises(DataError, match="no such file"):
        load_csv("/nonexistent/series.csv")


def test_non_numeric_cell_reports_row(tmp_path):
    with pytest.raises(DataError, match="row 2"):
        load_csv(write(tmp_path, "1\nabc\n3\n"))


def test_multi_column_without_selector(tmp_path):
    with pytest.raises(DataError, match="column"):
        load_csv(write(tmp_path, "1,2\n3,4\n"))


def test_column_out_of_range(tmp_path):
    with pytest.raises(DataError, match="no column 5"):
        load_csv(write(tmp_path, "1,2\n"), column=5)


def test_missing_header_name(tmp_path):
    with pytest.raises(DataError, match="no column 'volts'"):
        load_csv(write(tmp_path, "t,eeg\n1,10\n"), column="volts")


def test_empty_file(tmp_path):
    with pytest.raises(DataError, match="no data rows"):
        load_csv(write(tmp_path, "# only a comment\n"))


def test_loading_is_deterministic(tmp_path):
    path = write(tmp_path, "0.25\n-7\n1e-3\n")
    a = load_csv(path)
    b = load_csv(path)
    assert np.array_equal(a.values, b.values)


def test_validate_clean_series():
    assert validate(TimeSeries(np.array([0.0, 1.0, 0.0, -1.0, 0.0]))).ok


def test_validate_flags_nan_index():
    report = validate(TimeSeries(np.array([1.0, math.nan])))
    assert not report.ok
    assert report.issues[0].index == 2


def test_validate_flags_empty():
    report = validate(TimeSeries(np.array([])))
    assert not report.ok
    assert report.issues[0].index is None


def test_load_then_validate_clean(tmp_path):
    path = write(tmp_path, "\n".join(str(v) for v in (0.1, 2, -3.5, 4e2)))
    assert validate(load_csv(path)).ok

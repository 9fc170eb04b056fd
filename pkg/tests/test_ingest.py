# -*- coding: utf-8 -*-
import numpy as np
import pytest

from reliab.exceptions import ConfigurationError, IngestionError
from reliab.ingest import IngestedDataset, ingest

from .fixtures import write_paired, write_values


def test_values(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("1\n2\n3\n")
    data = ingest(path)
    assert isinstance(data, IngestedDataset)
    assert list(data.values) == [1.0, 2.0, 3.0]
    assert data.count == 3
    assert data.source == str(path)


def test_header_comments_and_blanks(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("value\n# exported yesterday\n1.5\n\n-2\n 3e2 \n")
    data = ingest(path, format="values")
    assert list(data.values) == [1.5, -2.0, 300.0]


def test_summary(tmp_path):
    data = ingest(write_values(tmp_path / "x.csv", [1, 2, 3, 4, 5]))
    summary = data.summary()
    assert summary.n == 5
    # divisor n
    assert summary.variance == pytest.approx(2.0)


def test_paired(tmp_path):
    path = write_paired(tmp_path / "p.csv", [1, 2, 3], [4, 5, 6, 7])
    control, treatment = ingest(path)
    assert list(control.values) == [1.0, 2.0, 3.0]
    assert list(treatment.values) == [4.0, 5.0, 6.0, 7.0]
    assert control.source.endswith("[control]")
    assert treatment.source.endswith("[treatment]")


def test_paired_label_order(tmp_path):
    # treatment rows first; the known label pair still decides the order
    path = write_paired(tmp_path / "p.csv", [9, 8], [1, 2], labels=("B", "A"))
    control, treatment = ingest(path, format="paired")
    assert list(control.values) == [1.0, 2.0]
    assert list(treatment.values) == [9.0, 8.0]

    path = write_paired(tmp_path / "q.csv", [1, 2], [3, 4], labels=("old", "new"))
    control, treatment = ingest(path)
    assert control.source.endswith("[old]")
    assert treatment.source.endswith("[new]")


def test_paired_errors(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("control,1\ncontrol,2\ntreatment,3\ntreatment,4\nholdout,5\n")
    with pytest.raises(IngestionError) as e:
        ingest(path)
    assert e.value.line == 5

    path.write_text("control,1\ncontrol,2\n")
    with pytest.raises(IngestionError):
        ingest(path)

    path.write_text("control,1,2\n")
    with pytest.raises(IngestionError):
        ingest(path, format="paired")


@pytest.mark.parametrize(
    "content,line",
    [
        ("1\nabc\n3\n", 2),
        ("1\n2\nnan\n", 3),
        ("1\n2\ninf\n", 3),
        ("1\n2,3\n", 2),
    ],
)
def test_bad_lines(tmp_path, content, line):
    path = tmp_path / "x.csv"
    path.write_text(content)
    with pytest.raises(IngestionError) as e:
        ingest(path, format="values")
    assert e.value.line == line
    assert e.value.path == str(path)
    assert "%s:%d" % (path, line) in str(e.value)


def test_unusable_files(tmp_path):
    with pytest.raises(IngestionError):
        ingest(tmp_path / "missing.csv")

    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(IngestionError):
        ingest(empty)

    header_only = tmp_path / "header.csv"
    header_only.write_text("value\n# nothing else\n")
    with pytest.raises(IngestionError):
        ingest(header_only)

    single = tmp_path / "single.csv"
    single.write_text("4.2\n")
    with pytest.raises(IngestionError):
        ingest(single)


def test_unknown_format(tmp_path):
    with pytest.raises(ConfigurationError):
        ingest(write_values(tmp_path / "x.csv", [1, 2]), format="parquet")


def test_dataset_from_array():
    data = IngestedDataset(np.array([[1.0, 2.0], [3.0, 4.0]]), "memory")
    assert data.count == 4
    assert data.json() == {"source": "memory", "count": 4}

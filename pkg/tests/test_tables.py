import pytest

from thermoclass.tables import ResultTable, format_value, read_csv, render_csv, write_csv


def sample_table():
    return ResultTable(
        columns=["x", "label"],
        rows=[(1.0, "class1"), (0.123456789123, "class2")],
        metadata={"artifact": "thermoclass 0.1.0", "seed": "42"},
    )


def test_rectangularity_enforced():
    with pytest.raises(ValueError):
        ResultTable(columns=["a", "b"], rows=[(1.0,)])


def test_format_value():
    assert format_value(2.0) == "2"
    assert format_value(0.123456789123) == "0.123456789"
    assert format_value(True) == "true"
    assert format_value(3) == "3"
    assert format_value("class1") == "class1"


def test_render_deterministic():
    assert render_csv(sample_table()) == render_csv(sample_table())


def test_round_trip(tmp_path):
    path = tmp_path / "table.csv"
    write_csv(sample_table(), path)
    back = read_csv(path)
    assert back.columns == ["x", "label"]
    assert back.metadata == {"artifact": "thermoclass 0.1.0", "seed": "42"}
    assert back.rows[0] == (1.0, "class1")
    assert back.rows[1][0] == pytest.approx(0.123456789, abs=1e-12)
    # writing the parsed table again reproduces the bytes
    path2 = tmp_path / "again.csv"
    write_csv(back, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_column_lookup():
    table = sample_table()
    assert table.column("label") == ["class1", "class2"]
    with pytest.raises(ValueError):
        table.column("missing")


def test_read_rejects_headerless_file(tmp_path):
    path = tmp_path / "meta_only.csv"
    path.write_text("# only = metadata\n")
    with pytest.raises(ValueError):
        read_csv(path)

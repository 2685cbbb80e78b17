import json

import pytest

from errors import MalformedInputError, describe
from morse import extend_from_vertex_values
from providers import (
    decomposition_to_dict,
    dumps,
    field_to_dict,
    load_input,
    read_facets,
    read_field_json,
    read_grid,
    read_off,
    read_values_csv,
    write_json,
)
from regions import morse_smale

from conftest import SQUARE_TOP_EDGE

SQUARE_OFF = """OFF
# unit square split along its diagonal
4 2 0
0 0 0
1 0 0
0 1 0
1 1 0
3 0 1 3
3 0 2 3
"""

SQUARE_CSV = "vertex,value\n0,0\n1,1\n2,1\n3,2\n"


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def test_read_off_square(write, square):
    loaded = read_off(write("square.off", SQUARE_OFF))
    assert loaded.complex.dims == square.dims
    assert loaded.complex.faces == square.faces
    assert loaded.vertex_values is None


def test_read_off_embedded_values(write):
    text = "OFF\n3 1 0\n0 0 0 0.5\n1 0 0 1.5\n0 1 0 2.5\n3 0 1 2\n"
    loaded = read_off(write("tri.off", text))
    assert loaded.vertex_values == {0: 0.5, 1: 1.5, 2: 2.5}


def test_read_off_reports_line(write):
    path = write("bad.off", "OFF\n3 1\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n")
    with pytest.raises(MalformedInputError) as info:
        read_off(path)
    assert info.value.path == path
    assert info.value.line == 6
    assert str(info.value).startswith(f"{path}:6:")


def test_read_off_missing_lines(write):
    with pytest.raises(MalformedInputError, match="Expected 3 vertex"):
        read_off(write("short.off", "OFF\n3 1\n0 0 0\n"))


def test_read_facets(write):
    loaded = read_facets(write("circle.facets", "0 1\n# comment\n1 2\n0 2\n"))
    assert loaded.complex.dims.count(1) == 3
    assert loaded.complex.dimension == 1


def test_read_facets_rejects_text(write):
    with pytest.raises(MalformedInputError) as info:
        read_facets(write("bad.facets", "0 1\n1 x\n"))
    assert info.value.line == 2


def test_read_grid(write):
    loaded = read_grid(write("strip.grid", "grid 2 2 1\n0 1\n2 3\n4 5\n"))
    assert len(loaded.complex) == 15
    assert sorted(loaded.vertex_values.values()) == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]
    assert loaded.vertex_values[loaded.complex.vertex_ids[3]] == 3.0


def test_read_grid_value_count(write):
    path = write("short.grid", "grid 1 3\n0 1\n2\n")
    with pytest.raises(MalformedInputError, match="Expected 4 values, found 3") as info:
        read_grid(path)
    assert info.value.line == 3


def test_read_grid_header(write):
    with pytest.raises(MalformedInputError, match="grid d e1"):
        read_grid(write("bad.grid", "grid 2 3\n0\n"))
    with pytest.raises(MalformedInputError, match="start with 'grid'"):
        read_grid(write("bad2.grid", "raster 1 1\n0 1\n"))


def test_grid_dimension_cap(write):
    path = write("cube.grid", "grid 3 1 1 1\n" + "0 " * 8 + "\n")
    with pytest.raises(MalformedInputError, match="exceeds the cap of 2"):
        read_grid(path, max_dimension=2)
    assert len(read_grid(path, max_dimension=None).complex) == 27


def test_values_csv(write):
    assert read_values_csv(write("v.csv", SQUARE_CSV)) == {0: 0.0, 1: 1.0, 2: 1.0, 3: 2.0}


def test_values_csv_duplicate(write):
    with pytest.raises(MalformedInputError, match="listed twice") as info:
        read_values_csv(write("dup.csv", "0,1\n0,2\n"))
    assert info.value.line == 2


def test_values_csv_missing_file(tmp_path):
    with pytest.raises(MalformedInputError, match="Cannot read values"):
        read_values_csv(str(tmp_path / "absent.csv"))


def test_load_input_with_values(write, square_field):
    loaded = load_input(write("square.off", SQUARE_OFF), "off", values_path=write("v.csv", SQUARE_CSV))
    assert extend_from_vertex_values(loaded.complex, loaded.vertex_values) == square_field


def test_load_input_missing_values(write):
    with pytest.raises(MalformedInputError, match=r"No value for vertices \[3\]"):
        load_input(write("square.off", SQUARE_OFF), "off", values_path=write("v.csv", "0,0\n1,1\n2,1\n"))


def test_load_input_unknown_format(write):
    with pytest.raises(ValueError, match="Unknown input format: ply"):
        load_input(write("square.off", SQUARE_OFF), "ply")


def test_load_input_dimension_cap(write):
    path = write("simplex.facets", "0 1 2 3\n")
    with pytest.raises(MalformedInputError, match="exceeds the cap of 2"):
        load_input(path, "facets", max_dimension=2)
    assert load_input(path, "facets", max_dimension=3).complex.dimension == 3


def test_field_json_round_trip(write, square, square_field):
    path = write("square.json", dumps(field_to_dict(square, square_field)))
    loaded = read_field_json(path)
    assert loaded.complex.dims == square.dims
    assert loaded.complex.faces == square.faces
    assert loaded.field == square_field
    assert loaded.function is None


def test_field_json_errors(write):
    with pytest.raises(MalformedInputError, match="Invalid JSON") as info:
        read_field_json(write("broken.json", "{\n  \"dims\": [0,\n"))
    assert info.value.line is not None
    with pytest.raises(MalformedInputError, match="needs 'dims' and 'faces'"):
        read_field_json(write("empty.json", "{}"))
    payload = {"dims": [0, 0, 1], "faces": [[], [], [0, 1]], "pairs": [[1, 2]], "critical": [0],
               "values": [0.0]}
    with pytest.raises(MalformedInputError, match="1 values for 3 cells"):
        read_field_json(write("short.json", json.dumps(payload)))


def test_describe_carries_location(write):
    path = write("bad.facets", "0 a\n")
    with pytest.raises(MalformedInputError) as info:
        read_facets(path)
    payload = describe(info.value)
    assert payload["type"] == "MalformedInputError"
    assert payload["path"] == path
    assert payload["line"] == 1


def test_decomposition_dict_marks_boundary_critical(square, square_field):
    decomp = morse_smale(square, square_field, boundary=True, ascending=False)
    data = decomposition_to_dict(square, square_field, decomp)
    assert [(c["id"], c["kind"]) for c in data["critical"]] == [
        (0, "minimum"), (SQUARE_TOP_EDGE, "boundary-critical"),
    ]
    assert data["ms_labels"] == []
    assert data["stats"] is None
    assert "route" not in data


def test_write_json_is_canonical(tmp_path, capsys):
    path = tmp_path / "out.json"
    write_json({"b": 1, "a": [2, 3]}, str(path))
    text = path.read_text(encoding="utf-8")
    assert text == '{\n  "a": [\n    2,\n    3\n  ],\n  "b": 1\n}\n'
    write_json({"b": 1, "a": [2, 3]})
    assert capsys.readouterr().out == text

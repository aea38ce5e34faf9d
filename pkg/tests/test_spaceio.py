import json

import numpy as np
import pytest

from fmetric import (
    DomainError,
    FmetricError,
    SpaceAxiomError,
    SpaceFormatError,
    UnknownFunctionError,
    load_space_file,
    orbit,
)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_json_space_with_witness_and_affine_map(tmp_path):
    doc = {
        "points": [0, 1, 0.5],
        "matrix": [[0, 1, 0.5], [1, 0, 0.5], [0.5, 0.5, 0]],
        "witness": {"f": "ln", "alpha": 0.25},
        "map": {"affine": [-0.5, 1.0]},
    }
    p = write(tmp_path, "s.json", json.dumps(doc))
    space, witness, T = load_space_file(p)
    assert space.labels == (0, 1, 0.5)
    assert witness.f.name == "ln" and witness.alpha == 0.25
    assert T(0) == 1 and T(1) == 0.5
    with pytest.raises(DomainError):
        T(0.5)  # image 0.75 is not a carrier point


def test_json_space_minimal(tmp_path):
    doc = {"points": ["a", "b"], "matrix": [[0, 2], [2, 0]]}
    space, witness, T = load_space_file(write(tmp_path, "m.json", json.dumps(doc)))
    assert witness is None and T is None
    assert space.d("a", "b") == 2.0


def test_json_map_borrowed_from_example(tmp_path):
    doc = {
        "points": [0, 1, 0.5],
        "matrix": [[0, 1, 0.5], [1, 0, 0.5], [0.5, 0.5, 0]],
        "map": "interval-halving",
    }
    space, _, T = load_space_file(write(tmp_path, "b.json", json.dumps(doc)))
    tr = orbit(space, T, 0, 2)
    assert tr.points == [0, 1.0, 0.5]
    with pytest.raises(DomainError):
        orbit(space, T, 0, 3)  # next image 0.75 leaves this carrier


def test_csv_space(tmp_path):
    text = "a,b,c\n0,1,1\n1,0,1\n1,1,0\n"
    space, witness, T = load_space_file(write(tmp_path, "m.csv", text))
    assert space.labels == ("a", "b", "c")
    assert witness is None and T is None
    assert space.d("a", "c") == 1.0


def test_csv_numeric_labels_parse(tmp_path):
    text = "1,2.5,30\n0,1,1\n1,0,1\n1,1,0\n"
    space, _, _ = load_space_file(write(tmp_path, "n.csv", text))
    assert space.labels == (1, 2.5, 30)


def test_empty_file(tmp_path):
    with pytest.raises(SpaceFormatError):
        load_space_file(write(tmp_path, "e.csv", "  \n"))


def test_missing_file():
    with pytest.raises(SpaceFormatError):
        load_space_file("/nonexistent/path.json")


def test_csv_bad_cell_names_position(tmp_path):
    text = "a,b\n0,x\n1,0\n"
    with pytest.raises(SpaceFormatError) as e:
        load_space_file(write(tmp_path, "bad.csv", text))
    assert "row 1" in str(e.value) and "'x'" in str(e.value)


def test_row_count_mismatch(tmp_path):
    text = "a,b,c\n0,1,1\n1,0,1\n"
    with pytest.raises(SpaceFormatError) as e:
        load_space_file(write(tmp_path, "short.csv", text))
    assert "3 labels" in str(e.value)


def test_ragged_row(tmp_path):
    doc = {"points": ["a", "b"], "matrix": [[0, 1], [1]]}
    with pytest.raises(SpaceFormatError) as e:
        load_space_file(write(tmp_path, "rag.json", json.dumps(doc)))
    assert "row 1" in str(e.value)


def test_non_finite_entries_rejected(tmp_path):
    doc = '{"points": ["a", "b"], "matrix": [[0, NaN], [NaN, 0]]}'
    with pytest.raises(SpaceFormatError) as e:
        load_space_file(write(tmp_path, "nan.json", doc))
    assert "finite" in str(e.value)


def test_invalid_json_diagnostic(tmp_path):
    with pytest.raises(SpaceFormatError) as e:
        load_space_file(write(tmp_path, "broken.json", "{not json"))
    assert "invalid JSON" in str(e.value)


def test_unknown_keys_rejected(tmp_path):
    doc = {"points": ["a", "b"], "matrix": [[0, 1], [1, 0]], "metric": True}
    with pytest.raises(SpaceFormatError) as e:
        load_space_file(write(tmp_path, "k.json", json.dumps(doc)))
    assert "metric" in str(e.value)


def test_bad_witness_shape(tmp_path):
    doc = {"points": ["a", "b"], "matrix": [[0, 1], [1, 0]], "witness": {"f": "ln"}}
    with pytest.raises(SpaceFormatError):
        load_space_file(write(tmp_path, "w.json", json.dumps(doc)))


def test_unknown_witness_function(tmp_path):
    doc = {"points": ["a", "b"], "matrix": [[0, 1], [1, 0]], "witness": {"f": "exp", "alpha": 0}}
    with pytest.raises(UnknownFunctionError):
        load_space_file(write(tmp_path, "uf.json", json.dumps(doc)))


def test_unknown_map_example(tmp_path):
    doc = {"points": [0, 1], "matrix": [[0, 1], [1, 0]], "map": "klein-bottle"}
    with pytest.raises(FmetricError):
        load_space_file(write(tmp_path, "um.json", json.dumps(doc)))


def test_map_without_numeric_labels(tmp_path):
    doc = {"points": ["a", "b"], "matrix": [[0, 1], [1, 0]], "map": {"affine": [1, 0]}}
    with pytest.raises(SpaceFormatError):
        load_space_file(write(tmp_path, "nl.json", json.dumps(doc)))


def test_affine_map_bad_coefficients(tmp_path):
    doc = {"points": [0, 1], "matrix": [[0, 1], [1, 0]], "map": {"affine": [1]}}
    with pytest.raises(SpaceFormatError):
        load_space_file(write(tmp_path, "ac.json", json.dumps(doc)))


def test_duplicate_labels_rejected(tmp_path):
    doc = {"points": ["a", "a"], "matrix": [[0, 1], [1, 0]]}
    with pytest.raises(SpaceAxiomError):
        load_space_file(write(tmp_path, "dup.json", json.dumps(doc)))


def test_negative_entries_survive_loading(tmp_path):
    # axiom problems are verification findings, not parse failures
    doc = {"points": ["a", "b"], "matrix": [[0, -1], [-1, 0]]}
    space, _, _ = load_space_file(write(tmp_path, "neg.json", json.dumps(doc)))
    assert space.d("a", "b") == -1.0


def test_matrix_rejects_non_numbers(tmp_path):
    doc = {"points": ["a", "b"], "matrix": [[0, "1"], ["1", 0]]}
    with pytest.raises(SpaceFormatError):
        load_space_file(write(tmp_path, "str.json", json.dumps(doc)))

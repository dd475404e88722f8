"""Matrix text format and problem-file loading."""

import json

import numpy as np
import pytest

from qme.errors import InputError, ValidationFailed
from qme.io import (
    format_matrix,
    load_matrix_text,
    load_problem,
    parse_matrix,
    save_matrix_text,
)

from helpers import raw_example1


class TestMatrixText:
    def test_format_shape_and_header(self):
        text = format_matrix(np.array([[1.0, 2.0], [3.0, 4.0]]))
        lines = text.splitlines()
        assert lines[0] == "2 2"
        assert len(lines) == 3
        assert text.endswith("\n")

    def test_round_trip_is_exact(self):
        rng = np.random.default_rng(904)
        for shape in ((1, 1), (3, 5), (7, 2)):
            a = rng.uniform(-1e3, 1e3, size=shape)
            a[0, 0] = 1.0 / 3.0  # needs all 17 digits
            assert np.array_equal(parse_matrix(format_matrix(a)), a)

    def test_extreme_values_round_trip(self):
        a = np.array([[1e-308, -1e308], [5e-324, -0.0]])
        assert np.array_equal(parse_matrix(format_matrix(a)), a)

    def test_file_round_trip(self, tmp_path):
        a, _ = raw_example1(5)
        path = tmp_path / "b.txt"
        save_matrix_text(path, a)
        assert np.array_equal(load_matrix_text(path), a)

    def test_blank_lines_ignored(self):
        assert np.array_equal(
            parse_matrix("\n2 2\n\n1 2\n\n3 4\n\n"),
            np.array([[1.0, 2.0], [3.0, 4.0]]),
        )

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "2\n1 2\n3 4",
            "two two\n1 2\n3 4",
            "0 2\n",
            "2 2\n1 2\n",
            "2 2\n1 2\n3 4\n5 6",
            "2 2\n1 2 3\n4 5",
            "2 2\n1 x\n3 4",
            "1 2\n1 inf",
            "1 1\nnan",
        ],
    )
    def test_malformed_rejected(self, text):
        with pytest.raises(InputError):
            parse_matrix(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_matrix_text(tmp_path / "absent.txt")


class TestProblemFile:
    def _write(self, tmp_path, doc):
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(doc))
        return path

    def test_inline_matrices(self, tmp_path):
        path = self._write(
            tmp_path, {"B": [[4.0, -1.0], [-1.0, 4.0]], "C": [[1.0, 0.0], [0.0, 1.0]]}
        )
        p = load_problem(path)
        assert p.n == 2
        assert p.B[0, 1] == -1.0

    def test_paths_resolved_relative_to_file(self, tmp_path):
        b, c = raw_example1(4)
        save_matrix_text(tmp_path / "b.txt", b)
        save_matrix_text(tmp_path / "c.txt", c)
        path = self._write(tmp_path, {"B": "b.txt", "C": "c.txt"})
        p = load_problem(path)
        assert np.array_equal(p.B, b) and np.array_equal(p.C, c)

    def test_mixed_inline_and_path(self, tmp_path):
        b, c = raw_example1(4)
        save_matrix_text(tmp_path / "b.txt", b)
        path = self._write(tmp_path, {"B": "b.txt", "C": c.tolist()})
        assert np.array_equal(load_problem(path).C, c)

    def test_general_form_reduced(self, tmp_path):
        b, c = raw_example1(4)
        d = np.array([2.0, 1.0, 4.0, 0.5])
        doc = {
            "A_tilde": np.diag(d).tolist(),
            "B": (d[:, None] * b).tolist(),
            "C": (d[:, None] * c).tolist(),
        }
        p = load_problem(self._write(tmp_path, doc))
        assert np.allclose(p.B, b, rtol=1e-14, atol=0.0)

    def test_validation_failure_propagates(self, tmp_path):
        path = self._write(tmp_path, {"B": [[2.0, 0.0], [0.0, 2.0]], "C": [[1.0, 0.0], [0.0, 1.0]]})
        with pytest.raises(ValidationFailed) as ei:
            load_problem(path)
        assert ei.value.reason == "Cond3Fails"

    def test_missing_keys_rejected(self, tmp_path):
        with pytest.raises(InputError) as ei:
            load_problem(self._write(tmp_path, {"B": [[3.0]]}))
        assert "C" in str(ei.value)

    def test_unknown_keys_rejected(self, tmp_path):
        doc = {"B": [[3.0]], "C": [[1.0]], "seed": 7}
        with pytest.raises(InputError) as ei:
            load_problem(self._write(tmp_path, doc))
        assert "seed" in str(ei.value)

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / "problem.json"
        path.write_text("{not json")
        with pytest.raises(InputError):
            load_problem(path)

    def test_non_object_rejected(self, tmp_path):
        path = tmp_path / "problem.json"
        path.write_text("[1, 2]")
        with pytest.raises(InputError):
            load_problem(path)

    def test_bad_inline_entry_rejected(self, tmp_path):
        for bad in ([[1.0], [2.0, 3.0]], [1.0, 2.0], 7, [["a"]]):
            path = self._write(tmp_path, {"B": bad, "C": [[1.0]]})
            with pytest.raises(InputError):
                load_problem(path)

    def test_missing_referenced_file(self, tmp_path):
        path = self._write(tmp_path, {"B": "nowhere.txt", "C": [[1.0]]})
        with pytest.raises(InputError):
            load_problem(path)

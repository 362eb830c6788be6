"""
Author: kreinframes contributors
Date: 2026-10-18 16:31:17
LastEditTime: 2026-10-18 16:31:17
Description: tests for the frame file format and the frame sources
FilePath: /kreinframes/tests/test_frame_source.py
"""

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from kreinframes import (
    MSG_MINUS_TRIVIAL,
    FrameFile,
    FrameFileError,
    NeutralDemo,
    certify,
    classify_subspace,
    parse_frame_text,
    read_frame_file,
    write_frame_file,
)

SAMPLE = """# two vectors in C^2
dim 2
J
1 0
0 -1   # H- is the second axis

vectors 2
1 0  0.5 0
0.25 -1  1 0
"""


def test_parse_sample():
    J, vectors = parse_frame_text(SAMPLE)
    np.testing.assert_array_equal(J, np.diag([1.0, -1.0]))
    np.testing.assert_array_equal(vectors, [[1, 0.5], [0.25 - 1j, 1]])


@pytest.mark.parametrize(
    "text, lineno, fragment",
    [
        ("", 1, "expected 'dim <n>'"),
        ("size 2\n", 1, "expected 'dim <n>'"),
        ("dim two\n", 1, "not an integer"),
        ("dim 0\n", 1, "positive"),
        ("dim 2\nK\n", 2, "expected 'J'"),
        ("dim 2\nJ\n1 0\n0\n", 4, "needs 2 numbers"),
        ("dim 2\nJ\n1 0\n0 x\n", 4, "not a number"),
        ("dim 2\nJ\n1 0\n0 -1\nvectors 1\n1 0 0\n", 6, "needs 4 numbers"),
        ("dim 2\nJ\n1 0\n0 -1\nvectors 2\n1 0 0 0\n", 7, "unexpected end of file"),
        ("dim 2\nJ\n1 0\n0 -1\nvectors 1\n1 0 0 0\nextra\n", 7, "unexpected content"),
        ("dim 2\nJ\n1 0\n# comment\n\n0 -1\nvectorz 1\n", 7, "expected 'vectors <m>'"),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno, fragment):
    with pytest.raises(FrameFileError) as excinfo:
        parse_frame_text(text)
    assert excinfo.value.lineno == lineno
    assert fragment in str(excinfo.value)
    assert f"line {lineno}:" in str(excinfo.value)


def test_write_then_read_is_exact(tmp_path, rng):
    J = np.diag([1.0, 1.0, -1.0])
    vectors = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    path = tmp_path / "frame.txt"
    write_frame_file(path, J, vectors, comment="random\nfour vectors")
    assert path.read_text().startswith("# random\n# four vectors\ndim 3\n")
    J_back, vectors_back = read_frame_file(path)
    np.testing.assert_array_equal(J_back, J)
    np.testing.assert_array_equal(vectors_back, vectors)


def test_frame_file_source(tmp_path):
    path = tmp_path / "frame.txt"
    path.write_text(SAMPLE)
    source = FrameFile(path)
    assert source.get_name() == "FRAME_FILE"
    assert source.source_description["FRAME_FILE_NAME"] == "frame.txt"
    family = source.read_family()
    assert family.n_plus.tolist() == [0]
    assert family.n_minus.tolist() == [1]
    with pytest.raises(FileNotFoundError):
        FrameFile(tmp_path / "missing.txt")


def test_frame_file_rejects_bad_j(tmp_path):
    path = tmp_path / "frame.txt"
    path.write_text("dim 2\nJ\n1 0\n0 2\nvectors 1\n1 0 0 0\n")
    with pytest.raises(ValueError):
        FrameFile(path).read_space()


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(line=st.integers(min_value=0, max_value=8), junk=st.sampled_from(["abc", "1 2 3 4 5 6", "vectors", "dim 3"]))
def test_corrupted_line_is_reported(line, junk):
    lines = SAMPLE.splitlines()
    lines[line] = junk
    text = "\n".join(lines)
    try:
        parse_frame_text(text)
    except FrameFileError as e:
        assert 1 <= e.lineno <= len(lines) + 1
    # corrupting a comment or blank line may leave a valid file


@pytest.mark.parametrize("k", [1, 2, 3])
def test_neutral_demo(k):
    demo = NeutralDemo({"k": k})
    family = demo.read_family()
    assert family.m == 2 * k
    assert family.neutral.size == 2 * k
    assert family.n_minus.size == 0
    assert classify_subspace(demo.space, demo.neutral_subspace).kind == "neutral"

    cert11 = certify(family, "def11")
    assert cert11.holds
    assert cert11.bounds == pytest.approx((1.0, 1.0))
    assert cert11.tight

    cert13 = certify(family, "def13")
    assert not cert13.holds
    assert MSG_MINUS_TRIVIAL in cert13.messages
    assert cert13.diagnostics["M_minus_trivial"]
    assert demo.get_name() == "NEUTRAL_DEMO"

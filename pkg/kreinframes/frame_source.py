"""
Author: kreinframes contributors
Date: 2026-10-18 12:02:44
LastEditTime: 2026-10-18 12:02:44
Description: Frame sources (frame text files and the neutral demo)
FilePath: /kreinframes/kreinframes/frame_source.py
"""

import collections
import logging
from abc import ABC
from pathlib import Path

import numpy as np

from kreinframes.frame_ops import FrameFamily, split_family
from kreinframes.kf_utils import FrameFileError
from kreinframes.krein_core import SignatureSpace, hypermaximal_neutral_subspace

__all__ = [
    "FrameSource",
    "FrameFile",
    "NeutralDemo",
    "neutral_demo_arg",
    "parse_frame_text",
    "read_frame_file",
    "write_frame_file",
]

LOGGER = logging.getLogger(__name__)

neutral_demo_arg = {
    # J = diag(I_k, -I_k), the family has 2k members
    "k": 2,
}


class FrameSource(ABC):
    """An interface for sources of frames in a finite-dimensional Krein space

    A source knows its space and its vectors; the family with its sign split
    is derived from both.
    """

    def __init__(self, source_path=None):
        self.source_path = None if source_path is None else Path(source_path)

    def get_name(self):
        raise NotImplementedError

    def set_source_describe(self) -> collections.OrderedDict:
        raise NotImplementedError

    def read_space(self) -> SignatureSpace:
        raise NotImplementedError

    def read_vectors(self) -> np.ndarray:
        """frame vectors as rows"""
        raise NotImplementedError

    def read_family(self) -> FrameFamily:
        return split_family(self.read_space(), self.read_vectors())


def _strip(line):
    return line.split("#", 1)[0].strip()


def _numbers(fields, lineno):
    try:
        return [float(x) for x in fields]
    except ValueError as e:
        raise FrameFileError(f"not a number: {e}", lineno) from e


def parse_frame_text(text):
    """Parse the line-oriented frame format

    ::

        # comment
        dim <n>
        J
        <n rows of n numbers>
        vectors <m>
        <m rows of 2n numbers, real and imaginary parts interleaved>

    Parameters
    ----------
    text : str
        content of a frame file

    Returns
    -------
    tuple
        (J, vectors) with J n x n real and vectors m x n complex

    Raises
    ------
    FrameFileError
        with the 1-based number of the offending line
    """
    lines = [(i + 1, _strip(line)) for i, line in enumerate(text.splitlines())]
    lines = [(lineno, content) for lineno, content in lines if content]
    pos = 0

    def next_line(expected):
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise FrameFileError(f"unexpected end of file, expected {expected}", last + 1)
        item = lines[pos]
        pos += 1
        return item

    lineno, content = next_line("'dim <n>'")
    fields = content.split()
    if len(fields) != 2 or fields[0] != "dim":
        raise FrameFileError(f"expected 'dim <n>', got '{content}'", lineno)
    try:
        dim = int(fields[1])
    except ValueError as e:
        raise FrameFileError(f"dimension is not an integer: '{fields[1]}'", lineno) from e
    if dim <= 0:
        raise FrameFileError(f"dimension must be positive, got {dim}", lineno)

    lineno, content = next_line("'J'")
    if content != "J":
        raise FrameFileError(f"expected 'J', got '{content}'", lineno)
    J = np.zeros((dim, dim))
    for row in range(dim):
        lineno, content = next_line(f"row {row + 1} of J")
        values = _numbers(content.split(), lineno)
        if len(values) != dim:
            raise FrameFileError(f"a row of J needs {dim} numbers, got {len(values)}", lineno)
        J[row] = values

    lineno, content = next_line("'vectors <m>'")
    fields = content.split()
    if len(fields) != 2 or fields[0] != "vectors":
        raise FrameFileError(f"expected 'vectors <m>', got '{content}'", lineno)
    try:
        count = int(fields[1])
    except ValueError as e:
        raise FrameFileError(f"vector count is not an integer: '{fields[1]}'", lineno) from e
    if count <= 0:
        raise FrameFileError(f"vector count must be positive, got {count}", lineno)
    vectors = np.zeros((count, dim), dtype=complex)
    for n in range(count):
        lineno, content = next_line(f"vector {n + 1}")
        values = _numbers(content.split(), lineno)
        if len(values) != 2 * dim:
            raise FrameFileError(
                f"a vector needs {2 * dim} numbers (real, imag interleaved), got {len(values)}",
                lineno,
            )
        pairs = np.asarray(values).reshape(dim, 2)
        vectors[n] = pairs[:, 0] + 1j * pairs[:, 1]

    if pos < len(lines):
        lineno, content = lines[pos]
        raise FrameFileError(f"unexpected content after the last vector: '{content}'", lineno)
    return J, vectors


def read_frame_file(path):
    """(J, vectors) from a frame file, see parse_frame_text"""
    with open(path, "r") as file:
        return parse_frame_text(file.read())


def write_frame_file(path, J, vectors, comment=None):
    """Write J and vectors (rows) in the frame format with 17 significant digits"""
    J = np.asarray(J, dtype=float)
    vectors = np.atleast_2d(np.asarray(vectors, dtype=complex))
    lines = []
    if comment:
        lines += [f"# {line}" for line in comment.splitlines()]
    lines.append(f"dim {J.shape[0]}")
    lines.append("J")
    lines += [" ".join(f"{x:.17g}" for x in row) for row in J]
    lines.append(f"vectors {vectors.shape[0]}")
    for vec in vectors:
        pairs = np.column_stack([vec.real, vec.imag]).ravel()
        lines.append(" ".join(f"{x:.17g}" for x in pairs))
    with open(path, "w") as file:
        file.write("\n".join(lines) + "\n")


class FrameFile(FrameSource):
    """A frame stored in the frame text format"""

    def __init__(self, source_path):
        super().__init__(source_path)
        if not self.source_path.is_file():
            raise FileNotFoundError(f"no frame file at {self.source_path}")
        self.source_description = self.set_source_describe()
        self._J, self._vectors = read_frame_file(self.source_path)
        LOGGER.debug(
            "read %d vectors of dim %d from %s",
            self._vectors.shape[0],
            self._J.shape[0],
            self.source_path,
        )

    def get_name(self):
        return "FRAME_FILE"

    def set_source_describe(self) -> collections.OrderedDict:
        return collections.OrderedDict(
            FRAME_FILE=self.source_path,
            FRAME_FILE_NAME=self.source_path.name,
        )

    def read_space(self) -> SignatureSpace:
        return SignatureSpace(self._J)

    def read_vectors(self) -> np.ndarray:
        return self._vectors.copy()


class NeutralDemo(FrameSource):
    """{f_n} and {J f_n} for a basis {f_n} of a hypermaximal neutral subspace

    Every member is neutral, so all of them land in N+: M+ is the whole space
    and M- = {0}. The family is an orthonormal basis, hence a frame with
    A = B = 1 for the conventional inequality, but no J-frame.
    """

    def __init__(self, arg: dict = neutral_demo_arg):
        super().__init__()
        self.k = int(arg["k"])
        self.space = SignatureSpace.from_signature(self.k, self.k)
        self.neutral_subspace = hypermaximal_neutral_subspace(self.space)
        self.source_description = self.set_source_describe()

    def get_name(self):
        return "NEUTRAL_DEMO"

    def set_source_describe(self) -> collections.OrderedDict:
        return collections.OrderedDict(
            NEUTRAL_DEMO_K=self.k,
            NEUTRAL_DEMO_DIM=2 * self.k,
            NEUTRAL_DEMO_MEMBERS=["f_n", "J f_n"],
        )

    def read_space(self) -> SignatureSpace:
        return self.space

    def read_vectors(self) -> np.ndarray:
        basis = np.asarray(self.neutral_subspace.basis)
        return np.vstack([basis.T, (self.space.J @ basis).T])

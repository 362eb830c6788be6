"""
Author: kreinframes contributors
Date: 2026-10-18 09:30:02
LastEditTime: 2026-10-18 09:30:02
Description: errors and small numerical helpers shared by all modules
FilePath: /kreinframes/kreinframes/kf_utils.py
"""

from pathlib import PurePath

import numpy as np
import scipy.linalg

__all__ = [
    "KreinFrameError",
    "DimensionError",
    "EmptySubspaceError",
    "ClassificationError",
    "DegenerateFamilyError",
    "DecompositionError",
    "SingularFrameOperatorError",
    "NotTightError",
    "NeutralVectorError",
    "IncompleteImageError",
    "BlockAlignmentError",
    "SubspaceMismatchError",
    "GridError",
    "FrameFileError",
    "relative_error",
    "numerical_rank",
    "column_basis",
    "principal_angles",
    "random_vectors",
    "to_builtin",
]


class KreinFrameError(Exception):
    """Base class of all errors raised by kreinframes"""


class DimensionError(KreinFrameError, ValueError):
    """Raised when vector, matrix or coefficient sizes do not match"""


class EmptySubspaceError(KreinFrameError, ValueError):
    """Raised when an operation needs a nonzero subspace"""


class ClassificationError(KreinFrameError, ValueError):
    """Raised when a subspace has the wrong kind (e.g. indefinite where definite is needed)"""


class DegenerateFamilyError(KreinFrameError, ValueError):
    """Raised when a vector family spans nothing"""


class DecompositionError(KreinFrameError, ValueError):
    """Raised when M+ and M- do not form a direct sum equal to the whole space

    In finite dimension this is the only trace of the D != H situation.
    """


class SingularFrameOperatorError(KreinFrameError, np.linalg.LinAlgError):
    """Raised when the frame operator is not boundedly invertible"""


class NotTightError(KreinFrameError, ValueError):
    """Raised when the tight reconstruction is requested for a non-tight J-frame"""


class NeutralVectorError(KreinFrameError, ArithmeticError):
    """Raised when [f_n, f_n] = 0 but the operation divides by it"""


class IncompleteImageError(KreinFrameError, ValueError):
    """Raised when {cosh(Q/2) g_n} does not span the space"""


class BlockAlignmentError(KreinFrameError, ValueError):
    """Raised when a vector lies neither in H+ nor in H-"""


class SubspaceMismatchError(KreinFrameError, ValueError):
    """Raised when the spans of a family differ from the subspaces generated by Q"""


class GridError(KreinFrameError, ValueError):
    """Raised for invalid quadrature grids"""


class FrameFileError(KreinFrameError, ValueError):
    """Raised when a frame file cannot be parsed

    Parameters
    ----------
    msg : str
        what went wrong
    lineno : int
        1-based line number in the file, 0 when the error is not tied to a line
    """

    def __init__(self, msg, lineno=0):
        if lineno:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)
        self.lineno = lineno


def relative_error(actual, expected) -> float:
    """||actual - expected|| / ||expected||, with the absolute error when expected is zero"""
    actual = np.asarray(actual)
    expected = np.asarray(expected)
    scale = np.linalg.norm(expected)
    diff = np.linalg.norm(actual - expected)
    if scale == 0.0:
        return float(diff)
    return float(diff / scale)


def numerical_rank(mat, tol) -> int:
    """number of singular values above tol times the largest one"""
    mat = np.atleast_2d(mat)
    if mat.size == 0:
        return 0
    sv = scipy.linalg.svdvals(mat)
    if sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv >= tol * sv[0]))


def column_basis(mat, tol) -> np.ndarray:
    """orthonormal basis of the column space of mat

    Parameters
    ----------
    mat : np.ndarray
        dim x k matrix, columns may be dependent
    tol : float
        relative cut-off for singular values

    Returns
    -------
    np.ndarray
        dim x r matrix with orthonormal columns, r the numerical rank
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.shape[1] == 0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    u, sv, _ = scipy.linalg.svd(mat, full_matrices=False)
    if sv.size == 0 or sv[0] == 0.0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    rank = int(np.count_nonzero(sv >= tol * sv[0]))
    return u[:, :rank]


def principal_angles(basis_a, basis_b) -> np.ndarray:
    """principal angles (ascending, radians) between the column spaces of two matrices"""
    basis_a = np.asarray(basis_a)
    basis_b = np.asarray(basis_b)
    if basis_a.shape[1] == 0 or basis_b.shape[1] == 0:
        return np.zeros(0)
    return np.sort(scipy.linalg.subspace_angles(basis_a, basis_b))


def random_vectors(rng, dim, count, real=False) -> np.ndarray:
    """count random vectors of C^dim (rows), normally distributed entries"""
    vectors = rng.standard_normal((count, dim))
    if not real:
        vectors = vectors + 1j * rng.standard_normal((count, dim))
    return np.asarray(vectors, dtype=complex)


def to_builtin(value):
    """convert numpy scalars/arrays (also nested in dicts and lists) to plain python values"""
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, PurePath):
        return str(value)
    if isinstance(value, np.ndarray):
        return [to_builtin(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.complexfloating, complex)):
        if value.imag == 0:
            return float(value.real)
        return [float(value.real), float(value.imag)]
    return value

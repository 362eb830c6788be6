"""
Author: kreinframes contributors
Date: 2026-10-18 11:20:31
LastEditTime: 2026-10-18 11:20:31
Description: Operators Q anticommuting with J, transport of frames by exp(-Q/2)
    and truncation studies
FilePath: /kreinframes/kreinframes/q_frames.py
"""

import collections
import logging

import dask
import numpy as np
import pandas as pd
import scipy.linalg
import xarray as xr
from tqdm import tqdm

from kreinframes import FUNCTIONS, TOLERANCES
from kreinframes.frame_ops import (
    FrameFamily,
    analysis,
    build_operator_bundle,
    certify,
    split_family,
)
from kreinframes.kf_utils import (
    BlockAlignmentError,
    ClassificationError,
    DimensionError,
    IncompleteImageError,
    KreinFrameError,
    SubspaceMismatchError,
    numerical_rank,
    principal_angles,
)
from kreinframes.krein_core import SignatureSpace, Subspace, as_kvector, classify_subspace, hilbert_inner

__all__ = [
    "QOperator",
    "AngleReport",
    "matrix_function",
    "subspaces_from_q",
    "operator_angles",
    "tan_angle_residual",
    "transport_to_jframe",
    "transport_to_hilbert_frame",
    "q_from_family",
    "inner_product_1",
    "energetic_norm",
    "truncation_study",
    "study_to_frame",
    "STUDY_COLUMNS",
    "FRAME_RECIPES",
]

LOGGER = logging.getLogger(__name__)


def _zero(z):
    return np.zeros_like(z)


# name -> (even part, odd part, factor applied to Q)
_FUNCTION_PARTS = {
    "exp_half": (np.cosh, np.sinh, 0.5),
    "exp_minus_half": (np.cosh, lambda z: -np.sinh(z), 0.5),
    "exp_full": (np.cosh, np.sinh, 1.0),
    "cosh_half": (np.cosh, _zero, 0.5),
    "sinh_half": (_zero, np.sinh, 0.5),
    "tanh_half": (_zero, np.tanh, 0.5),
}


class QOperator:
    """A Hermitian Q with JQ + QJ = 0

    In the eigenbasis V = [U+ U-] of J the operator has the block form
    [[0, B*], [B, 0]] with B = U-* Q U+ (q x p). The thin SVD B = X diag(s) Y*
    is computed once; every function of Q is then assembled blockwise from
    scalar functions of the singular values. The eigenvalues of Q are +-s and 0.

    Parameters
    ----------
    space : SignatureSpace
    Q : array-like
        dim x dim Hermitian matrix anticommuting with J
    tol_sym : float, optional
        relative tolerance of the Hermitian check
    anticomm_tol : float, optional
        relative tolerance of the anticommutation check
    """

    def __init__(self, space: SignatureSpace, Q, tol_sym=None, anticomm_tol=None):
        tol_sym = TOLERANCES["tol_sym"] if tol_sym is None else tol_sym
        anticomm_tol = TOLERANCES["anticomm_tol"] if anticomm_tol is None else anticomm_tol
        Q = np.array(Q, dtype=complex)
        if Q.shape != (space.dim, space.dim):
            raise DimensionError(f"Q must be {space.dim}x{space.dim}, got shape {Q.shape}")
        scale = np.linalg.norm(Q, 2)
        if np.linalg.norm(Q - Q.conj().T, 2) > tol_sym * scale:
            raise ValueError("Q is not Hermitian")
        Q = 0.5 * (Q + Q.conj().T)
        J = space.J
        if np.linalg.norm(J @ Q + Q @ J, 2) > anticomm_tol * scale:
            raise ValueError("Q does not anticommute with J")

        self.space = space
        self._V = np.hstack([space.basis_plus, space.basis_minus])
        p, q = space.p, space.q
        block = space.basis_minus.T @ Q @ space.basis_plus
        if min(p, q) == 0:
            X = np.zeros((q, 0), dtype=complex)
            s = np.zeros(0)
            Y = np.zeros((p, 0), dtype=complex)
        else:
            X, s, Yh = scipy.linalg.svd(block, full_matrices=False)
            Y = Yh.conj().T
        self._Q = Q
        self._Q.setflags(write=False)
        self._block = block
        self._X, self._s, self._Y = X, s, Y
        LOGGER.debug("Q with singular values %s", s)

    @classmethod
    def from_block(cls, space: SignatureSpace, block):
        """Q = V [[0, B*], [B, 0]] V* from the q x p block B"""
        block = np.asarray(block, dtype=complex)
        p, q = space.p, space.q
        if block.shape != (q, p):
            raise DimensionError(f"the block must be {q}x{p}, got shape {block.shape}")
        Qhat = np.zeros((space.dim, space.dim), dtype=complex)
        Qhat[p:, :p] = block
        Qhat[:p, p:] = block.conj().T
        V = np.hstack([space.basis_plus, space.basis_minus])
        return cls(space, V @ Qhat @ V.conj().T)

    @classmethod
    def from_parameters(cls, space: SignatureSpace, q_values):
        """One 2x2 block [[0, q_k], [q_k, 0]] per pair (k-th vector of H+, k-th vector of H-)"""
        q_values = np.asarray(q_values, dtype=float).ravel()
        if q_values.size > min(space.p, space.q):
            raise DimensionError(
                f"{q_values.size} parameters, at most min(p, q) = {min(space.p, space.q)} fit"
            )
        block = np.zeros((space.q, space.p))
        idx = np.arange(q_values.size)
        block[idx, idx] = q_values
        return cls.from_block(space, block)

    @property
    def Q(self) -> np.ndarray:
        return self._Q

    @property
    def block(self) -> np.ndarray:
        """B = U-* Q U+"""
        return self._block

    @property
    def singular_values(self) -> np.ndarray:
        return self._s

    @property
    def eigenvalues(self) -> np.ndarray:
        zeros = np.zeros(self.space.dim - 2 * self._s.size)
        return np.sort(np.concatenate([self._s, -self._s, zeros]))

    @property
    def norm(self) -> float:
        return float(self._s.max()) if self._s.size else 0.0

    def apply(self, even, odd, factor) -> np.ndarray:
        """g(factor * Q) for g = even + odd, both given as scalar functions

        Raises
        ------
        OverflowError
            when |factor * lambda| exceeds exp_limit for an eigenvalue lambda
        """
        z = factor * self._s
        limit = TOLERANCES["exp_limit"]
        if z.size and np.max(np.abs(z)) > limit:
            raise OverflowError(
                f"|lambda * {factor}| = {np.max(np.abs(z)):.6g} exceeds exp_limit {limit}"
            )
        p, q = self.space.p, self.space.q
        X, Y = self._X, self._Y
        e0 = float(even(np.zeros(1))[0])
        ez = even(z) - e0
        oz = odd(z)
        Mhat = np.zeros((self.space.dim, self.space.dim), dtype=complex)
        Mhat[:p, :p] = e0 * np.eye(p) + (Y * ez[None, :]) @ Y.conj().T
        Mhat[p:, p:] = e0 * np.eye(q) + (X * ez[None, :]) @ X.conj().T
        Mhat[p:, :p] = (X * oz[None, :]) @ Y.conj().T
        Mhat[:p, p:] = (Y * oz[None, :]) @ X.conj().T
        return self._V @ Mhat @ self._V.conj().T

    def __repr__(self):
        return f"QOperator(dim={self.space.dim}, ||Q||={self.norm:.6g})"


class AngleReport:
    """Principal angles between H+ and M+ (theta_plus) and H- and M- (theta_minus)"""

    def __init__(self, theta_plus, theta_minus):
        self.theta_plus = np.asarray(theta_plus)
        self.theta_minus = np.asarray(theta_minus)

    @property
    def max_angle(self) -> float:
        angles = np.concatenate([self.theta_plus, self.theta_minus])
        return float(angles.max()) if angles.size else 0.0

    def __repr__(self):
        return f"AngleReport(theta_plus={self.theta_plus}, theta_minus={self.theta_minus})"


def matrix_function(q: QOperator, fn: str) -> np.ndarray:
    """exp(Q/2), exp(-Q/2), exp(Q), cosh(Q/2), sinh(Q/2) or tanh(Q/2)

    Parameters
    ----------
    q : QOperator
    fn : str
        one of exp_half, exp_minus_half, exp_full, cosh_half, sinh_half, tanh_half

    Returns
    -------
    np.ndarray
        dim x dim matrix
    """
    if fn not in FUNCTIONS:
        raise ValueError(f"fn must be one of {FUNCTIONS}, got {fn}")
    even, odd, factor = _FUNCTION_PARTS[fn]
    return q.apply(even, odd, factor)


def subspaces_from_q(q: QOperator):
    """M+ = (I - tanh(Q/2)) H+ and M- = (I - tanh(Q/2)) H-

    Returns
    -------
    tuple
        (M_plus, M_minus) as Subspace
    """
    space = q.space
    gen = np.eye(space.dim) - matrix_function(q, "tanh_half")
    m_plus = Subspace(gen @ space.basis_plus) if space.p else Subspace.zero(space.dim)
    m_minus = Subspace(gen @ space.basis_minus) if space.q else Subspace.zero(space.dim)
    return m_plus, m_minus


def operator_angles(q: QOperator) -> AngleReport:
    """principal angles Theta(H+, M+) and Theta(H-, M-)"""
    space = q.space
    m_plus, m_minus = subspaces_from_q(q)
    return AngleReport(
        principal_angles(space.basis_plus, m_plus.basis),
        principal_angles(space.basis_minus, m_minus.basis),
    )


def tan_angle_residual(q: QOperator) -> float:
    """max |tan Theta - singular values of the off-diagonal blocks of tanh(Q/2)|

    On H+ the singular values come from the block H+ -> H- of tanh(Q/2), padded
    with zeros to p values; likewise on H-.
    """
    space = q.space
    report = operator_angles(q)
    that = matrix_function(q, "tanh_half")
    cross = space.basis_minus.T @ that @ space.basis_plus
    sv = scipy.linalg.svdvals(cross) if cross.size else np.zeros(0)
    residual = 0.0
    for theta, count in ((report.theta_plus, space.p), (report.theta_minus, space.q)):
        expected = np.sort(np.concatenate([sv, np.zeros(count - sv.size)]))
        if count:
            residual = max(residual, float(np.max(np.abs(np.sort(np.tan(theta)) - expected))))
    return residual


def transport_to_jframe(q: QOperator, g, require_complete=True) -> FrameFamily:
    """The J-frame {exp(-Q/2) g_n} built from vectors g_n of H+ or H-

    Parameters
    ----------
    q : QOperator
    g : array-like
        m x dim matrix, one vector per row, each in H+ or in H-
    require_complete : bool, optional
        check that {cosh(Q/2) g_n} spans the space, by default True

    Returns
    -------
    FrameFamily

    Raises
    ------
    BlockAlignmentError
        when some g_n lies neither in H+ nor in H-
    IncompleteImageError
        when {cosh(Q/2) g_n} is not complete
    """
    space = q.space
    g = np.atleast_2d(np.asarray(g, dtype=complex))
    if g.shape[1] != space.dim:
        raise DimensionError(f"vectors of length {g.shape[1]} in a space of dim {space.dim}")
    block_tol = TOLERANCES["block_tol"]
    for n, vec in enumerate(g):
        size = np.linalg.norm(vec)
        off_plus = np.linalg.norm(space.basis_minus.T @ vec)
        off_minus = np.linalg.norm(space.basis_plus.T @ vec)
        if min(off_plus, off_minus) > block_tol * size:
            raise BlockAlignmentError(f"g_{n} lies neither in H+ nor in H-")
    if require_complete:
        image = matrix_function(q, "cosh_half") @ g.T
        rank = numerical_rank(image, TOLERANCES["complete_tol"])
        if rank < space.dim:
            raise IncompleteImageError(
                f"cosh(Q/2) g_n span a subspace of dim {rank}, not {space.dim}"
            )
    return split_family(space, (matrix_function(q, "exp_minus_half") @ g.T).T)


def q_from_family(family: FrameFamily) -> QOperator:
    """The Q with exp(Q) = J J_M for a family whose spans are J-orthogonal

    Raises
    ------
    ClassificationError
        when M+ and M- are not J-orthogonal (J J_M is then not positive Hermitian)
    """
    space = family.space
    bundle = build_operator_bundle(family)
    H = space.J @ bundle.J_M
    if np.linalg.norm(H - H.conj().T, 2) > TOLERANCES["orth_tol"] * np.linalg.norm(H, 2):
        raise ClassificationError("M+ and M- are not J-orthogonal")
    lam, vecs = scipy.linalg.eigh(0.5 * (H + H.conj().T))
    if lam[0] <= 0.0:
        raise ClassificationError("J J_M is not positive definite")
    return QOperator(space, (vecs * np.log(lam)[None, :]) @ vecs.conj().T)


def transport_to_hilbert_frame(family: FrameFamily, q: QOperator = None) -> np.ndarray:
    """The conventional frame {exp(Q/2) f_n} (rows) of a family with J-orthogonal spans

    Parameters
    ----------
    family : FrameFamily
    q : QOperator, optional
        by default the Q derived from the family itself

    Raises
    ------
    SubspaceMismatchError
        when M+ or M- differ from the subspaces generated by q
    """
    if q is None:
        q = q_from_family(family)
    angle_tol = TOLERANCES["angle_tol"]
    m_plus, m_minus = subspaces_from_q(q)
    for label, got, expected in (
        ("M+", family.M_plus, m_plus),
        ("M-", family.M_minus, m_minus),
    ):
        if got.k != expected.k:
            raise SubspaceMismatchError(f"dim {label} is {got.k}, Q generates dim {expected.k}")
        angles = principal_angles(got.basis, expected.basis)
        if angles.size and angles.max() > angle_tol:
            raise SubspaceMismatchError(
                f"{label} deviates from the subspace generated by Q by {angles.max():.3e} rad"
            )
    return (matrix_function(q, "exp_half") @ family.F).T


def inner_product_1(q: QOperator, f, g) -> complex:
    """(f, g)_1 = (exp(Q/2) f, exp(Q/2) g)"""
    f = as_kvector(q.space, f)
    g = as_kvector(q.space, g)
    E = matrix_function(q, "exp_half")
    return hilbert_inner(E @ f, E @ g)


def energetic_norm(q: QOperator, f) -> float:
    """squared energetic norm ||f||^2 + ||exp(Q/2) f||^2"""
    f = as_kvector(q.space, f)
    E = matrix_function(q, "exp_half")
    return float(hilbert_inner(f, f).real + hilbert_inner(E @ f, E @ f).real)


def _orthonormal_recipe(m):
    return np.ones(m)


def _graded_recipe(m):
    # weights 1 + 1/k: Hilbert frame bounds (1 + 1/m)^2 and 4
    return 1.0 + 1.0 / np.arange(1, m + 1)


FRAME_RECIPES = {
    "orthonormal": _orthonormal_recipe,
    "graded": _graded_recipe,
}

STUDY_COLUMNS = [
    "size",
    "q_max",
    "A_def13",
    "B_def13",
    "A_def11",
    "cond_S",
    "min_uu_Mplus",
    "l2_partial",
    "l1_partial",
]

_STUDY_METRICS = collections.OrderedDict(
    [
        ("q_max", ("", "largest block parameter")),
        ("A_def13", ("[.,.] on M+- = (.,.)_1", "lower Def13 bound")),
        ("B_def13", ("[.,.] on M+- = (.,.)_1", "upper Def13 bound")),
        ("A_def11", ("(.,.)", "lower conventional bound")),
        ("cond_S", ("(.,.)", "condition number of S")),
        ("min_uu_Mplus", ("[.,.] over (.,.)-unit u", "uniform positivity margin of M+")),
        ("l2_partial", ("l2", "l2 norm of [h, f_n] for the harmonic probe")),
        ("l1_partial", ("l1", "l1 norm of [h, f_n] for the harmonic probe")),
        ("holds_def13", ("", "the Def13 certificate of the transported family holds")),
    ]
)


def _block_spectrum(q_values, weights):
    """eigenvalues of F F* for the transported family, pair by pair

    exp(-Q/2) acts on pair k as a hyperbolic rotation with singular values
    exp(+-q_k/2), so the weighted pair contributes w_k^2 exp(+-q_k).
    """
    q_abs = np.abs(q_values)
    return np.concatenate([weights**2 * np.exp(-q_abs), weights**2 * np.exp(q_abs)])


def _study_row(q_values, recipe):
    """the study metrics for one size m = len(q_values)

    Def11, cond(S) and the margin of M+ are read off the block spectrum; for
    large q an eigensolve of the transported family cancels them to zero.
    The Def13 pair is measured by certify and is nan when the certificate
    fails in double precision.
    """
    m = len(q_values)
    q_max = float(np.max(q_values))
    space = SignatureSpace.from_signature(m, m)
    q = QOperator.from_parameters(space, q_values)
    weights = FRAME_RECIPES[recipe](m)
    spectrum = _block_spectrum(q_values, weights)
    g = np.diag(np.concatenate([weights, weights])).astype(complex)
    family = transport_to_jframe(q, g)
    try:
        cert = certify(family, "def13")
        holds, reason = cert.holds, "; ".join(cert.messages)
    except KreinFrameError as e:
        cert, holds, reason = None, False, str(e)
    if holds:
        bounds13 = cert.bounds_def13
    else:
        bounds13 = (float("nan"), float("nan"))
        LOGGER.warning("size %d (q_max %.6g): no Def13 certificate: %s", m, q_max, reason)
    harmonic = 1.0 / np.arange(1, m + 1)
    probe = np.concatenate([harmonic, harmonic]).astype(complex)
    coeffs = np.abs(analysis(family, probe))
    return {
        "q_max": q_max,
        "A_def13": bounds13[0],
        "B_def13": bounds13[1],
        "A_def11": float(spectrum.min()),
        "cond_S": float(spectrum.max() / spectrum.min()),
        "min_uu_Mplus": float(np.min(1.0 / np.cosh(np.abs(q_values)))),
        "l2_partial": float(np.sqrt(np.sum(coeffs**2))),
        "l1_partial": float(np.sum(coeffs)),
        "holds_def13": bool(holds),
    }


def truncation_study(q_schedule, sizes, base_frame_recipe="orthonormal", parallel=False):
    """Frame metrics along growing truncations of a block-diagonal Q

    For every size m the space is C^(2m) with p = q = m, Q couples the k-th
    basis vector of H+ with the k-th of H- through q_schedule[k], and the
    transported family is exp(-Q/2) applied to the recipe vectors. An unbounded
    schedule makes the bounds of the finite families drift the way the
    infinite-dimensional family fails to be a Riesz basis.

    Parameters
    ----------
    q_schedule : list of float
        nondecreasing block parameters, at least max(sizes) of them
    sizes : list of int
        sizes m to evaluate
    base_frame_recipe : str, optional
        orthonormal or graded, by default orthonormal
    parallel : bool, optional
        evaluate the sizes with dask on threads, by default False

    Returns
    -------
    xr.Dataset
        dimension size; every variable carries a metric attribute. Rows whose
        transported family fails the Def13 certificate have holds_def13 False
        and nan Def13 bounds
    """
    q_schedule = np.asarray(q_schedule, dtype=float).ravel()
    sizes = [int(m) for m in sizes]
    if base_frame_recipe not in FRAME_RECIPES:
        raise ValueError(f"recipe must be one of {list(FRAME_RECIPES)}, got {base_frame_recipe}")
    if not sizes or min(sizes) < 1:
        raise ValueError("sizes must be positive integers")
    if q_schedule.size < max(sizes):
        raise ValueError(f"q_schedule has {q_schedule.size} entries, sizes need {max(sizes)}")
    if np.any(np.diff(q_schedule) < 0):
        raise ValueError("q_schedule must be nondecreasing")

    if parallel:
        tasks = [dask.delayed(_study_row)(q_schedule[:m], base_frame_recipe) for m in sizes]
        rows = list(dask.compute(*tasks, scheduler="threads"))
    else:
        rows = [
            _study_row(q_schedule[:m], base_frame_recipe)
            for m in tqdm(sizes, desc="truncation study", disable=None)
        ]

    data_vars = {}
    for name, (metric, description) in _STUDY_METRICS.items():
        data_vars[name] = (
            "size",
            np.array([row[name] for row in rows]),
            {"metric": metric, "description": description},
        )
    return xr.Dataset(
        data_vars,
        coords={"size": np.array(sizes)},
        attrs={
            "q_schedule": q_schedule.tolist(),
            "recipe": base_frame_recipe,
        },
    )


def study_to_frame(study: xr.Dataset) -> pd.DataFrame:
    """the study as a table in the CSV column order"""
    frame = study.to_dataframe().reset_index()
    return frame[STUDY_COLUMNS]

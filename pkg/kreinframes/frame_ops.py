"""
Author: kreinframes contributors
Date: 2026-10-18 10:05:52
LastEditTime: 2026-10-18 10:05:52
Description: Frames in a Krein space: frame operators, certification and reconstruction
FilePath: /kreinframes/kreinframes/frame_ops.py
"""

import collections
import logging
import warnings

import numpy as np
import pandas as pd
import scipy.linalg

from kreinframes import DEFINITIONS, RECONSTRUCTION_FORMULAS, TOLERANCES
from kreinframes.kf_utils import (
    DecompositionError,
    DegenerateFamilyError,
    DimensionError,
    NeutralVectorError,
    NotTightError,
    SingularFrameOperatorError,
    numerical_rank,
    relative_error,
)
from kreinframes.krein_core import (
    SignatureSpace,
    Subspace,
    as_kvector,
    classify_subspace,
    j_adjoint,
    j_orthogonal_complement,
)

__all__ = [
    "FrameFamily",
    "OperatorBundle",
    "FrameCertificate",
    "split_family",
    "analysis",
    "synthesis",
    "frame_operator_S",
    "frame_operator_S1",
    "compute_jm_and_c",
    "tilde_frame_operator",
    "oblique_projections",
    "decomposed_inner",
    "build_operator_bundle",
    "certify",
    "reconstruct",
    "applicable_formulas",
    "dual_family",
    "biorthogonal_gamma",
    "hilbert_frame_bounds",
    "tilde_sign_witness",
    "exactness_profile",
    "residual_table",
    "MSG_MINUS_TRIVIAL",
    "MSG_PLUS_TRIVIAL",
]

LOGGER = logging.getLogger(__name__)

MSG_MINUS_TRIVIAL = "M₋ trivial"
MSG_PLUS_TRIVIAL = "M₊ trivial"


class FrameFamily:
    """An ordered family f_1..f_m of a Krein space, split by the sign of [f_n, f_n]

    Members with [f_n, f_n] >= 0 go to N+ (neutral members included, they are
    counted in `neutral`), the others to N-. M+ and M- are the spans of the two
    parts. Indices are 0-based. Instances are read-only.

    Parameters
    ----------
    space : SignatureSpace
    vectors : array-like
        m x dim matrix, one frame vector per row
    neutral_tol : float, optional
        |[f_n, f_n]| <= neutral_tol * ||f_n||^2 counts as neutral
    """

    def __init__(self, space: SignatureSpace, vectors, neutral_tol=None):
        neutral_tol = TOLERANCES["neutral_tol"] if neutral_tol is None else neutral_tol
        vectors = np.array(vectors, dtype=complex)
        if vectors.ndim == 1:
            vectors = vectors.reshape(1, -1)
        if vectors.ndim != 2 or vectors.shape[0] == 0:
            raise DimensionError("a frame family needs at least one vector")
        if vectors.shape[1] != space.dim:
            raise DimensionError(
                f"frame vectors have length {vectors.shape[1]}, the space has dim {space.dim}"
            )
        vectors.setflags(write=False)
        self.space = space
        self.vectors = vectors

        diag = np.einsum("ni,ij,nj->n", vectors.conj(), space.J, vectors).real
        norms_sq = np.einsum("ni,ni->n", vectors.conj(), vectors).real
        neutral = np.abs(diag) <= neutral_tol * norms_sq
        self.gram_diagonal = diag
        self.neutral = np.flatnonzero(neutral)
        self.sigma = np.where(neutral | (diag >= 0), 1, -1)
        self.n_plus = np.flatnonzero(self.sigma > 0)
        self.n_minus = np.flatnonzero(self.sigma < 0)
        self.M_plus = Subspace.span(vectors[self.n_plus], dim=space.dim)
        self.M_minus = Subspace.span(vectors[self.n_minus], dim=space.dim)

    @property
    def m(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def F(self) -> np.ndarray:
        """dim x m synthesis matrix, the frame vectors as columns"""
        return self.vectors.T

    def __len__(self):
        return self.m

    def __repr__(self):
        return (
            f"FrameFamily(m={self.m}, dim={self.dim}, |N+|={self.n_plus.size}, "
            f"|N-|={self.n_minus.size}, neutral={self.neutral.size})"
        )


class OperatorBundle:
    """The matrices S, S1, S_tilde, C and J_M of a family whose spans give a direct sum

    Parameters
    ----------
    S, S1, S_tilde, C, J_M : np.ndarray
        dim x dim matrices
    """

    def __init__(self, S, S1, S_tilde, C, J_M):
        self.S = S
        self.S1 = S1
        self.S_tilde = S_tilde
        self.C = C
        self.J_M = J_M

    def residuals(self, space: SignatureSpace) -> dict:
        """residuals of the identities tying the operators together"""
        eye = np.eye(space.dim)
        jjm = space.J @ self.J_M
        return collections.OrderedDict(
            [
                ("jm_involution", float(np.linalg.norm(self.J_M @ self.J_M - eye, 2))),
                ("s1_equals_s_c", relative_error(self.S @ self.C, self.S1)),
                ("jm_s_equals_s_tilde", relative_error(self.J_M @ self.S, self.S_tilde)),
                (
                    "s_jm_adjoint_equals_s_tilde",
                    relative_error(self.S @ j_adjoint(space, self.J_M), self.S_tilde),
                ),
                ("maximality", float(np.linalg.norm(jjm - jjm.conj().T, 2))),
            ]
        )


class FrameCertificate:
    """Verdicts of certify for one family

    Bounds are (A, B) tuples, (nan, nan) when they could not be computed.
    `holds`, `bounds` and `tight` refer to the definition that was requested.
    """

    def __init__(
        self,
        definition,
        is_frame_def11,
        bounds_def11,
        is_jframe_def13,
        bounds_def13,
        is_jframe_def12,
        tight,
        j_orthogonal,
        exact,
        diagnostics,
        messages,
    ):
        self.definition = definition
        self.is_frame_def11 = bool(is_frame_def11)
        self.bounds_def11 = tuple(float(b) for b in bounds_def11)
        self.is_jframe_def13 = bool(is_jframe_def13)
        self.bounds_def13 = tuple(float(b) for b in bounds_def13)
        self.is_jframe_def12 = bool(is_jframe_def12)
        self.tight = bool(tight)
        self.j_orthogonal = bool(j_orthogonal)
        self.exact = bool(exact)
        self.diagnostics = diagnostics
        self.messages = list(messages)

    @property
    def holds(self) -> bool:
        return {
            "def11": self.is_frame_def11,
            "def12": self.is_jframe_def12,
            "def13": self.is_jframe_def13,
        }[self.definition]

    @property
    def bounds(self) -> tuple:
        if self.definition == "def11":
            return self.bounds_def11
        return self.bounds_def13

    def to_report(self) -> collections.OrderedDict:
        """the certificate as an ordered mapping, ready for a YAML report"""
        report = collections.OrderedDict()
        report["definition"] = self.definition
        report["holds"] = self.holds
        report["A"] = self.bounds[0]
        report["B"] = self.bounds[1]
        report["is_frame_def11"] = self.is_frame_def11
        report["bounds_def11"] = list(self.bounds_def11)
        report["is_jframe_def13"] = self.is_jframe_def13
        report["bounds_def13"] = list(self.bounds_def13)
        report["is_jframe_def12"] = self.is_jframe_def12
        report["tight"] = self.tight
        report["j_orthogonal"] = self.j_orthogonal
        report["exact"] = self.exact
        report["messages"] = list(self.messages)
        report["diagnostics"] = collections.OrderedDict(self.diagnostics)
        return report

    def __repr__(self):
        return (
            f"FrameCertificate({self.definition}: holds={self.holds}, "
            f"bounds={self.bounds}, tight={self.tight})"
        )


def split_family(space: SignatureSpace, vectors) -> FrameFamily:
    """Split a vector family into N+ / N- and compute M+ / M-

    Raises
    ------
    DegenerateFamilyError
        when all vectors are zero
    """
    family = FrameFamily(space, vectors)
    if family.M_plus.k == 0 and family.M_minus.k == 0:
        raise DegenerateFamilyError("the family spans only the zero vector")
    if family.neutral.size:
        LOGGER.info("%d neutral members assigned to N+", family.neutral.size)
    return family


def analysis(family: FrameFamily, f) -> np.ndarray:
    """the indefinite coefficients ([f, f_1], ..., [f, f_m])"""
    f = as_kvector(family.space, f)
    return family.vectors.conj() @ (family.space.J @ f)


def synthesis(family: FrameFamily, c) -> np.ndarray:
    """sum_n c_n f_n"""
    c = np.asarray(c, dtype=complex)
    if c.ndim != 1 or c.shape[0] != family.m:
        raise DimensionError(f"expected {family.m} coefficients, got shape {c.shape}")
    return family.F @ c


def frame_operator_S(family: FrameFamily) -> np.ndarray:
    """S f = sum_n [f, f_n] f_n, i.e. S = F F* J"""
    F = family.F
    return F @ F.conj().T @ family.space.J


def tilde_frame_operator(family: FrameFamily) -> np.ndarray:
    """S_tilde f = sum_n sigma_n [f, f_n] f_n"""
    F = family.F
    return (F * family.sigma[None, :]) @ F.conj().T @ family.space.J


def oblique_projections(space: SignatureSpace, M_plus: Subspace, M_minus: Subspace):
    """Projections onto M+ along M- and onto M- along M+

    Parameters
    ----------
    space : SignatureSpace
    M_plus, M_minus : Subspace
        either may be zero-dimensional

    Returns
    -------
    tuple
        (P_M_plus, P_M_minus), two dim x dim matrices summing to I

    Raises
    ------
    DecompositionError
        when M+ and M- do not form a direct sum equal to the whole space
    """
    dim = space.dim
    k_plus, k_minus = M_plus.k, M_minus.k
    if k_plus + k_minus != dim:
        raise DecompositionError(
            f"dim M+ + dim M- = {k_plus} + {k_minus} differs from dim = {dim}"
        )
    W = np.hstack([M_plus.orthonormal_basis, M_minus.orthonormal_basis])
    if numerical_rank(W, TOLERANCES["rank_tol"]) < dim:
        raise DecompositionError("M+ and M- intersect nontrivially")
    W_inv = np.linalg.inv(W)
    P_plus = W[:, :k_plus] @ W_inv[:k_plus]
    P_minus = W[:, k_plus:] @ W_inv[k_plus:]
    return P_plus, P_minus


def compute_jm_and_c(family: FrameFamily):
    """J_M = P_M+ - P_M- and C = (J_M + J_M^+) / 2

    Returns
    -------
    tuple
        (J_M, C)
    """
    space = family.space
    P_plus, P_minus = oblique_projections(space, family.M_plus, family.M_minus)
    J_M = P_plus - P_minus
    C = 0.5 * (J_M + j_adjoint(space, J_M))
    return J_M, C


def _decomposed_form(space, P_plus, P_minus):
    """matrix G with (f, g)_1 = g* G f for (f, g)_1 = [f+, g+] - [f-, g-]"""
    J = space.J
    return P_plus.conj().T @ J @ P_plus - P_minus.conj().T @ J @ P_minus


def decomposed_inner(family: FrameFamily, f, g) -> complex:
    """(f, g)_1 = [f_M+, g_M+] - [f_M-, g_M-] from the decomposition along M+ and M-"""
    space = family.space
    f = as_kvector(space, f)
    g = as_kvector(space, g)
    P_plus, P_minus = oblique_projections(space, family.M_plus, family.M_minus)
    return complex(np.vdot(g, _decomposed_form(space, P_plus, P_minus) @ f))


def frame_operator_S1(family: FrameFamily) -> np.ndarray:
    """S1 f = sum_n (f, f_n)_1 f_n, the frame operator for the positive product (., .)_1"""
    return build_operator_bundle(family).S1


def build_operator_bundle(family: FrameFamily) -> OperatorBundle:
    """All operators of a family whose spans form a direct sum equal to the space

    S1 is assembled from the decomposed product directly, so the identity
    S1 = S C is a genuine check and not a definition.
    """
    space = family.space
    P_plus, P_minus = oblique_projections(space, family.M_plus, family.M_minus)
    J_M = P_plus - P_minus
    C = 0.5 * (J_M + j_adjoint(space, J_M))
    F = family.F
    S = frame_operator_S(family)
    S1 = F @ F.conj().T @ _decomposed_form(space, P_plus, P_minus)
    S_tilde = tilde_frame_operator(family)
    bundle = OperatorBundle(S, S1, S_tilde, C, J_M)
    LOGGER.debug("operator bundle residuals: %s", dict(bundle.residuals(space)))
    return bundle


def _is_invertible(mat, invert_tol) -> bool:
    sv = scipy.linalg.svdvals(mat)
    return sv[0] > 0.0 and sv[-1] >= invert_tol * sv[0]


def _cond(mat) -> float:
    sv = scipy.linalg.svdvals(mat)
    if sv[-1] == 0.0:
        return float("inf")
    return float(sv[0] / sv[-1])


def _side_bounds(space, vectors, M, sign):
    """extremal eigenvalues of sum |[f, f_n]|^2 against +-[f, f] on M"""
    basis = M.orthonormal_basis
    gram = sign * (basis.conj().T @ space.J @ basis)
    gram = 0.5 * (gram + gram.conj().T)
    X = basis.conj().T @ space.J @ vectors.T
    energy = X @ X.conj().T
    energy = 0.5 * (energy + energy.conj().T)
    lam = scipy.linalg.eigh(energy, gram, eigvals_only=True)
    return float(lam[0]), float(lam[-1])


def hilbert_frame_bounds(vectors) -> tuple:
    """conventional frame bounds of a family (rows) in C^dim with J = I"""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=complex))
    frame = vectors.T @ vectors.conj()
    lam = scipy.linalg.eigvalsh(0.5 * (frame + frame.conj().T))
    return float(lam[0]), float(lam[-1])


def _is_tight(bounds, tight_tol) -> bool:
    lower, upper = bounds
    if not np.isfinite(lower) or upper <= 0.0:
        return False
    return abs(upper - lower) <= tight_tol * upper


def certify(family: FrameFamily, defn="def13", tight_tol=None) -> FrameCertificate:
    """Check a family against the three frame definitions

    Def11 is the conventional inequality with indefinite coefficients,
    A ||f||^2 <= sum |[f, f_n]|^2 <= B ||f||^2; its bounds are the extremal
    eigenvalues of the Hermitian matrix sum (J f_n)(J f_n)*.

    Def13 asks M+ (M-) to be maximal positive (negative) and
    A |[f, f]| <= sum_{N+-} |[f, f_n]|^2 <= B |[f, f]| on M+-. The bounds come
    from the generalized eigenproblems of these two forms on orthonormal bases
    of M+ and M-, one common pair (A, B) for both signs.

    Def12 additionally needs M+ and M- to form a direct sum equal to the space.

    Failures are verdicts with messages, never exceptions.

    Parameters
    ----------
    family : FrameFamily
    defn : str, optional
        def11, def12 or def13; selects `holds`, `bounds` and `tight`, by default def13
    tight_tol : float, optional
        relative tolerance for A = B, by default tight_tol from the settings

    Returns
    -------
    FrameCertificate
    """
    if defn not in DEFINITIONS:
        raise ValueError(f"definition must be one of {DEFINITIONS}, got {defn}")
    tight_tol = TOLERANCES["tight_tol"] if tight_tol is None else tight_tol
    rank_tol = TOLERANCES["rank_tol"]
    space = family.space
    J = space.J
    F = family.F
    messages = []
    diagnostics = collections.OrderedDict()
    diagnostics["dim"] = space.dim
    diagnostics["m"] = family.m
    diagnostics["p"] = space.p
    diagnostics["q"] = space.q

    # conventional frame with indefinite coefficients
    JF = J @ F
    frame11 = JF @ JF.conj().T
    lam11 = scipy.linalg.eigvalsh(0.5 * (frame11 + frame11.conj().T))
    bounds11 = (max(float(lam11[0]), 0.0), float(lam11[-1]))
    is_frame11 = bounds11[1] > 0.0 and bounds11[0] >= rank_tol * bounds11[1]

    # J-frame on the maximal definite spans
    sides_ok = True
    rejected = False
    side_bounds = []
    for label, sign, members, M, target_dim in (
        ("plus", 1, family.n_plus, family.M_plus, space.p),
        ("minus", -1, family.n_minus, family.M_minus, space.q),
    ):
        kind_name = "positive" if sign > 0 else "negative"
        diagnostics[f"dim_M_{label}"] = M.k
        if M.k == 0:
            diagnostics[f"kind_{label}"] = "zero"
            diagnostics[f"margin_{label}"] = 0.0
            diagnostics[f"M_{label}_trivial"] = True
            if target_dim > 0:
                sides_ok = False
                messages.append(MSG_PLUS_TRIVIAL if sign > 0 else MSG_MINUS_TRIVIAL)
            continue
        diagnostics[f"M_{label}_trivial"] = False
        cls = classify_subspace(space, M)
        diagnostics[f"kind_{label}"] = cls.kind
        diagnostics[f"margin_{label}"] = cls.margin
        if cls.kind != kind_name or cls.degenerate:
            sides_ok = False
            rejected = True
            messages.append(f"M_{label} is not {kind_name} definite ({cls.kind})")
            continue
        if M.k != target_dim:
            sides_ok = False
            messages.append(f"M_{label} is not maximal (dim {M.k}, needed {target_dim})")
        lower, upper = _side_bounds(space, family.vectors[members], M, sign)
        diagnostics[f"A_{label}"] = lower
        diagnostics[f"B_{label}"] = upper
        side_bounds.append((lower, upper))

    if family.n_minus.size == 0 or family.n_plus.size == 0:
        diagnostics["one_sided"] = True
    else:
        diagnostics["one_sided"] = False
    # a rejected side leaves no common pair of bounds
    if side_bounds and not rejected:
        bounds13 = (min(b[0] for b in side_bounds), max(b[1] for b in side_bounds))
    else:
        bounds13 = (float("nan"), float("nan"))
    is_jframe13 = sides_ok and bool(side_bounds) and bounds13[0] >= rank_tol * bounds13[1]

    direct_sum = True
    try:
        bundle = build_operator_bundle(family)
    except DecompositionError as e:
        direct_sum = False
        bundle = None
        messages.append(f"no direct sum: {e}")
    diagnostics["direct_sum"] = direct_sum
    if bundle is not None:
        for name, value in bundle.residuals(space).items():
            diagnostics[f"residual_{name}"] = value
    is_jframe12 = is_jframe13 and direct_sum

    gram = F.conj().T @ J @ F
    offdiag = gram - np.diag(np.diag(gram))
    scale = float(np.max(np.einsum("in,in->n", F.conj(), F).real))
    offdiag_max = float(np.max(np.abs(offdiag))) if family.m > 1 else 0.0
    j_orthogonal = offdiag_max <= TOLERANCES["orth_tol"] * scale
    diagnostics["offdiag_gram_max"] = offdiag_max
    abs_diag = np.abs(family.gram_diagonal)
    diagnostics["jbound_min"] = float(abs_diag.min())
    diagnostics["jbound_max"] = float(abs_diag.max())
    diagnostics["neutral_members"] = int(family.neutral.size)
    if family.neutral.size:
        messages.append(f"{family.neutral.size} neutral members counted in N+")

    exact = family.m == space.dim and numerical_rank(F, rank_tol) == space.dim
    S = frame_operator_S(family)
    diagnostics["cond_S"] = _cond(S)
    diagnostics["S_invertible"] = _is_invertible(S, TOLERANCES["invert_tol"])

    tight11 = is_frame11 and _is_tight(bounds11, tight_tol)
    tight13 = is_jframe13 and _is_tight(bounds13, tight_tol)
    diagnostics["tight_def11"] = tight11
    diagnostics["tight_def13"] = tight13
    tight = tight11 if defn == "def11" else tight13

    if not is_frame11:
        messages.append("not a frame in the sense of Def11")
    certificate = FrameCertificate(
        defn,
        is_frame11,
        bounds11,
        is_jframe13,
        bounds13,
        is_jframe12,
        tight,
        j_orthogonal,
        exact,
        diagnostics,
        messages,
    )
    LOGGER.debug("%r", certificate)
    return certificate


def _check_invertible(mat, name):
    if not _is_invertible(mat, TOLERANCES["invert_tol"]):
        raise SingularFrameOperatorError(f"{name} is not invertible (cond = {_cond(mat):.3e})")


def reconstruct(family: FrameFamily, f, formula="eq33_dual") -> np.ndarray:
    """Rebuild f from its frame coefficients

    Parameters
    ----------
    family : FrameFamily
    f : array-like
        vector to rebuild
    formula : str
        eq33_dual          f = sum [f, S^-1 f_n] f_n
        eq33_coeff         f = sum [f, f_n] S^-1 f_n
        eq36_hilbert1      f = sum (f, S1^-1 f_n)_1 f_n
        tight              f = 1/(2A) sum [(J_M + sigma_n) f, f_n] f_n, A-tight J-frames only
        tilde_dual         f = sum sigma_n [f, f_n] S_tilde^-1 f_n
        eq43_biorthogonal  f = sum (f, gamma_n) f_n, J-orthogonal exact families only

    Returns
    -------
    np.ndarray
        the reconstructed vector

    Raises
    ------
    SingularFrameOperatorError
        when the operator the formula inverts is singular
    NotTightError
        for the tight formula on a family without equal Def13 bounds
    """
    if formula not in RECONSTRUCTION_FORMULAS:
        raise ValueError(f"formula must be one of {RECONSTRUCTION_FORMULAS}, got {formula}")
    space = family.space
    f = as_kvector(space, f)
    J = space.J
    F = family.F
    coeffs = analysis(family, f)

    if formula in ("eq33_dual", "eq33_coeff"):
        S = frame_operator_S(family)
        _check_invertible(S, "S")
        duals = np.linalg.solve(S, F)
        if formula == "eq33_dual":
            return F @ (duals.conj().T @ (J @ f))
        return duals @ coeffs
    if formula == "eq36_hilbert1":
        bundle = build_operator_bundle(family)
        _check_invertible(bundle.S1, "S1")
        duals = np.linalg.solve(bundle.S1, F)
        return F @ (duals.conj().T @ (J @ (bundle.C @ f)))
    if formula == "tight":
        cert = certify(family, "def13")
        if not cert.tight:
            raise NotTightError(f"Def13 bounds {cert.bounds_def13} are not equal")
        J_M, _ = compute_jm_and_c(family)
        lower = cert.bounds_def13[0]
        weighted = F.conj().T @ (J @ (J_M @ f)) + family.sigma * coeffs
        return F @ weighted / (2.0 * lower)
    if formula == "tilde_dual":
        S_tilde = tilde_frame_operator(family)
        _check_invertible(S_tilde, "S_tilde")
        duals = np.linalg.solve(S_tilde, F)
        return duals @ (family.sigma * coeffs)
    # eq43_biorthogonal
    gammas = biorthogonal_gamma(family)
    return F @ (gammas.conj() @ f)


def applicable_formulas(family: FrameFamily, certificate=None) -> list:
    """the reconstruction formulas whose preconditions the family meets"""
    certificate = certify(family, "def13") if certificate is None else certificate
    formulas = []
    if certificate.diagnostics["S_invertible"]:
        formulas += ["eq33_dual", "eq33_coeff", "tilde_dual"]
    if certificate.diagnostics["direct_sum"] and certificate.is_jframe_def13:
        formulas.append("eq36_hilbert1")
    if certificate.tight:
        formulas.append("tight")
    if certificate.j_orthogonal and certificate.exact and family.neutral.size == 0:
        formulas.append("eq43_biorthogonal")
    return [name for name in RECONSTRUCTION_FORMULAS if name in formulas]


def dual_family(family: FrameFamily) -> np.ndarray:
    """the dual vectors S^-1 f_n as rows"""
    S = frame_operator_S(family)
    _check_invertible(S, "S")
    return np.linalg.solve(S, family.F).T


def biorthogonal_gamma(family: FrameFamily) -> np.ndarray:
    """gamma_n = J f_n / [f_n, f_n] as rows, so that (f_k, gamma_n) = delta_kn

    Raises
    ------
    NeutralVectorError
        when some [f_n, f_n] vanishes
    """
    if family.neutral.size:
        raise NeutralVectorError(
            f"members {family.neutral.tolist()} are neutral, [f_n, f_n] = 0"
        )
    F = family.F
    gram = F.conj().T @ family.space.J @ F
    offdiag = gram - np.diag(np.diag(gram))
    scale = float(np.max(np.einsum("in,in->n", F.conj(), F).real))
    if family.m > 1 and np.max(np.abs(offdiag)) > TOLERANCES["orth_tol"] * scale:
        warnings.warn(
            "family is not J-orthogonal, gamma_n are not biorthogonal to f_n", stacklevel=2
        )
    return (family.space.J @ F / family.gram_diagonal[None, :]).T


def tilde_sign_witness(family: FrameFamily):
    """A vector of M+^[perp] on which [S_tilde f, f] is most negative

    Returns
    -------
    tuple or None
        (f, [S_tilde f, f]), None when N- is empty or M+^[perp] = {0}
    """
    if family.n_minus.size == 0:
        return None
    space = family.space
    complement = j_orthogonal_complement(space, family.M_plus)
    if complement.k == 0:
        return None
    S_tilde = tilde_frame_operator(family)
    basis = complement.orthonormal_basis
    values = np.einsum("ik,ij,jk->k", basis.conj(), space.J @ S_tilde, basis).real
    best = int(np.argmin(values))
    return basis[:, best], float(values[best])


def exactness_profile(family: FrameFamily) -> np.ndarray:
    """Def11 lower bound of the family with member n removed, for every n"""
    profile = np.zeros(family.m)
    JF = family.space.J @ family.F
    for n in range(family.m):
        keep = np.delete(JF, n, axis=1)
        frame = keep @ keep.conj().T
        profile[n] = max(float(scipy.linalg.eigvalsh(0.5 * (frame + frame.conj().T))[0]), 0.0)
    return profile


def residual_table(family: FrameFamily, probes, formulas=None) -> pd.DataFrame:
    """Relative reconstruction residuals ||out - f|| / ||f|| of probe vectors

    Parameters
    ----------
    family : FrameFamily
    probes : array-like
        probe vectors as rows
    formulas : list, optional
        by default every formula the family qualifies for

    Returns
    -------
    pd.DataFrame
        columns formula, vector_id, residual
    """
    probes = np.atleast_2d(np.asarray(probes, dtype=complex))
    if formulas is None:
        formulas = applicable_formulas(family)
    rows = []
    for formula in formulas:
        for vector_id, probe in enumerate(probes):
            out = reconstruct(family, probe, formula)
            rows.append((formula, vector_id, relative_error(out, probe)))
    return pd.DataFrame(rows, columns=["formula", "vector_id", "residual"])

"""
Author: kreinframes contributors
Date: 2026-10-18 09:41:17
LastEditTime: 2026-10-18 09:41:17
Description: Finite-dimensional Krein spaces and their subspaces
FilePath: /kreinframes/kreinframes/krein_core.py
"""

import logging

import numpy as np
import scipy.linalg

from kreinframes import TOLERANCES
from kreinframes.kf_utils import (
    ClassificationError,
    DimensionError,
    EmptySubspaceError,
    column_basis,
    numerical_rank,
)

__all__ = [
    "SignatureSpace",
    "Subspace",
    "SubspaceClass",
    "Restriction",
    "as_kvector",
    "indefinite_inner",
    "hilbert_inner",
    "classify_subspace",
    "j_orthogonal_complement",
    "is_maximal_definite",
    "j_adjoint",
    "hypermaximal_neutral_subspace",
    "is_hypermaximal_neutral",
    "restrict_to_subspace",
]

LOGGER = logging.getLogger(__name__)

SUBSPACE_KINDS = ["positive", "negative", "neutral", "indefinite"]


def _readonly(arr):
    arr = np.array(arr)
    arr.setflags(write=False)
    return arr


class SignatureSpace:
    """A finite-dimensional Krein space C^dim with fundamental symmetry J

    J is kept as a dense real symmetric involution (it need not be diagonal);
    it is diagonalized once and the orthonormal eigenbases of H+ (eigenvalue +1)
    and H- (eigenvalue -1) are cached. Instances are read-only.

    Parameters
    ----------
    J : array-like
        dim x dim real symmetric matrix with J @ J = I
    tol : float, optional
        relative tolerance for the symmetry/involution checks, by default tol_sym
    basis_plus, basis_minus : array-like, optional
        eigenbases of H+ and H- when the caller already knows them;
        they are checked, not trusted
    """

    def __init__(self, J, tol=None, basis_plus=None, basis_minus=None):
        tol = TOLERANCES["tol_sym"] if tol is None else tol
        J = np.asarray(J)
        if J.ndim != 2 or J.shape[0] != J.shape[1] or J.shape[0] == 0:
            raise DimensionError(f"J must be a nonempty square matrix, got shape {J.shape}")
        if np.iscomplexobj(J):
            if np.max(np.abs(J.imag)) > tol:
                raise ValueError("J must be a real matrix")
            J = J.real
        J = np.asarray(J, dtype=float)
        dim = J.shape[0]
        eye = np.eye(dim)
        scale = max(1.0, np.linalg.norm(J))
        if np.linalg.norm(J - J.T) > tol * scale:
            raise ValueError("J is not symmetric")
        if np.linalg.norm(J @ J - eye) > tol * scale:
            raise ValueError("J is not an involution (J @ J != I)")

        if basis_plus is None or basis_minus is None:
            evals, evecs = scipy.linalg.eigh(J)
            if np.max(np.abs(np.abs(evals) - 1.0)) > np.sqrt(tol):
                raise ValueError("eigenvalues of J must be +1 or -1")
            basis_minus = evecs[:, evals < 0]
            basis_plus = evecs[:, evals > 0]
        else:
            basis_plus = np.asarray(basis_plus, dtype=float)
            basis_minus = np.asarray(basis_minus, dtype=float)
            if basis_plus.ndim != 2 or basis_minus.ndim != 2:
                raise DimensionError("eigenbases of J must be given as matrices")
            basis = np.hstack([basis_plus, basis_minus])
            if basis.shape[1] != dim or np.linalg.norm(basis.T @ basis - eye) > tol * dim:
                raise ValueError("given eigenbases of J are not orthonormal")
            if np.linalg.norm(J @ basis_plus - basis_plus) > tol * dim or np.linalg.norm(
                J @ basis_minus + basis_minus
            ) > tol * dim:
                raise ValueError("given eigenbases do not belong to the eigenvalues +1/-1 of J")

        self._J = _readonly(J)
        self._basis_plus = _readonly(basis_plus)
        self._basis_minus = _readonly(basis_minus)
        LOGGER.debug("signature space of dim %d with p=%d, q=%d", dim, self.p, self.q)

    @classmethod
    def from_signature(cls, p, q):
        """J = diag(I_p, -I_q) with the standard basis vectors as eigenbases"""
        if p < 0 or q < 0 or p + q == 0:
            raise DimensionError(f"invalid signature ({p}, {q})")
        eye = np.eye(p + q)
        return cls(
            np.diag([1.0] * p + [-1.0] * q),
            basis_plus=eye[:, :p],
            basis_minus=eye[:, p:],
        )

    @property
    def J(self) -> np.ndarray:
        return self._J

    @property
    def dim(self) -> int:
        return self._J.shape[0]

    @property
    def p(self) -> int:
        """dimension of H+"""
        return self._basis_plus.shape[1]

    @property
    def q(self) -> int:
        """dimension of H-"""
        return self._basis_minus.shape[1]

    @property
    def basis_plus(self) -> np.ndarray:
        return self._basis_plus

    @property
    def basis_minus(self) -> np.ndarray:
        return self._basis_minus

    @property
    def P_plus(self) -> np.ndarray:
        """orthogonal projection onto H+"""
        return self._basis_plus @ self._basis_plus.T

    @property
    def P_minus(self) -> np.ndarray:
        """orthogonal projection onto H-"""
        return self._basis_minus @ self._basis_minus.T

    def __repr__(self):
        return f"SignatureSpace(dim={self.dim}, p={self.p}, q={self.q})"


class Subspace:
    """A subspace of C^dim given by a basis with linearly independent columns

    A zero-dimensional subspace (k = 0) is a valid value, it stands for {0}.

    Parameters
    ----------
    basis : array-like
        dim x k matrix (a 1-d array is one column)
    rank_tol : float, optional
        the smallest singular value must be at least rank_tol times the largest
    """

    def __init__(self, basis, rank_tol=None):
        self.rank_tol = TOLERANCES["rank_tol"] if rank_tol is None else rank_tol
        basis = np.array(basis, dtype=complex)
        if basis.ndim == 1:
            basis = basis.reshape(-1, 1)
        if basis.ndim != 2 or basis.shape[0] == 0:
            raise DimensionError(f"a basis must be a dim x k matrix, got shape {basis.shape}")
        k = basis.shape[1]
        if k > 0 and numerical_rank(basis, self.rank_tol) < k:
            raise DimensionError("basis columns are linearly dependent")
        self._basis = _readonly(basis)
        self._orthonormal = None

    @classmethod
    def span(cls, vectors, dim=None, rank_tol=None):
        """the span of a (possibly redundant) family given as rows

        Parameters
        ----------
        vectors : array-like
            m x dim matrix, one vector per row; m may be 0 when dim is given
        dim : int, optional
            ambient dimension, needed only for an empty family
        """
        rank_tol = TOLERANCES["rank_tol"] if rank_tol is None else rank_tol
        vectors = np.asarray(vectors, dtype=complex)
        if vectors.size == 0:
            if dim is None:
                raise DimensionError("the ambient dimension of an empty family is unknown")
            return cls.zero(dim)
        vectors = np.atleast_2d(vectors)
        return cls(column_basis(vectors.T, rank_tol), rank_tol=rank_tol)

    @classmethod
    def zero(cls, dim):
        return cls(np.zeros((dim, 0), dtype=complex))

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def dim(self) -> int:
        """ambient dimension"""
        return self._basis.shape[0]

    @property
    def k(self) -> int:
        """dimension of the subspace"""
        return self._basis.shape[1]

    @property
    def orthonormal_basis(self) -> np.ndarray:
        if self._orthonormal is None:
            if self.k == 0:
                self._orthonormal = self._basis
            else:
                q, _ = np.linalg.qr(self._basis)
                self._orthonormal = _readonly(q)
        return self._orthonormal

    @property
    def projector(self) -> np.ndarray:
        """orthogonal projection onto the subspace"""
        u = self.orthonormal_basis
        return u @ u.conj().T

    def __repr__(self):
        return f"Subspace(k={self.k}, dim={self.dim})"


class SubspaceClass:
    """Result of classify_subspace

    Parameters
    ----------
    kind : str
        one of positive, negative, neutral, indefinite
    margin : float
        uniform-definiteness constant alpha with +-[f,f] >= alpha (f,f); 0 unless definite
    degenerate : bool
        True for a semi-definite subspace (kind positive/negative but some [f,f] = 0)
    eigenvalues : np.ndarray
        eigenvalues of the pencil (B* J B, B* B)
    """

    def __init__(self, kind, margin, degenerate=False, eigenvalues=None):
        if kind not in SUBSPACE_KINDS:
            raise ValueError(f"kind must be one of {SUBSPACE_KINDS}")
        self.kind = kind
        self.margin = float(margin)
        self.degenerate = bool(degenerate)
        self.eigenvalues = np.zeros(0) if eigenvalues is None else np.asarray(eigenvalues)

    @property
    def is_definite(self) -> bool:
        return self.kind in ("positive", "negative") and not self.degenerate

    @property
    def is_uniformly_definite(self) -> bool:
        # in finite dimension every definite subspace is uniformly definite
        return self.is_definite and self.margin > 0.0

    def __repr__(self):
        flag = ", degenerate" if self.degenerate else ""
        return f"SubspaceClass({self.kind}, margin={self.margin:.6g}{flag})"


class Restriction:
    """A nondegenerate subspace L viewed as a Krein space of its own

    Attributes
    ----------
    space : SignatureSpace
        the Krein space of dimension dim L with J = diag(I, -I)
    coordinates : np.ndarray
        k x dim matrix mapping vectors of L to coordinates in `space`
    lift : np.ndarray
        dim x k matrix mapping coordinates back into L
    """

    def __init__(self, space, coordinates, lift):
        self.space = space
        self.coordinates = _readonly(coordinates)
        self.lift = _readonly(lift)

    def to_coordinates(self, vectors) -> np.ndarray:
        """coordinates of vectors of L (rows in, rows out)"""
        vectors = np.atleast_2d(np.asarray(vectors, dtype=complex))
        return (self.coordinates @ vectors.T).T


def as_kvector(space: SignatureSpace, f) -> np.ndarray:
    """f as a complex vector of the space, checking its length"""
    f = np.asarray(f, dtype=complex)
    if f.ndim != 1 or f.shape[0] != space.dim:
        raise DimensionError(f"expected a vector of length {space.dim}, got shape {f.shape}")
    return f


def indefinite_inner(space: SignatureSpace, f, g) -> complex:
    """[f, g] = (Jf, g), linear in f and conjugate-linear in g"""
    f = as_kvector(space, f)
    g = as_kvector(space, g)
    return complex(np.vdot(g, space.J @ f))


def hilbert_inner(f, g) -> complex:
    """(f, g), linear in f"""
    return complex(np.vdot(np.asarray(g, dtype=complex), np.asarray(f, dtype=complex)))


def classify_subspace(space: SignatureSpace, L: Subspace, neutral_tol=None) -> SubspaceClass:
    """Decide whether L is positive, negative, neutral or indefinite

    The signs of [f, f] on L are the signs of the eigenvalues of the Hermitian
    pencil G_J x = lambda G x with G_J = B* J B and G = B* B. An orthonormal basis
    is used, so the eigenvalues lie in [-1, 1]. |lambda| below neutral_tol * ||G_J||
    counts as zero, with a floor at the rounding level of the pencil so that a
    neutral subspace, whose G_J is itself rounding noise, stays neutral.

    Parameters
    ----------
    space : SignatureSpace
    L : Subspace
    neutral_tol : float, optional
        by default neutral_tol from the settings

    Returns
    -------
    SubspaceClass
    """
    neutral_tol = TOLERANCES["neutral_tol"] if neutral_tol is None else neutral_tol
    if L.dim != space.dim:
        raise DimensionError(f"subspace of C^{L.dim} in a space of dim {space.dim}")
    if L.k == 0:
        raise EmptySubspaceError("cannot classify the zero subspace")
    basis = L.orthonormal_basis
    gram_j = basis.conj().T @ space.J @ basis
    gram_j = 0.5 * (gram_j + gram_j.conj().T)
    gram = basis.conj().T @ basis
    gram = 0.5 * (gram + gram.conj().T)
    lam = scipy.linalg.eigh(gram_j, gram, eigvals_only=True)
    rounding = 10 * space.dim * np.finfo(float).eps * np.linalg.norm(gram, 2)
    threshold = max(neutral_tol * np.linalg.norm(gram_j, 2), rounding)
    positive = lam > threshold
    negative = lam < -threshold
    zero = ~(positive | negative)

    if zero.all():
        return SubspaceClass("neutral", 0.0, eigenvalues=lam)
    if positive.any() and negative.any():
        return SubspaceClass("indefinite", 0.0, eigenvalues=lam)
    kind = "positive" if positive.any() else "negative"
    if zero.any():
        LOGGER.debug("%s subspace with %d neutral directions", kind, int(zero.sum()))
        return SubspaceClass(kind, 0.0, degenerate=True, eigenvalues=lam)
    margin = lam.min() if kind == "positive" else -lam.max()
    return SubspaceClass(kind, margin, eigenvalues=lam)


def j_orthogonal_complement(space: SignatureSpace, L: Subspace, rank_tol=None) -> Subspace:
    """L^[perp] = {v : [f, v] = 0 for all f in L}

    Since [f, v] = (Jf, v), this is the ordinary orthogonal complement of JL.
    """
    rank_tol = L.rank_tol if rank_tol is None else rank_tol
    if L.dim != space.dim:
        raise DimensionError(f"subspace of C^{L.dim} in a space of dim {space.dim}")
    if L.k == 0:
        return Subspace(np.eye(space.dim, dtype=complex))
    jb = space.J @ L.orthonormal_basis
    null = scipy.linalg.null_space(jb.conj().T, rcond=rank_tol)
    return Subspace(null, rank_tol=rank_tol)


def is_maximal_definite(space: SignatureSpace, L: Subspace, neutral_tol=None) -> bool:
    """In finite dimension a definite L is maximal iff dim L = p (positive) or q (negative)"""
    cls = classify_subspace(space, L, neutral_tol)
    if not cls.is_definite:
        raise ClassificationError(f"L is not definite: {cls}")
    if cls.kind == "positive":
        return L.k == space.p
    return L.k == space.q


def j_adjoint(space: SignatureSpace, A) -> np.ndarray:
    """A+ = J A* J, so that [Af, g] = [f, A+ g]"""
    A = np.asarray(A)
    if A.shape != (space.dim, space.dim):
        raise DimensionError(f"expected a {space.dim}x{space.dim} matrix, got shape {A.shape}")
    return space.J @ A.conj().T @ space.J


def hypermaximal_neutral_subspace(space: SignatureSpace) -> Subspace:
    """span{(u+_i + u-_i)/sqrt(2)}, a hypermaximal neutral subspace when p = q"""
    if space.p != space.q:
        raise ClassificationError(
            f"hypermaximal neutral subspaces need p = q, got p={space.p}, q={space.q}"
        )
    return Subspace((space.basis_plus + space.basis_minus) / np.sqrt(2.0))


def is_hypermaximal_neutral(space: SignatureSpace, L: Subspace, tol=None) -> bool:
    """Check dim L = p = q, L neutral and H = L (+) JL"""
    tol = TOLERANCES["orth_tol"] if tol is None else tol
    if L.k == 0 or not (L.k == space.p == space.q):
        return False
    basis = L.orthonormal_basis
    # neutrality of L is the same as L being orthogonal to JL
    if np.linalg.norm(basis.conj().T @ space.J @ basis, 2) > tol:
        return False
    return numerical_rank(np.hstack([basis, space.J @ basis]), L.rank_tol) == space.dim


def restrict_to_subspace(space: SignatureSpace, L: Subspace, neutral_tol=None) -> Restriction:
    """L with the restricted indefinite product, as a SignatureSpace of dim k

    With the restricted Gram matrix G = U* J U = V diag(lam) V* of an orthonormal
    basis U of L, the coordinates y = |lam|^(1/2) V* U* f turn [f, g] into
    y_g* diag(sign lam) y_f. Positive directions come first.

    Raises
    ------
    ClassificationError
        when L contains a nonzero vector J-orthogonal to all of L
    """
    neutral_tol = TOLERANCES["neutral_tol"] if neutral_tol is None else neutral_tol
    if L.k == 0:
        raise EmptySubspaceError("cannot restrict to the zero subspace")
    basis = L.orthonormal_basis
    gram_j = basis.conj().T @ space.J @ basis
    gram_j = 0.5 * (gram_j + gram_j.conj().T)
    lam, vecs = scipy.linalg.eigh(gram_j)
    if np.min(np.abs(lam)) <= neutral_tol:
        raise ClassificationError("the indefinite product is degenerate on this subspace")
    order = np.argsort(-np.sign(lam), kind="stable")
    lam = lam[order]
    vecs = vecs[:, order]
    root = np.sqrt(np.abs(lam))
    coordinates = (root[:, None] * vecs.conj().T) @ basis.conj().T
    lift = basis @ vecs / root[None, :]
    n_pos = int(np.count_nonzero(lam > 0))
    eye = np.eye(L.k)
    restricted = SignatureSpace(
        np.diag(np.sign(lam)), basis_plus=eye[:, :n_pos], basis_minus=eye[:, n_pos:]
    )
    return Restriction(restricted, coordinates, lift)

"""
Author: kreinframes contributors
Date: 2026-10-18 12:48:09
LastEditTime: 2026-10-18 12:48:09
Description: the Krein space L2(-a, a) with Jf(x) = f(-x) and Q = multiplication
    by x, discretized by a symmetric Gauss-Legendre rule
FilePath: /kreinframes/kreinframes/l2_model.py
"""

import collections
import logging
import os
import warnings

import numpy as np
import pandas as pd
import xarray as xr

from kreinframes import BASIS_KINDS, CACHE_DIR, TOLERANCES
from kreinframes.frame_ops import FrameFamily, certify, split_family
from kreinframes.frame_source import FrameSource
from kreinframes.kf_utils import GridError
from kreinframes.krein_core import (
    Restriction,
    SignatureSpace,
    Subspace,
    restrict_to_subspace,
)
from kreinframes.q_frames import QOperator

__all__ = [
    "QuadratureGrid",
    "FunctionBasis",
    "L2Example",
    "l2_example_arg",
    "build_grid",
    "discretize_space",
    "sample",
    "indefinite_integral",
    "build_basis",
    "default_decay",
    "no_decay",
    "build_example_frame",
    "example_q_operator",
]

LOGGER = logging.getLogger(__name__)

l2_example_arg = {
    "a": 1.0,
    "n_nodes": 64,
    "basis": "legendre_even_odd",
    "m": 8,
    # multiply the basis by exp(-x/2); False gives the Q = 0 limit
    "decay": True,
}


class QuadratureGrid:
    """A quadrature rule on (-a, a) whose nodes are closed under x -> -x

    Nodes are ascending, so node i and node n-1-i are mirror images.

    Raises
    ------
    GridError
        for an asymmetric rule or weights that do not sum to 2a
    """

    def __init__(self, a, nodes, weights):
        nodes = np.asarray(nodes, dtype=float)
        weights = np.asarray(weights, dtype=float)
        if a <= 0:
            raise GridError(f"half-width must be positive, got {a}")
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size < 2:
            raise GridError("nodes and weights must be 1-d arrays of equal length >= 2")
        if np.any(np.diff(nodes) <= 0):
            raise GridError("nodes must be strictly increasing")
        if np.any(np.abs(nodes) >= a) or np.any(weights <= 0):
            raise GridError("nodes must lie in (-a, a) with positive weights")
        if np.any(nodes != -nodes[::-1]) or np.any(weights != weights[::-1]):
            raise GridError("grid is not symmetric under x -> -x")
        if abs(weights.sum() - 2 * a) > 1e-12 * 2 * a:
            raise GridError(f"weights sum to {weights.sum()}, expected {2 * a}")
        self.a = float(a)
        self.nodes = nodes
        self.weights = weights
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def n_nodes(self) -> int:
        return self.nodes.size

    @property
    def mirror(self) -> np.ndarray:
        """index of -x_i for every node i"""
        return np.arange(self.n_nodes)[::-1]

    def integrate(self, values):
        """sum_i w_i values_i, along the first axis"""
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


class FunctionBasis:
    """m basis functions sampled on the nodes of a grid

    Attributes
    ----------
    kind : str
    values : np.ndarray
        n_nodes x m raw function values
    parity : list
        "even" or "odd" per function
    norms_sq : np.ndarray
        closed-form squared L2 norms
    """

    def __init__(self, kind, values, parity, norms_sq):
        self.kind = kind
        self.values = np.asarray(values, dtype=float)
        self.parity = list(parity)
        self.norms_sq = np.asarray(norms_sq, dtype=float)

    @property
    def count(self) -> int:
        return self.values.shape[1]

    @property
    def signs(self) -> np.ndarray:
        return np.array([1 if p == "even" else -1 for p in self.parity])


def build_grid(a=1.0, n_nodes=64) -> QuadratureGrid:
    """symmetric Gauss-Legendre rule with n_nodes points on (-a, a)

    Parameters
    ----------
    a : float, optional
        half-width, by default 1.0
    n_nodes : int, optional
        even number of nodes, by default 64

    Returns
    -------
    QuadratureGrid
    """
    if n_nodes < 2:
        raise GridError(f"a grid needs at least 2 nodes, got {n_nodes}")
    if n_nodes % 2:
        raise GridError(f"n_nodes must be even, got {n_nodes}")
    if a <= 0:
        raise GridError(f"half-width must be positive, got {a}")
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    # leggauss is symmetric only up to rounding
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return QuadratureGrid(a, a * x, a * w)


def discretize_space(grid: QuadratureGrid) -> SignatureSpace:
    """The Krein space of sampled functions in weight-square-root coordinates

    A function f is stored as sqrt(w_i) f(x_i), so the discrete (., .) is the
    coordinate inner product and J is the permutation i -> n-1-i.
    H+ holds the even functions, H- the odd ones, p = q = n_nodes / 2.
    """
    n = grid.n_nodes
    mirror = grid.mirror
    J = np.zeros((n, n))
    J[np.arange(n), mirror] = 1.0
    half = n // 2
    basis_plus = np.zeros((n, half))
    basis_minus = np.zeros((n, half))
    for i in range(half):
        basis_plus[i, i] = basis_plus[mirror[i], i] = 1.0 / np.sqrt(2.0)
        basis_minus[i, i] = -1.0 / np.sqrt(2.0)
        basis_minus[mirror[i], i] = 1.0 / np.sqrt(2.0)
    return SignatureSpace(J, basis_plus=basis_plus, basis_minus=basis_minus)


def sample(grid: QuadratureGrid, fn) -> np.ndarray:
    """coordinates sqrt(w_i) fn(x_i) of a function"""
    return np.sqrt(grid.weights) * np.asarray(fn(grid.nodes), dtype=complex)


def indefinite_integral(grid: QuadratureGrid, f_values, g_values) -> complex:
    """quadrature of f(-x) conj(g(x)) from the raw values of f and g on the nodes"""
    f_values = np.asarray(f_values, dtype=complex)
    g_values = np.asarray(g_values, dtype=complex)
    return complex(grid.integrate(f_values[grid.mirror] * g_values.conj()))


def _legendre_basis(grid, m):
    a = grid.a
    values = np.zeros((grid.n_nodes, m))
    for n in range(m):
        poly = np.polynomial.legendre.Legendre.basis(n, [-a, a], [-1, 1])
        values[:, n] = poly(grid.nodes)
    parity = ["even" if n % 2 == 0 else "odd" for n in range(m)]
    norms_sq = np.array([2 * a / (2 * n + 1) for n in range(m)])
    return values, parity, norms_sq


def _fourier_basis(grid, m):
    # 1, cos(pi x/a), sin(pi x/a), cos(2 pi x/a), ...
    a = grid.a
    x = grid.nodes
    values = np.zeros((grid.n_nodes, m))
    parity = []
    norms_sq = np.zeros(m)
    for n in range(m):
        freq = (n + 1) // 2
        if n == 0:
            values[:, n] = 1.0
            parity.append("even")
            norms_sq[n] = 2 * a
        elif n % 2:
            values[:, n] = np.cos(freq * np.pi * x / a)
            parity.append("even")
            norms_sq[n] = a
        else:
            values[:, n] = np.sin(freq * np.pi * x / a)
            parity.append("odd")
            norms_sq[n] = a
    return values, parity, norms_sq


def build_basis(grid: QuadratureGrid, kind="legendre_even_odd", m=8) -> FunctionBasis:
    """Orthogonal even/odd functions on (-a, a) sampled on the grid

    Parameters
    ----------
    grid : QuadratureGrid
    kind : str, optional
        legendre_even_odd (P_n(x/a)) or fourier (1, cos, sin), by default legendre_even_odd
    m : int, optional
        number of functions, by default 8

    Returns
    -------
    FunctionBasis
    """
    if kind not in BASIS_KINDS:
        raise ValueError(f"basis kind must be one of {BASIS_KINDS}, got {kind}")
    if m < 1 or m > grid.n_nodes:
        raise ValueError(f"m must be between 1 and n_nodes = {grid.n_nodes}, got {m}")
    if kind == "legendre_even_odd":
        values, parity, norms_sq = _legendre_basis(grid, m)
    else:
        values, parity, norms_sq = _fourier_basis(grid, m)
    basis = FunctionBasis(kind, values, parity, norms_sq)

    gram = grid.integrate(values[:, :, None] * values[:, None, :])
    offdiag = np.max(np.abs(gram - np.diag(np.diag(gram)))) if m > 1 else 0.0
    if offdiag > TOLERANCES["quad_tol"] * norms_sq.max():
        warnings.warn(
            f"{kind} basis is orthogonal only to {offdiag:.2e} on {grid.n_nodes} nodes",
            stacklevel=2,
        )
    return basis


def default_decay(x):
    return np.exp(-x / 2)


def no_decay(x):
    return np.ones_like(x)


def build_example_frame(grid: QuadratureGrid, basis: FunctionBasis, decay=default_decay):
    """The family f_n = decay(x) g_n in the discretized space

    Parameters
    ----------
    grid : QuadratureGrid
    basis : FunctionBasis
    decay : callable, optional
        strictly positive factor, by default exp(-x/2)

    Returns
    -------
    FrameFamily
    """
    factor = np.asarray(decay(grid.nodes), dtype=float)
    if np.any(factor <= 0):
        raise ValueError("decay must be strictly positive on the grid")
    if (
        decay is not no_decay
        and basis.kind == "legendre_even_odd"
        and grid.n_nodes < 4 * (basis.count - 1)
    ):
        warnings.warn(
            f"{grid.n_nodes} nodes are few for degree {basis.count - 1} with a decay factor",
            stacklevel=2,
        )
    samples = np.sqrt(grid.weights)[:, None] * factor[:, None] * basis.values
    return split_family(discretize_space(grid), samples.T)


def example_q_operator(grid: QuadratureGrid) -> QOperator:
    """Q f(x) = x f(x), diagonal in the nodal coordinates"""
    return QOperator(discretize_space(grid), np.diag(grid.nodes))


class L2Example(FrameSource):
    """The J-orthogonal family exp(-x/2) g_n of L2(-a, a) as a frame source

    The nodal space has dimension n_nodes while the family has m members, so it
    is certified on its own span (see compressed).
    """

    def __init__(self, arg: dict = l2_example_arg):
        super().__init__()
        unknown = set(arg) - set(l2_example_arg)
        if unknown:
            raise ValueError(f"unknown l2 example keys {sorted(unknown)}, use {list(l2_example_arg)}")
        arg = {**l2_example_arg, **arg}
        self.a = float(arg["a"])
        self.kind = arg["basis"]
        self.m = int(arg["m"])
        self.with_decay = bool(arg["decay"])
        self.grid = build_grid(self.a, int(arg["n_nodes"]))
        self.space = discretize_space(self.grid)
        self.basis = build_basis(self.grid, self.kind, self.m)
        self.decay = default_decay if self.with_decay else no_decay
        self.family = build_example_frame(self.grid, self.basis, self.decay)
        self.source_description = self.set_source_describe()

    def get_name(self):
        return "L2_EXAMPLE"

    def set_source_describe(self) -> collections.OrderedDict:
        return collections.OrderedDict(
            L2_HALF_WIDTH=self.a,
            L2_N_NODES=self.grid.n_nodes,
            L2_BASIS=self.kind,
            L2_M=self.m,
            L2_DECAY="exp(-x/2)" if self.with_decay else "1",
        )

    def read_space(self) -> SignatureSpace:
        return self.space

    def read_vectors(self) -> np.ndarray:
        return np.array(self.family.vectors)

    def read_family(self) -> FrameFamily:
        return self.family

    def compressed(self):
        """(Restriction, family in the coordinates of the span of the family)"""
        restriction = restrict_to_subspace(self.space, Subspace.span(self.family.vectors))
        coords = restriction.to_coordinates(self.family.vectors)
        return restriction, split_family(restriction.space, coords)

    def certify(self, defn="def13"):
        _, family = self.compressed()
        return certify(family, defn)

    def gram_table(self) -> pd.DataFrame:
        """indefinite Gram matrix against the closed form sgn[g_n, g_n] ||g_n||^2 delta_nm"""
        F = self.family.F
        gram = F.conj().T @ self.space.J @ F
        closed = self.basis.signs * self.basis.norms_sq
        offdiag = np.abs(gram - np.diag(np.diag(gram)))
        return pd.DataFrame(
            collections.OrderedDict(
                n=np.arange(self.m),
                parity=self.basis.parity,
                closed_form=closed,
                gram_diag=np.diag(gram).real,
                diag_error=np.abs(np.diag(gram) - closed),
                offdiag_max=offdiag.max(axis=1),
            )
        )

    def to_xarray(self) -> xr.Dataset:
        """basis values and frame coordinates over node x function"""
        frame = np.asarray(self.family.vectors).T
        return xr.Dataset(
            {
                "weight": ("node", self.grid.weights),
                "basis": (("node", "function"), self.basis.values),
                "frame_real": (("node", "function"), frame.real),
                "frame_imag": (("node", "function"), frame.imag),
            },
            coords={
                "node": self.grid.nodes,
                "function": np.arange(self.m),
                "parity": ("function", np.array(self.basis.parity)),
            },
            attrs={
                "a": self.a,
                "basis_kind": self.kind,
                "decay": int(self.with_decay),
                "coordinates": "sqrt(weight) * decay(x) * g_n(x)",
            },
        )

    def cache_xrdataset(self, path=None):
        """write to_xarray() as netcdf, by default into the cache directory"""
        if path is None:
            filename = f"l2_example_{self.kind}_m{self.m}_n{self.grid.n_nodes}.nc"
            path = CACHE_DIR.joinpath(filename)
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        self.to_xarray().to_netcdf(path)
        LOGGER.info("L2 example samples written to %s", path)
        return path

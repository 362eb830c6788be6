"""
Author: kreinframes contributors
Date: 2026-10-18 14:20:05
LastEditTime: 2026-10-18 14:20:05
Description: shared fixtures and random instance generators
FilePath: /kreinframes/tests/conftest.py
"""

import numpy as np
import pytest

from kreinframes import QOperator, SignatureSpace, split_family


def random_signature_space(rng, p, q):
    """a Krein space whose J = O diag(I_p, -I_q) O^T is not diagonal"""
    dim = p + q
    orth, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    J = orth @ np.diag([1.0] * p + [-1.0] * q) @ orth.T
    return SignatureSpace(0.5 * (J + J.T))


def _contraction(rng, rows, cols, size):
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols), dtype=complex)
    mat = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return mat * (size / np.linalg.norm(mat, 2))


def random_jframe(rng, space, extra=3, contraction=0.6):
    """A random J-frame: M+ = graph of a contraction H+ -> H-, M- likewise

    Each side gets dim(H+-) + extra members, random combinations of a basis of M+-.
    """
    p, q = space.p, space.q
    up, um = space.basis_plus, space.basis_minus
    m_plus = up + um @ _contraction(rng, q, p, contraction)
    m_minus = um + up @ _contraction(rng, p, q, contraction)
    vectors = []
    for basis, k in ((m_plus, p), (m_minus, q)):
        if k == 0:
            continue
        count = k + extra
        coeffs = rng.standard_normal((k, count)) + 1j * rng.standard_normal((k, count))
        vectors.append((basis @ coeffs).T)
    vectors = np.vstack(vectors)
    return split_family(space, vectors[rng.permutation(vectors.shape[0])])


def random_q(rng, space, norm=3.0):
    """a random Q anticommuting with J with ||Q|| = norm"""
    block = _contraction(rng, space.q, space.p, norm)
    return QOperator.from_block(space, block)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


@pytest.fixture
def space_2():
    """J = diag(1, -1)"""
    return SignatureSpace.from_signature(1, 1)


@pytest.fixture
def euclid_3():
    """J = I on C^3"""
    return SignatureSpace.from_signature(3, 0)

"""
Author: kreinframes contributors
Date: 2026-10-18 15:42:08
LastEditTime: 2026-10-18 15:42:08
Description: tests for q_frames
FilePath: /kreinframes/tests/test_q_frames.py
"""

import logging

import numpy as np
import pytest
import scipy.linalg

from kreinframes import (
    STUDY_COLUMNS,
    BlockAlignmentError,
    ClassificationError,
    DimensionError,
    IncompleteImageError,
    QOperator,
    SignatureSpace,
    SubspaceMismatchError,
    build_operator_bundle,
    certify,
    classify_subspace,
    decomposed_inner,
    energetic_norm,
    hilbert_frame_bounds,
    indefinite_inner,
    inner_product_1,
    matrix_function,
    operator_angles,
    principal_angles,
    q_from_family,
    random_vectors,
    relative_error,
    split_family,
    study_to_frame,
    subspaces_from_q,
    tan_angle_residual,
    transport_to_hilbert_frame,
    transport_to_jframe,
    truncation_study,
)
from tests.conftest import random_q, random_signature_space


def _block_basis(space):
    """the eigenvectors of J as rows, H+ first"""
    return np.vstack([space.basis_plus.T, space.basis_minus.T]).astype(complex)


def test_from_parameters_two_by_two(space_2):
    q = QOperator.from_parameters(space_2, [1.5])
    np.testing.assert_allclose(q.Q, [[0, 1.5], [1.5, 0]], atol=1e-15)
    np.testing.assert_allclose(q.eigenvalues, [-1.5, 1.5])
    assert q.norm == pytest.approx(1.5)
    with pytest.raises(DimensionError):
        QOperator.from_parameters(space_2, [1.0, 2.0])


def test_qoperator_validation(space_2):
    with pytest.raises(ValueError):
        QOperator(space_2, [[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        QOperator(space_2, [[1, 0], [0, 1]])
    with pytest.raises(DimensionError):
        QOperator(space_2, np.zeros((3, 3)))
    with pytest.raises(DimensionError):
        QOperator.from_block(space_2, np.zeros((2, 2)))


def test_one_sided_space_has_zero_q(euclid_3):
    q = QOperator(euclid_3, np.zeros((3, 3)))
    assert q.norm == 0.0
    np.testing.assert_allclose(matrix_function(q, "exp_half"), np.eye(3), atol=1e-15)


def test_matrix_functions_match_expm(rng):
    space = random_signature_space(rng, 3, 2)
    q = random_q(rng, space, norm=3.0)
    assert q.norm == pytest.approx(3.0)
    Q = q.Q
    np.testing.assert_allclose(matrix_function(q, "exp_half"), scipy.linalg.expm(Q / 2), atol=1e-11)
    np.testing.assert_allclose(matrix_function(q, "exp_minus_half"), scipy.linalg.expm(-Q / 2), atol=1e-11)
    np.testing.assert_allclose(matrix_function(q, "exp_full"), scipy.linalg.expm(Q), atol=1e-10)
    np.testing.assert_allclose(matrix_function(q, "cosh_half"), scipy.linalg.coshm(Q / 2), atol=1e-11)
    np.testing.assert_allclose(matrix_function(q, "sinh_half"), scipy.linalg.sinhm(Q / 2), atol=1e-11)
    np.testing.assert_allclose(matrix_function(q, "tanh_half"), scipy.linalg.tanhm(Q / 2), atol=1e-11)
    with pytest.raises(ValueError):
        matrix_function(q, "log")


def test_hyperbolic_identities(rng):
    space = random_signature_space(rng, 2, 4)
    q = random_q(rng, space, norm=2.5)
    J = space.J
    half = matrix_function(q, "exp_half")
    minus_half = matrix_function(q, "exp_minus_half")
    full = matrix_function(q, "exp_full")
    eye = np.eye(space.dim)
    np.testing.assert_allclose(half @ minus_half, eye, atol=1e-11)
    np.testing.assert_allclose(half @ half, full, atol=1e-10)
    np.testing.assert_allclose(J @ full @ J, np.linalg.inv(full), atol=1e-10)
    # exp(Q/2) is J-unitary up to J: exp(-Q/2) J exp(-Q/2) = J
    np.testing.assert_allclose(minus_half @ J @ minus_half, J, atol=1e-11)
    cosh = matrix_function(q, "cosh_half")
    sinh = matrix_function(q, "sinh_half")
    np.testing.assert_allclose(cosh @ cosh - sinh @ sinh, eye, atol=1e-10)
    np.testing.assert_allclose(J @ cosh, cosh @ J, atol=1e-12)
    np.testing.assert_allclose(J @ sinh, -sinh @ J, atol=1e-12)


def test_exp_overflow(space_2):
    q = QOperator.from_parameters(space_2, [2000.0])
    with pytest.raises(OverflowError):
        matrix_function(q, "exp_full")
    with pytest.raises(OverflowError):
        matrix_function(q, "exp_half")
    # tanh(Q/2) of a Q with ||Q|| = 1000 is still representable
    small = QOperator.from_parameters(space_2, [1000.0])
    np.testing.assert_allclose(matrix_function(small, "tanh_half"), [[0, 1], [1, 0]], atol=1e-12)


@pytest.mark.parametrize("qval", [0.5, 1.0, 2.0])
def test_two_by_two_closed_forms(space_2, qval):
    q = QOperator.from_parameters(space_2, [qval])
    family = transport_to_jframe(q, np.eye(2))
    h, s = np.cosh(qval / 2), np.sinh(qval / 2)
    np.testing.assert_allclose(family.vectors, [[h, -s], [-s, h]], atol=1e-14)
    np.testing.assert_allclose(family.gram_diagonal, [1.0, -1.0], atol=1e-12)

    cert = certify(family)
    assert cert.is_jframe_def13 and cert.is_jframe_def12
    assert cert.bounds_def13 == pytest.approx((1.0, 1.0))
    assert cert.tight and cert.j_orthogonal and cert.exact
    assert cert.bounds_def11[0] == pytest.approx(np.exp(-qval), rel=1e-10)
    assert cert.bounds_def11[1] == pytest.approx(np.exp(qval), rel=1e-10)
    assert cert.diagnostics["cond_S"] == pytest.approx(np.exp(2 * qval), rel=1e-10)
    assert cert.diagnostics["margin_plus"] == pytest.approx(1.0 / np.cosh(qval), rel=1e-10)

    report = operator_angles(q)
    expected = np.arctan(np.tanh(qval / 2))
    assert report.theta_plus == pytest.approx([expected], rel=1e-10)
    assert report.theta_minus == pytest.approx([expected], rel=1e-10)
    assert report.max_angle == pytest.approx(expected)
    assert energetic_norm(q, [1, 0]) == pytest.approx(1.0 + np.cosh(qval), rel=1e-12)


def test_subspaces_from_q(rng):
    space = random_signature_space(rng, 3, 2)
    q = random_q(rng, space, norm=3.0)
    m_plus, m_minus = subspaces_from_q(q)
    assert (m_plus.k, m_minus.k) == (3, 2)
    assert classify_subspace(space, m_plus).kind == "positive"
    assert classify_subspace(space, m_minus).kind == "negative"
    pairing = m_minus.basis.conj().T @ space.J @ m_plus.basis
    assert np.abs(pairing).max() <= 1e-10 * np.linalg.norm(m_plus.basis) * np.linalg.norm(m_minus.basis)
    # M+- = exp(-Q/2) H+-
    image = matrix_function(q, "exp_minus_half") @ space.basis_plus
    assert principal_angles(image, m_plus.basis).max() <= 1e-10


def test_tan_angle_residual(rng):
    for _ in range(50):
        p, qdim = (int(k) for k in rng.integers(1, 6, size=2))
        space = random_signature_space(rng, p, qdim)
        q = random_q(rng, space, norm=2.0)
        assert tan_angle_residual(q) <= 1e-10
        assert operator_angles(q).max_angle == pytest.approx(np.arctan(np.tanh(1.0)), rel=1e-9)


def test_zero_q_leaves_frames_alone(rng):
    space = random_signature_space(rng, 2, 2)
    q = QOperator.from_block(space, np.zeros((2, 2)))
    g = _block_basis(space)
    family = transport_to_jframe(q, g)
    np.testing.assert_allclose(family.vectors, g, atol=1e-14)
    assert operator_angles(q).max_angle <= 1e-12


def _round_trip_case(rng):
    p, qdim = (int(k) for k in rng.integers(1, 5, size=2))
    space = random_signature_space(rng, p, qdim)
    q = random_q(rng, space, norm=rng.uniform(0.1, 3.0))
    basis = _block_basis(space)
    weights = rng.uniform(0.5, 2.0, size=space.dim)
    # redundant: every basis vector twice, with two weights
    g = np.vstack([basis * weights[:, None], basis])
    family = transport_to_jframe(q, g)
    cert = certify(family)
    assert cert.is_jframe_def13
    assert cert.diagnostics["cond_S"] <= 1e4

    back = transport_to_hilbert_frame(family, q)
    np.testing.assert_allclose(back, g, atol=1e-10)
    lower, upper = hilbert_frame_bounds(g)
    assert cert.bounds_def13[0] == pytest.approx(lower, rel=1e-9)
    assert cert.bounds_def13[1] == pytest.approx(upper, rel=1e-9)
    for n, vec in enumerate(g):
        moved = indefinite_inner(space, family.vectors[n], family.vectors[n])
        assert abs(moved - indefinite_inner(space, vec, vec)) <= 1e-10


def test_transport_round_trip(rng):
    """Def13 bounds after exp(-Q/2) equal the Hilbert bounds before, on 50 random pairs"""
    for _ in range(50):
        _round_trip_case(rng)


def test_transport_errors(rng):
    space = random_signature_space(rng, 2, 2)
    q = random_q(rng, space, norm=1.0)
    mixed = (space.basis_plus[:, 0] + space.basis_minus[:, 0]).reshape(1, -1)
    with pytest.raises(BlockAlignmentError):
        transport_to_jframe(q, mixed)
    only_plus = space.basis_plus.T
    with pytest.raises(IncompleteImageError):
        transport_to_jframe(q, only_plus)
    family = transport_to_jframe(q, only_plus, require_complete=False)
    assert family.n_minus.size == 0
    with pytest.raises(DimensionError):
        transport_to_jframe(q, np.ones((2, 3)))


def test_transport_to_hilbert_frame_mismatch(rng):
    space = random_signature_space(rng, 2, 2)
    q = random_q(rng, space, norm=2.0)
    other = random_q(rng, space, norm=2.0)
    family = transport_to_jframe(q, _block_basis(space))
    with pytest.raises(SubspaceMismatchError):
        transport_to_hilbert_frame(family, other)


def test_q_from_family(rng):
    space = random_signature_space(rng, 2, 3)
    q = random_q(rng, space, norm=2.0)
    family = transport_to_jframe(q, _block_basis(space))
    recovered = q_from_family(family)
    np.testing.assert_allclose(recovered.Q, q.Q, atol=1e-9)
    np.testing.assert_allclose(transport_to_hilbert_frame(family), _block_basis(space), atol=1e-9)

    bundle = build_operator_bundle(family)
    # J-orthogonal spans: C = J_M = J exp(Q) and C^2 = I
    np.testing.assert_allclose(bundle.C, bundle.J_M, atol=1e-10)
    np.testing.assert_allclose(bundle.C @ bundle.C, np.eye(space.dim), atol=1e-9)
    np.testing.assert_allclose(space.J @ bundle.J_M, matrix_function(q, "exp_full"), atol=1e-9)


def test_q_from_family_rejects_oblique(space_2):
    family = split_family(space_2, [[1, 0.4], [0.2, 1]])
    with pytest.raises(ClassificationError):
        q_from_family(family)


def test_inner_product_1(rng):
    space = random_signature_space(rng, 3, 3)
    q = random_q(rng, space, norm=2.0)
    f, g = random_vectors(rng, space.dim, 2)
    expected = indefinite_inner(space, space.J @ matrix_function(q, "exp_full") @ f, g)
    value = inner_product_1(q, f, g)
    assert abs(value - expected) <= 1e-10 * abs(expected)
    family = transport_to_jframe(q, _block_basis(space))
    assert abs(decomposed_inner(family, f, g) - value) <= 1e-9 * abs(value)
    assert inner_product_1(q, f, f).real > 0
    assert abs(inner_product_1(q, f, f).imag) <= 1e-12 * abs(inner_product_1(q, f, f))


def test_energetic_norm(rng):
    space = random_signature_space(rng, 2, 2)
    q = random_q(rng, space, norm=1.5)
    assert energetic_norm(q, np.zeros(4)) == 0.0
    f = random_vectors(rng, 4, 1)[0]
    assert energetic_norm(q, f) == pytest.approx(
        np.vdot(f, f).real + inner_product_1(q, f, f).real, rel=1e-12
    )
    assert energetic_norm(q, 2 * f) == pytest.approx(4 * energetic_norm(q, f), rel=1e-12)


def test_truncation_study_unbounded_schedule():
    sizes = list(range(2, 41))
    schedule = 0.25 * np.arange(1, 41)
    study = truncation_study(schedule, sizes)
    assert list(study["size"].values) == sizes
    np.testing.assert_allclose(study["A_def13"].values, 1.0, rtol=1e-8)
    np.testing.assert_allclose(study["B_def13"].values, 1.0, rtol=1e-8)
    q_max = 0.25 * np.array(sizes)
    np.testing.assert_allclose(study["q_max"].values, q_max)
    np.testing.assert_allclose(study["A_def11"].values, np.exp(-q_max), rtol=1e-6)
    np.testing.assert_allclose(study["min_uu_Mplus"].values, 1.0 / np.cosh(q_max), rtol=1e-6)
    np.testing.assert_allclose(study["cond_S"].values, np.exp(2 * q_max), rtol=1e-6)
    assert np.all(np.diff(study["l2_partial"].values) > 0)
    assert np.all(np.diff(study["A_def11"].values) < 0)
    assert study["A_def13"].attrs["metric"] == "[.,.] on M+- = (.,.)_1"
    assert study["holds_def13"].values.all()
    assert study.attrs["recipe"] == "orthonormal"


def test_truncation_study_integer_schedule(caplog):
    """q_k = k: closed-form columns stay exact, Def13 is flagged once pairs turn neutral"""
    sizes = list(range(2, 41))
    with caplog.at_level(logging.WARNING, logger="kreinframes.q_frames"):
        study = truncation_study(np.arange(1, 41, dtype=float), sizes)
    q_max = np.array(sizes, dtype=float)
    np.testing.assert_allclose(study["A_def11"].values, np.exp(-q_max), rtol=1e-12)
    assert np.all(np.diff(study["A_def11"].values) < 0)
    np.testing.assert_allclose(study["cond_S"].values, np.exp(2 * q_max), rtol=1e-12)
    np.testing.assert_allclose(study["min_uu_Mplus"].values, 1.0 / np.cosh(q_max), rtol=1e-12)

    holds = study["holds_def13"].values
    small = q_max <= 6
    assert holds[small].all()
    np.testing.assert_allclose(study["A_def13"].values[small], 1.0, rtol=1e-8)
    np.testing.assert_allclose(study["B_def13"].values[small], 1.0, rtol=1e-8)
    # sech(q) < neutral_tol from q = 24 on: both members of the pair count as neutral
    large = q_max >= 24
    assert not holds[large].any()
    assert np.isnan(study["A_def13"].values[~holds]).all()
    assert np.isnan(study["B_def13"].values[~holds]).all()
    warned = [
        r.getMessage()
        for r in caplog.records
        if r.name == "kreinframes.q_frames" and r.levelno == logging.WARNING
    ]
    assert any(msg.startswith("size 40 ") for msg in warned)
    assert len(warned) == int((~holds).sum())


def test_truncation_study_graded_recipe():
    sizes = [1, 3, 5]
    study = truncation_study(np.ones(5), sizes, base_frame_recipe="graded")
    m = np.array(sizes)
    np.testing.assert_allclose(study["A_def13"].values, (1 + 1 / m) ** 2, rtol=1e-8)
    np.testing.assert_allclose(study["B_def13"].values, 4.0, rtol=1e-8)


def test_truncation_study_parallel_matches_sequential():
    schedule = 0.25 * np.arange(1, 17)
    sizes = [2, 4, 8, 16]
    sequential = study_to_frame(truncation_study(schedule, sizes))
    parallel = study_to_frame(truncation_study(schedule, sizes, parallel=True))
    assert list(sequential.columns) == STUDY_COLUMNS
    np.testing.assert_allclose(sequential.values, parallel.values, rtol=1e-12)


def test_truncation_study_errors():
    with pytest.raises(ValueError):
        truncation_study([1.0, 0.5], [2])
    with pytest.raises(ValueError):
        truncation_study([1.0], [2])
    with pytest.raises(ValueError):
        truncation_study([1.0, 2.0], [2], base_frame_recipe="random")
    with pytest.raises(ValueError):
        truncation_study([1.0, 2.0], [0])


def test_cross_check_with_relative_error(rng):
    space = random_signature_space(rng, 2, 2)
    q = random_q(rng, space, norm=1.0)
    half = matrix_function(q, "exp_half")
    assert relative_error(half @ half, matrix_function(q, "exp_full")) <= 1e-12

"""State/operator constructors and small-matrix utilities."""

import math

import numpy as np
import pytest

from mdi_sarg04 import linalg
from mdi_sarg04.linalg import (
    basis_ket,
    bell_state,
    filter1,
    filter2,
    kron,
    min_eigenvalue,
    partial_project,
    permute_qubits,
    phi_state,
    projector,
    rotation,
)

COS8 = math.cos(math.pi / 8)
SIN8 = math.sin(math.pi / 8)


class TestBasisKets:
    def test_x_basis_is_computational(self):
        np.testing.assert_allclose(basis_ket("0x"), [1, 0])
        np.testing.assert_allclose(basis_ket("1x"), [0, 1])

    def test_z_from_x_superposition(self):
        np.testing.assert_allclose(
            basis_ket("0z"), (basis_ket("0x") + basis_ket("1x")) / math.sqrt(2)
        )
        np.testing.assert_allclose(
            basis_ket("1z"), (basis_ket("0x") - basis_ket("1x")) / math.sqrt(2)
        )

    def test_orthonormality(self):
        for a, b in (("0x", "1x"), ("0z", "1z")):
            assert abs(np.vdot(basis_ket(a), basis_ket(b))) < 1e-15
        for lbl in ("0x", "1x", "0z", "1z"):
            assert abs(np.linalg.norm(basis_ket(lbl)) - 1) < 1e-15

    def test_unknown_label_rejected(self):
        with pytest.raises(ValueError):
            basis_ket("0y")


class TestSignalStates:
    def test_closed_forms(self):
        np.testing.assert_allclose(phi_state(0), [COS8, SIN8])
        np.testing.assert_allclose(phi_state(1), [COS8, -SIN8])
        np.testing.assert_allclose(phi_state(2), [SIN8, -COS8])
        np.testing.assert_allclose(phi_state(3), [SIN8, COS8])

    def test_neighbor_overlap_is_inv_sqrt2(self):
        assert abs(abs(np.vdot(phi_state(0), phi_state(1))) - 1 / math.sqrt(2)) < 1e-15

    def test_opposite_states_orthogonal(self):
        assert abs(np.vdot(phi_state(0), phi_state(2))) < 1e-15
        assert abs(np.vdot(phi_state(1), phi_state(3))) < 1e-15

    def test_normalized(self):
        for i in range(4):
            assert abs(np.linalg.norm(phi_state(i)) - 1) < 1e-15

    def test_bad_index_rejected(self):
        with pytest.raises(ValueError):
            phi_state(4)


class TestRotation:
    def test_cycles_signal_states(self):
        for i in range(4):
            ov = np.vdot(phi_state((i + 1) % 4), rotation(1) @ phi_state(i))
            assert abs(abs(ov) - 1) < 1e-12

    def test_sign_convention(self):
        np.testing.assert_allclose(rotation(1) @ phi_state(0), phi_state(1), atol=1e-15)

    def test_power_zero_is_identity(self):
        np.testing.assert_allclose(rotation(0), np.eye(2))

    def test_fourth_power_is_minus_identity_ray(self):
        r4 = rotation(1) @ rotation(3)
        assert min(np.abs(r4 - np.eye(2)).max(), np.abs(r4 + np.eye(2)).max()) < 1e-12

    def test_orthogonal(self):
        for k in range(4):
            rk = rotation(k)
            np.testing.assert_allclose(rk @ rk.conj().T, np.eye(2), atol=1e-12)

    def test_bad_power_rejected(self):
        with pytest.raises(ValueError):
            rotation(5)


class TestFilters:
    def test_filter1_diagonal_action(self):
        np.testing.assert_allclose(filter1() @ basis_ket("0x"), COS8 * basis_ket("0x"))
        np.testing.assert_allclose(filter1() @ basis_ket("1x"), SIN8 * basis_ket("1x"))

    def test_filter2_on_psi_plus(self):
        out = filter2() @ bell_state("psi_plus")
        assert abs(np.linalg.norm(out) - 0.5) < 1e-15

    def test_filter2_on_1x0x(self):
        # third term's bra has overlap <psi+|1x0x> = 1/sqrt(2), so the
        # image is cos(pi/8) sin(pi/8) |1x0x>
        out = filter2() @ kron(basis_ket("1x"), basis_ket("0x"))
        expect = COS8 * SIN8 * kron(basis_ket("1x"), basis_ket("0x"))
        np.testing.assert_allclose(out, expect, atol=1e-15)

    def test_contractions(self):
        for f in (filter1(), filter2()):
            m = min_eigenvalue(np.eye(f.shape[0]) - f.conj().T @ f)
            assert m >= -1e-12


class TestBellStates:
    def test_orthogonal(self):
        assert abs(np.vdot(bell_state("psi_minus"), bell_state("psi_plus"))) < 1e-15

    def test_psi_plus_invariant_under_half_turn(self):
        r2 = kron(rotation(2), rotation(2))
        ov = np.vdot(bell_state("psi_plus"), r2 @ bell_state("psi_plus"))
        assert abs(abs(ov) - 1) < 1e-12

    def test_psi_minus_invariant_under_all_rotations(self):
        for k in range(4):
            rk = kron(rotation(k), rotation(k))
            ov = np.vdot(bell_state("psi_minus"), rk @ bell_state("psi_minus"))
            assert abs(abs(ov) - 1) < 1e-12

    def test_bad_label_rejected(self):
        with pytest.raises(ValueError):
            bell_state("phi_minus")


class TestKron:
    def test_identity_factors(self):
        np.testing.assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_vector_layout_matches_indexing(self):
        v = kron(basis_ket("0x"), basis_ket("1x"))
        expect = np.zeros(4)
        expect[1] = 1  # |0x 1x> sits at binary index 01
        np.testing.assert_allclose(v, expect)

    def test_associativity(self):
        a, b, c = phi_state(0), phi_state(1), phi_state(2)
        np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-15)


class TestMinEigenvalue:
    def test_identity(self):
        assert abs(min_eigenvalue(np.eye(4)) - 1) < 1e-12

    def test_diagonal(self):
        assert abs(min_eigenvalue(np.diag([2.0, -3.0]).astype(complex)) + 3) < 1e-12

    def test_rank_one_projector(self):
        assert abs(min_eigenvalue(projector(bell_state("psi_minus")))) < 1e-12

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            min_eigenvalue(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestPartialProject:
    def test_single_qubit_contraction(self):
        v = kron(basis_ket("0x"), basis_ket("1x"))
        out = partial_project(basis_ket("0x"), [0], v)
        np.testing.assert_allclose(out, basis_ket("1x"))

    def test_bell_bra_on_product(self):
        v = kron(basis_ket("0x"), basis_ket("1x"))
        out = partial_project(bell_state("psi_plus"), [0, 1], v)
        assert abs(out[0] - 1 / math.sqrt(2)) < 1e-15

    def test_inconsistent_modes_rejected(self):
        with pytest.raises(ValueError):
            partial_project(basis_ket("0x"), [0, 1], kron(basis_ket("0x"), basis_ket("0x")))


class TestPermuteQubits:
    def test_round_trip_on_product(self):
        v = kron(basis_ket("0x"), basis_ket("1x"), basis_ket("0z"))
        # declare the factors as (c, a, b): sorting moves them to (a, b, c)
        out = permute_qubits(v, ["c", "a", "b"])
        expect = kron(basis_ket("1x"), basis_ket("0z"), basis_ket("0x"))
        np.testing.assert_allclose(out, expect, atol=1e-15)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            permute_qubits(np.zeros(4), ["a", "b", "c"])


class TestDeterminism:
    def test_constructors_bit_reproducible(self):
        assert np.array_equal(phi_state(2), phi_state(2))
        assert np.array_equal(filter2(), filter2())
        assert np.array_equal(rotation(3), rotation(3))

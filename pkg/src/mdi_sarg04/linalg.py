"""Dense complex linear algebra on small qubit spaces.

Every vector and matrix in this package lives in the x-product basis:
|0x> = (1, 0), |1x> = (0, 1), and multi-qubit components are indexed in
tensor (row-major) order of the factors as listed in the constructor call.
All transposes are taken in this basis, which is the basis in which
|phi+> = (|0x 0x> + |1x 1x>)/sqrt(2) is defined, so the ket-transpose
identity (I (x) M)|phi+> = (M^T (x) I)|phi+> holds exactly.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

Complex = NDArray[np.complex128]

HERMITIAN_TOL = 1e-10

# x-basis single-qubit kets
_KET_0X = np.array([1.0, 0.0], dtype=complex)
_KET_1X = np.array([0.0, 1.0], dtype=complex)
_KET_0Z = (_KET_0X + _KET_1X) / np.sqrt(2)
_KET_1Z = (_KET_0X - _KET_1X) / np.sqrt(2)

_BASIS_KETS = {"0x": _KET_0X, "1x": _KET_1X, "0z": _KET_0Z, "1z": _KET_1Z}

_COS8 = np.cos(np.pi / 8)
_SIN8 = np.sin(np.pi / 8)


def basis_ket(label: str) -> Complex:
    """Single-qubit basis ket for label in {0z, 1z, 0x, 1x}."""
    try:
        return _BASIS_KETS[label].copy()
    except KeyError:
        raise ValueError(f"unknown basis label {label!r}") from None


def phi_state(i: int) -> Complex:
    """SARG04 signal state: cos(pi/8)|0x> +/- sin(pi/8)|1x> and the
    sin-leading pair, indexed i = 0..3."""
    if i == 0:
        return _COS8 * _KET_0X + _SIN8 * _KET_1X
    if i == 1:
        return _COS8 * _KET_0X - _SIN8 * _KET_1X
    if i == 2:
        return _SIN8 * _KET_0X - _COS8 * _KET_1X
    if i == 3:
        return _SIN8 * _KET_0X + _COS8 * _KET_1X
    raise ValueError(f"signal-state index must be 0..3, got {i}")


# Real orthogonal quarter-turn satisfying R|phi_i> = +/- |phi_{i+1 mod 4}>.
# The sign convention is fixed by R|phi_0> = |phi_1> exactly.
_R = np.array(
    [
        [np.cos(np.pi / 4), np.sin(np.pi / 4)],
        [-np.sin(np.pi / 4), np.cos(np.pi / 4)],
    ],
    dtype=complex,
)


def rotation(k: int) -> Complex:
    """k-th power of the signal-state cycling rotation, k = 0..3."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"rotation power must be 0..3, got {k}")
    return np.linalg.matrix_power(_R, k)


def filter1(angle: float = np.pi / 8) -> Complex:
    """Single-qubit filter success operator diag(cos a, sin a)."""
    return np.diag([np.cos(angle), np.sin(angle)]).astype(complex)


def filter2(angle: float = np.pi / 8) -> Complex:
    """Two-qubit filter success operator for the two-photon emission part.

    cos^2|0x0x><0x0x| + sin^2|0x0x><1x1x| + sqrt(2) cos sin |1x0x><psi+|,
    on the x (x) x product basis.
    """
    c, s = np.cos(angle), np.sin(angle)
    e = np.eye(4, dtype=complex)
    psi_plus = bell_state("psi_plus")
    return (
        c**2 * np.outer(e[0], e[0])
        + s**2 * np.outer(e[0], e[3])
        + np.sqrt(2) * c * s * np.outer(e[2], psi_plus.conj())
    )


def bell_state(label: str) -> Complex:
    """Two-qubit Bell state in the x-product basis."""
    v = np.zeros(4, dtype=complex)
    if label == "psi_plus":
        v[1] = v[2] = 1 / np.sqrt(2)
    elif label == "psi_minus":
        v[1], v[2] = 1 / np.sqrt(2), -1 / np.sqrt(2)
    elif label == "phi_plus":
        v[0] = v[3] = 1 / np.sqrt(2)
    else:
        raise ValueError(f"unknown Bell-state label {label!r}")
    return v


def kron(*factors: Complex) -> Complex:
    """Tensor product of vectors or matrices in declared order."""
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def projector(v: Complex) -> Complex:
    """Rank-1 projector |v><v| (unnormalized if v is)."""
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def is_hermitian(h: Complex, tol: float = HERMITIAN_TOL) -> bool:
    h = np.asarray(h)
    return bool(np.abs(h - h.conj().T).max() <= tol)


def min_eigenvalue(h: Complex, tol: float = HERMITIAN_TOL) -> float:
    """Smallest eigenvalue of a Hermitian matrix (direct dense solve)."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if not is_hermitian(h, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    return float(np.linalg.eigvalsh(h)[0])


def check_density_operator(rho: Complex, tol: float = 1e-9) -> None:
    """Raise if rho is not Hermitian, unit-trace and PSD within tolerance."""
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho, 1e-12):
        raise ValueError("density operator is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density operator trace {tr} deviates from 1")
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise ValueError("density operator has a negative eigenvalue")


def permute_qubits(v: Complex, order: list) -> Complex:
    """Reorder the tensor factors of a state vector.

    `order` lists the current qubit labels of `v` in tensor order; the
    result has the factors in sorted-label order.
    """
    n = len(order)
    v = np.asarray(v, dtype=complex)
    if v.size != 2**n:
        raise ValueError("state dimension does not match qubit label count")
    perm = [order.index(lab) for lab in sorted(order)]
    return v.reshape((2,) * n).transpose(perm).reshape(-1)


def partial_project(bra: Complex, bra_modes: list[int], state: Complex) -> Complex:
    """Contract <bra| against the designated tensor factors of `state`.

    `bra_modes` are 0-based qubit indices of `state`, matched positionally
    to the tensor factors of `bra`.  The remaining factors keep their
    original relative order; the result is sub-normalized in general.
    """
    state = np.asarray(state, dtype=complex)
    n = int(round(np.log2(state.size)))
    if 2**n != state.size:
        raise ValueError("state length is not a power of two")
    bra = np.asarray(bra, dtype=complex)
    nb = int(round(np.log2(bra.size)))
    if 2**nb != bra.size or len(bra_modes) != nb:
        raise ValueError("bra dimension does not match declared mode count")
    if any(m < 0 or m >= n for m in bra_modes) or len(set(bra_modes)) != nb:
        raise ValueError("invalid mode declaration")
    t = state.reshape((2,) * n)
    res = np.tensordot(bra.conj().reshape((2,) * nb), t, axes=(list(range(nb)), bra_modes))
    # tensordot puts the surviving axes in their original relative order
    return res.reshape(-1)

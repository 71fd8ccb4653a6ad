"""POVM triples of the virtual filtering protocol and Eve's two-photon attack.

Constructs the (filter, bit-error, phase-error) POVM elements for the
photon-number cases (1,1), (1,2), (2,1) and (2,2) in both announcement
types, evaluates error rates of adversarial states, and builds the
explicit four-photon attack states for the (2,2) case.

Canonical qubit order is Alice's primed modes ascending, then Bob's
primed modes ascending; e.g. the (2,2) operators act on A1' A3' B1' B3'.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .linalg import Complex, basis_ket, bell_state, filter1, filter2, kron, projector, rotation

Case = tuple[int, int]

CASES: tuple[Case, ...] = ((1, 1), (1, 2), (2, 1), (2, 2))

FILTER_TOL = 1e-12


class FilteredOutError(ValueError):
    """The state has (numerically) zero probability of passing the filter."""


@dataclass(frozen=True)
class PovmSet:
    """Filter / bit-error / phase-error POVM triple for one case and type."""

    case: Case
    announcement_type: int
    fil: Complex
    bit: Complex
    ph: Complex

    @property
    def dim(self) -> int:
        return self.fil.shape[0]


@dataclass(frozen=True)
class ErrorPair:
    """Normalized bit and phase error rates with the filter probability."""

    e_bit: float
    e_ph: float
    p_fil: float


def _type_terms(announcement_type: int):
    if announcement_type == 1:
        return (0, 1, 2, 3), 0.25
    if announcement_type == 2:
        return (0, 2), 0.5
    raise ValueError(f"announcement type must be 1 or 2, got {announcement_type}")


def _party_ops(photons: int, k: int, angle: float):
    """Rotated transposed-filter map for a party emitting 1 or 2 photons,
    plus the ancillary tail ket appended to its bit/phase target."""
    rk = rotation(k)
    if photons == 1:
        return rk @ filter1(angle).T, np.ones(1)
    if photons == 2:
        return kron(rk, rk) @ filter2(angle).T, basis_ket("0x")
    raise ValueError(f"per-party photon number must be 1 or 2, got {photons}")


def _build(case: Case, announcement_type: int, angle: float) -> PovmSet:
    if case not in CASES:
        raise ValueError(f"unsupported photon-number case {case}")
    n, m = case
    ks, w = _type_terms(announcement_type)
    dim = 2 ** (n + m)
    fil = np.zeros((dim, dim), dtype=complex)
    bit = np.zeros((dim, dim), dtype=complex)
    ph = np.zeros((dim, dim), dtype=complex)
    for k in ks:
        ma, tail_a = _party_ops(n, k, angle)
        mb, tail_b = _party_ops(m, k, angle)
        fil += w * (lambda M: M @ M.conj().T)(kron(ma, mb))
        for i in (0, 1):
            ib = i ^ 1 if announcement_type == 2 else i
            for basis, target in (("z", bit), ("x", ph)):
                ia_lbl = f"{i}{basis}"
                ib_lbl = f"{ib if basis == 'z' else i}{basis}"
                va = ma @ kron(basis_ket(ia_lbl), tail_a)
                vb = mb @ kron(basis_ket(ib_lbl), tail_b)
                target += w * projector(kron(va, vb))
    return PovmSet(case, announcement_type, fil, bit, ph)


@lru_cache(maxsize=None)
def build_povm(case: Case, announcement_type: int) -> PovmSet:
    """POVM triple for the given case and announcement type (memoized;
    the returned arrays must be treated as read-only)."""
    return _build(case, announcement_type, np.pi / 8)


def build_povm_perturbed(case: Case, announcement_type: int, angle: float) -> PovmSet:
    """Debug hook: POVM triple with a perturbed filter angle.  Used by the
    verification suite to confirm the identity checks are sensitive."""
    return _build(case, announcement_type, angle)


def error_rates(povms: PovmSet, rho: Complex) -> ErrorPair:
    """Bit/phase error rates of a (density-operator) state under a triple."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != povms.fil.shape:
        raise ValueError(
            f"state dimension {rho.shape} does not match POVM dimension {povms.fil.shape}"
        )
    p_fil = float(np.trace(povms.fil @ rho).real)
    if p_fil <= FILTER_TOL:
        raise FilteredOutError(f"filter probability {p_fil:g} is numerically zero")
    e_bit = float(np.trace(povms.bit @ rho).real) / p_fil
    e_ph = float(np.trace(povms.ph @ rho).real) / p_fil
    return ErrorPair(e_bit=e_bit, e_ph=e_ph, p_fil=p_fil)


def attack_state_22(announcement_type: int, which: int) -> Complex:
    """Eve's four-photon attack states on A1' A3' B1' B3' (canonical order).

    Type1 exposes the orthogonal pair mu_1, mu_2 (which = 1, 2); Type2 the
    four orthogonal states nu_1..nu_4 (which = 1..4).
    """
    psi_m = bell_state("psi_minus")
    psi_p = bell_state("psi_plus")
    x0, x1 = basis_ket("0x"), basis_ket("1x")
    z0, z1 = basis_ket("0z"), basis_ket("1z")
    if announcement_type == 1:
        if which == 1:
            # psi- on (A1', B3'), |0x> on A3', |1x> on B1'
            v = kron(psi_m, x0, x1)
            return linalg.permute_qubits(v, ["A1", "B3", "A3", "B1"])
        if which == 2:
            return (kron(z0, z0, z1, z0) + kron(z1, z0, z0, z1)) / np.sqrt(2)
        raise ValueError(f"Type1 attack index must be 1 or 2, got {which}")
    if announcement_type == 2:
        tails = {1: (x0, x0), 2: (x0, x1), 3: (x1, x0), 4: (x0, x0)}
        if which not in tails:
            raise ValueError(f"Type2 attack index must be 1..4, got {which}")
        bell = psi_m if which == 4 else psi_p
        v = kron(bell, *tails[which])  # order A1' B1' A3' B3'
        return linalg.permute_qubits(v, ["A1", "B1", "A3", "B3"])
    raise ValueError(f"announcement type must be 1 or 2, got {announcement_type}")


def project_attack_from_bell_pairs(announcement_type: int, which: int) -> Complex:
    """Post-measurement state (unnormalized) of the primed modes when Eve
    projects her four ancilla photons onto an attack state.

    Starting from |phi+> pairs (A1'A2)(B1'B2)(A3'A4)(B3'B4), contracting
    the attack bra against A2 B2 A4 B4 leaves the same attack state on the
    primed modes with amplitude 1/4 (success probability 1/16).
    """
    phi_p = bell_state("phi_plus")
    # qubit order: A1' A2 B1' B2 A3' A4 B3' B4 -> indices 0..7
    full = kron(phi_p, phi_p, phi_p, phi_p)
    mu = attack_state_22(announcement_type, which)
    # attack state is on (A1', A3', B1', B3'); Eve measures the partner
    # ancillas (A2, A4, B2, B4) in the same component order
    res = linalg.partial_project(mu, [1, 5, 3, 7], full)
    # surviving axes are A1' B1' A3' B3'; restore canonical order
    return linalg.permute_qubits(res, ["A1", "B1", "A3", "B3"])


def verify_bound_certificate(case: Case, announcement_type: int, s: float, t: float) -> float:
    """Minimum eigenvalue of s*bit + t*fil - ph; >= -tol certifies the
    phase-error bound e_ph <= s*e_bit + t."""
    p = build_povm(case, announcement_type)
    return linalg.min_eigenvalue(s * p.bit + t * p.fil - p.ph)

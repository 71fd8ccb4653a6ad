"""Self-contained verification battery for the security-proof numerics.

Each check re-derives one of the operator identities, positivity
frontiers or attack-state error rates and reports pass/fail; the CLI
`verify` subcommand prints one line per check and exits nonzero on any
failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .bounds import cubic_value, f_type1, g_type2
from .povm import (
    PovmSet,
    attack_state_22,
    build_povm,
    build_povm_perturbed,
    error_rates,
    project_attack_from_bell_pairs,
)

FRONTIER_GRID = np.round(np.arange(0.0, 5.0 + 1e-9, 0.25), 10)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _povm(case, atype, angle_offset: float) -> PovmSet:
    if angle_offset:
        return build_povm_perturbed(case, atype, np.pi / 8 + angle_offset)
    return build_povm(case, atype)


def _check(name, passed, detail) -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), detail=detail)


def _frontier_checks(case, atype, intercept, angle_offset) -> list[CheckResult]:
    label = f"{case[0]}{case[1]}_type{atype}"
    p = _povm(case, atype, angle_offset)
    worst_valid = np.inf
    best_invalid = np.inf
    for s in FRONTIER_GRID:
        t = intercept(float(s))
        m_valid = linalg.min_eigenvalue(s * p.bit + t * (1 + 1e-6) * p.fil - p.ph)
        m_invalid = linalg.min_eigenvalue(s * p.bit + t * (1 - 1e-2) * p.fil - p.ph)
        worst_valid = min(worst_valid, m_valid)
        best_invalid = min(best_invalid, m_invalid)
    return [
        _check(
            f"frontier_{label}_valid_side",
            worst_valid >= -1e-9,
            f"min eigenvalue {worst_valid:.3e} at t*(1+1e-6)",
        ),
        _check(
            f"frontier_{label}_tightness",
            best_invalid <= -1e-8,
            f"min eigenvalue {best_invalid:.3e} at t*(1-1e-2)",
        ),
    ]


def verify_suite(angle_offset: float = 0.0) -> list[CheckResult]:
    """Run the full identity/positivity/attack battery.

    `angle_offset` perturbs the filter angle; it exists so the suite's
    sensitivity can itself be demonstrated (a 1e-3 offset must break the
    proportionality check).
    """
    checks: list[CheckResult] = []

    # rotation cycles the four signal states
    worst = 0.0
    for i in range(4):
        ov = abs(np.vdot(linalg.phi_state((i + 1) % 4), linalg.rotation(1) @ linalg.phi_state(i)))
        worst = max(worst, abs(ov - 1.0))
    checks.append(_check("rotation_cycles_signal_states", worst <= 1e-12, f"max deviation {worst:.3e}"))

    # filters are contractions: F'F <= identity
    for name, f in (("filter1", linalg.filter1()), ("filter2", linalg.filter2())):
        m = linalg.min_eigenvalue(np.eye(f.shape[0]) - f.conj().T @ f)
        checks.append(_check(f"{name}_contraction", m >= -1e-12, f"min eigenvalue {m:.3e}"))

    p11t1 = _povm((1, 1), 1, angle_offset)
    dev = np.abs(p11t1.ph - 1.5 * p11t1.bit).max()
    checks.append(
        _check("povm_11_type1_phase_is_1p5_bit", dev <= 1e-12, f"max-abs deviation {dev:.3e}")
    )

    p11t2 = _povm((1, 1), 2, angle_offset)
    m3 = linalg.min_eigenvalue(3 * p11t2.bit - p11t2.ph)
    m29 = linalg.min_eigenvalue(2.9 * p11t2.bit - p11t2.ph)
    checks.append(_check("povm_11_type2_s3_psd", m3 >= -1e-10, f"min eigenvalue {m3:.3e}"))
    checks.append(
        _check("povm_11_type2_s2p9_fails", m29 <= -1e-6, f"min eigenvalue {m29:.3e}")
    )

    for case in ((1, 2), (2, 1)):
        checks.extend(_frontier_checks(case, 1, f_type1, angle_offset))
        checks.extend(_frontier_checks(case, 2, g_type2, angle_offset))

    # cubic root quality for the Type2 intercept
    worst_res = max(abs(cubic_value(s, g_type2(s))) for s in (0.0, 0.1, 0.5, 1.0, 2.0, 5.0))
    checks.append(_check("g_cubic_residual", worst_res <= 1e-10, f"max residual {worst_res:.3e}"))
    checks.append(_check("g_at_zero_is_one", abs(g_type2(0.0) - 1.0) <= 1e-10, f"g(0) = {g_type2(0.0)!r}"))

    # (2,2) attack states reach phase error 0.5
    p22t1 = _povm((2, 2), 1, angle_offset)
    mu1 = attack_state_22(1, 1)
    mu2 = attack_state_22(1, 2)
    r1 = error_rates(p22t1, linalg.projector(mu1))
    r2 = error_rates(p22t1, linalg.projector(mu2))
    checks.append(
        _check(
            "attack_22_type1_mu1",
            abs(r1.e_bit) <= 1e-12 and abs(r1.e_ph - 0.5) <= 1e-12,
            f"(e_bit, e_ph) = ({r1.e_bit:.3e}, {r1.e_ph:.12f})",
        )
    )
    checks.append(
        _check(
            "attack_22_type1_mu2",
            abs(r2.e_bit - 0.5) <= 1e-12 and abs(r2.e_ph - 0.5) <= 1e-12,
            f"(e_bit, e_ph) = ({r2.e_bit:.12f}, {r2.e_ph:.12f})",
        )
    )
    ortho = abs(np.vdot(mu1, mu2))
    checks.append(_check("attack_22_mu_orthogonal", ortho <= 1e-12, f"|<mu1|mu2>| = {ortho:.3e}"))

    p22t2 = _povm((2, 2), 2, angle_offset)
    nus = [attack_state_22(2, w) for w in (1, 2, 3, 4)]
    rho_a = 0.25 * linalg.projector(nus[0]) + 0.75 * linalg.projector(nus[1])
    rho_b = 0.75 * linalg.projector(nus[2]) + 0.25 * linalg.projector(nus[3])
    ra = error_rates(p22t2, rho_a)
    rb = error_rates(p22t2, rho_b)
    checks.append(
        _check(
            "attack_22_type2_mix_a",
            abs(ra.e_bit) <= 1e-12 and abs(ra.e_ph - 0.5) <= 1e-12,
            f"(e_bit, e_ph) = ({ra.e_bit:.3e}, {ra.e_ph:.12f})",
        )
    )
    checks.append(
        _check(
            "attack_22_type2_mix_b",
            abs(rb.e_bit - 0.5) <= 1e-12 and abs(rb.e_ph - 0.5) <= 1e-12,
            f"(e_bit, e_ph) = ({rb.e_bit:.12f}, {rb.e_ph:.12f})",
        )
    )

    # heralding the attack from Bell pairs succeeds with probability 1/16
    proj = project_attack_from_bell_pairs(1, 1)
    p_succ = float(np.vdot(proj, proj).real)
    checks.append(
        _check(
            "attack_projection_probability",
            abs(p_succ - 1 / 16) <= 1e-12,
            f"success probability {p_succ:.12f}",
        )
    )

    return checks


def all_passed(checks: list[CheckResult]) -> bool:
    return all(c.passed for c in checks)

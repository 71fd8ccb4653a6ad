"""Gain assembly and asymptotic key-rate evaluation.

Combines source photon-number statistics with the relay response to form
per-(n,m) gains, applies the phase-error bounds, and evaluates the
asymptotic key-rate formula per announcement type, plus a simplified
MDI-BB84 comparator.  Infinite decoy states are assumed: every
per-photon-number gain and error rate is known exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .bounds import binary_entropy, phase_bound
from .optics import DetectorParams, MuEntry, MuResponse, mu_response
from .sources import HeraldedSource, PhotonNumberDist

# probability that the broadcast rotation labels satisfy the sifting rule:
# k = k' for Type1 (1/4), k = k' restricted to {0, 2} for Type2 (1/8)
SIFT_FACTOR = {1: 0.25, 2: 0.125}

KEY_CASES = ((1, 1), (1, 2), (2, 1))


@dataclass(frozen=True)
class TypeGains:
    """Per-(n,m) gains and bit error rates for one announcement type."""

    q: dict[tuple[int, int], float]
    ebit: dict[tuple[int, int], float]
    q_tot: float
    e_tot: float


@dataclass(frozen=True)
class GainTable:
    """Gains for both announcement types plus the heralding probability
    (1 for non-heralded sources); rates built from this table are per
    (heralded) pulse pair."""

    type1: TypeGains
    type2: TypeGains
    herald_probability: float = 1.0
    protocol: str = "sarg04"

    def for_type(self, announcement_type: int) -> TypeGains:
        if announcement_type == 1:
            return self.type1
        if announcement_type == 2:
            return self.type2
        raise ValueError(f"announcement type must be 1 or 2, got {announcement_type}")


@dataclass(frozen=True)
class KeyRateBreakdown:
    """Per-type key fractions with the positive term breakdown."""

    G1: float
    G2: float
    total: float
    contributions: dict = field(default_factory=dict)
    ec_cost: float = 0.0


def _emission_dist(source) -> tuple[PhotonNumberDist, float]:
    if isinstance(source, HeraldedSource):
        return source.conditional, source.p_herald
    if isinstance(source, PhotonNumberDist):
        return source, 1.0
    raise TypeError(f"unsupported source type {type(source).__name__}")


def _binom(n: int, k: int, p: float) -> float:
    return comb(n, k) * p**k * (1 - p) ** (n - k)


def _qnd_entry(n: int, m: int, t_arm: float, base: MuResponse) -> MuEntry:
    """Relay response for an (n, m) emission when the relay accepts only
    <=1 arriving photon per arm.  Channel loss thins the arrivals; the
    base response covers arrivals in {0, 1} with detector loss only."""
    y1 = y2 = err1 = err2 = 0.0
    for na in range(min(n, 1) + 1):
        wa = _binom(n, na, t_arm)
        for mb in range(min(m, 1) + 1):
            w = wa * _binom(m, mb, t_arm)
            if w == 0.0:
                continue
            e = base.entries[(na, mb)]
            y1 += w * e.yield_type1
            err1 += w * e.yield_type1 * e.ebit_type1
            y2 += w * e.yield_type2
            err2 += w * e.yield_type2 * e.ebit_type2
    return MuEntry(
        yield_type1=y1,
        ebit_type1=err1 / y1 if y1 > 0 else 0.5,
        yield_type2=y2,
        ebit_type2=err2 / y2 if y2 > 0 else 0.5,
    )


def relay_response_for(
    det: DetectorParams,
    t_arm: float,
    qnd: bool,
    protocol: str = "sarg04",
    bb84_basis: str = "key",
    n_max: int = 2,
) -> MuResponse:
    """Precompute the relay response needed by assemble_gains.

    With the photon-number postselection the channel loss is handled by
    arrival statistics, so the optics are evaluated at full arm
    transmittance with arrivals capped at one photon.
    """
    if qnd:
        return mu_response(det, 1.0, protocol, bb84_basis, n_max=1)
    return mu_response(det, t_arm, protocol, bb84_basis, n_max=n_max)


def assemble_gains(
    source_a,
    source_b,
    det: DetectorParams,
    t_arm: float,
    qnd: bool = False,
    protocol: str = "sarg04",
    bb84_basis: str = "key",
    n_max: int = 2,
    response: MuResponse | None = None,
) -> GainTable:
    """Per-(n,m) gains Q = p_n p_m * sift * yield for both types.

    `response` may be supplied to amortize the optics over a parameter
    sweep; it must come from relay_response_for with matching settings.
    """
    dist_a, herald_a = _emission_dist(source_a)
    dist_b, herald_b = _emission_dist(source_b)
    if qnd and (herald_a != 1.0 or herald_b != 1.0):
        raise ValueError("photon-number postselection expects bare source distributions")
    if response is None:
        response = relay_response_for(det, t_arm, qnd, protocol, bb84_basis, n_max)
    sift = SIFT_FACTOR if protocol == "sarg04" else {1: 1.0, 2: 1.0}
    q = {1: {}, 2: {}}
    e = {1: {}, 2: {}}
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            entry = (
                _qnd_entry(n, m, t_arm, response) if qnd else response.entries[(n, m)]
            )
            w = dist_a.prob(n) * dist_b.prob(m)
            q[1][(n, m)] = w * sift[1] * entry.yield_type1
            e[1][(n, m)] = entry.ebit_type1
            q[2][(n, m)] = w * sift[2] * entry.yield_type2
            e[2][(n, m)] = entry.ebit_type2
    per_type = {}
    for t in (1, 2):
        q_tot = sum(q[t].values())
        e_tot = sum(q[t][nm] * e[t][nm] for nm in q[t]) / q_tot if q_tot > 0 else 0.0
        per_type[t] = TypeGains(q=q[t], ebit=e[t], q_tot=q_tot, e_tot=e_tot)
    return GainTable(
        type1=per_type[1],
        type2=per_type[2],
        herald_probability=herald_a * herald_b,
        protocol=protocol,
    )


@lru_cache(maxsize=65536)
def _cached_phase_bound(case: tuple[int, int], announcement_type: int, e_bit: float) -> float:
    return phase_bound(case, announcement_type, e_bit).e_ph


def _privacy_term(q: float, e_ph: float) -> float:
    # e_ph >= 0.5 carries no key; clamping into [0, 0.5] makes the term 0
    return q * (1.0 - binary_entropy(min(e_ph, 0.5)))


def key_rate(
    gains: GainTable,
    ec_inefficiency: float,
    one_one_only: bool = False,
    type_selection: str = "both",
) -> KeyRateBreakdown:
    """Asymptotic key fractions G_i per announcement type.

    G_i sums the privacy-amplified single- and mixed-photon-number terms
    and subtracts the error-correction cost over the whole sifted key.
    Negative G_i are clamped to zero in `total`; raw values are kept in
    G1/G2 for diagnostics.
    """
    if ec_inefficiency < 1:
        raise ValueError(f"error-correction inefficiency must be >= 1, got {ec_inefficiency}")
    if type_selection not in ("both", "type1_only", "type2_only"):
        raise ValueError(f"unknown type selection {type_selection!r}")
    cases = ((1, 1),) if one_one_only else KEY_CASES
    contributions: dict = {}
    raw = {}
    ec_total = 0.0
    for t in (1, 2):
        tg = gains.for_type(t)
        g = 0.0
        for nm in cases:
            if nm not in tg.q or tg.q[nm] == 0.0:
                continue
            e_ph = _cached_phase_bound(nm, t, tg.ebit[nm])
            term = _privacy_term(tg.q[nm], e_ph)
            contributions[(t, nm)] = term
            g += term
        ec = ec_inefficiency * tg.q_tot * binary_entropy(min(tg.e_tot, 1.0))
        ec_total += ec
        raw[t] = g - ec
    include = {
        "both": (1, 2),
        "type1_only": (1,),
        "type2_only": (2,),
    }[type_selection]
    total = sum(max(raw[t], 0.0) for t in include)
    return KeyRateBreakdown(
        G1=raw[1], G2=raw[2], total=total, contributions=contributions, ec_cost=ec_total
    )


def bb84_baseline_rate(
    key_gains: GainTable, test_gains: GainTable, ec_inefficiency: float
) -> float:
    """Simplified asymptotic MDI-BB84 comparator.

    R = Q^(1,1) [1 - h(e_ph^(1,1))] - f_EC Q_tot h(E_tot), with both
    announcement types combined, the key-basis gains providing Q and
    E_tot and the test-basis (1,1) error providing the phase error.
    Clamped at zero.
    """
    q11 = key_gains.type1.q[(1, 1)] + key_gains.type2.q[(1, 1)]
    q_tot = key_gains.type1.q_tot + key_gains.type2.q_tot
    if q_tot == 0.0:
        return 0.0
    e_tot = (
        key_gains.type1.q_tot * key_gains.type1.e_tot
        + key_gains.type2.q_tot * key_gains.type2.e_tot
    ) / q_tot
    tq11 = test_gains.type1.q[(1, 1)] + test_gains.type2.q[(1, 1)]
    if tq11 > 0:
        e_ph = (
            test_gains.type1.q[(1, 1)] * test_gains.type1.ebit[(1, 1)]
            + test_gains.type2.q[(1, 1)] * test_gains.type2.ebit[(1, 1)]
        ) / tq11
    else:
        e_ph = 0.5
    raw = _privacy_term(q11, e_ph) - ec_inefficiency * q_tot * binary_entropy(min(e_tot, 1.0))
    return max(raw, 0.0)

import math
from dataclasses import replace

import pytest

from hnc.core import molecular_channel
from hnc.core.errors import DomainError, InvalidParameterError, SweepPointError
from hnc.core.molecular_channel import (
    BOLTZMANN_K,
    LogMode,
    MolecularChannelParams,
    MolecularTerms,
    capacity_molecular,
    gamma_argument,
    molecular_terms,
    sweep_bandwidth,
)
from hnc.core.utils import log_grid
from hnc.tests.oracles import molecular_capacity_mp

# T, P, D, d2 de referência
REF = dict(mean_power_P=1e-12, temperature_T=300.0, diffusion_D=1e-9, distance_d2=1e-4)


def _params(W=20.0, Rd=1e-5, **kw):
    return MolecularChannelParams(bandwidth_W=W, detector_radius_Rd=Rd, **{**REF, **kw})


def _oracle(p, nats=False):
    return molecular_capacity_mp(
        p.bandwidth_W, p.mean_power_P, p.temperature_T, p.diffusion_D,
        p.distance_d2, p.detector_radius_Rd, p.tau, nats=nats,
    )


GRID = [
    _params(W, Rd, tau_factor=c)
    for W in log_grid(1.0, 200.0, 25)
    for Rd, c in ((1e-7, 0.1), (3e-7, 0.5), (1e-6, 2.0), (1e-7, 10.0))
]


def test_gamma_argument_reference_value():
    # 2P/(9 d2 KB T) = 5.36514e11 para os parâmetros de referência
    assert gamma_argument(_params(W=1.0, Rd=1.0)) == pytest.approx(5.36514e11, rel=1e-5)
    assert gamma_argument(_params(W=20.0, Rd=1e-5)) == pytest.approx(5.36514e11 * 1e-5 / 400, rel=1e-5)


def test_capacity_matches_termwise_oracle_on_grid():
    assert len(GRID) == 100
    for p in GRID:
        assert capacity_molecular(p) == pytest.approx(_oracle(p), rel=1e-12), p


def test_nats_consistent_mode_matches_oracle():
    for p in GRID[::7]:
        assert capacity_molecular(p, LogMode.NATS_CONSISTENT) == pytest.approx(_oracle(p, nats=True), rel=1e-12)


def test_terms_sum_to_capacity():
    p = _params()
    terms = molecular_terms(p)
    assert len(terms.as_tuple()) == 7
    assert terms.total() == capacity_molecular(p)
    assert terms.interval_term == pytest.approx(-2 * 20.0 * math.log(0.5))


def test_nats_mode_only_rescales_log_terms():
    p = _params()
    v = molecular_terms(p, LogMode.VERBATIM)
    n = molecular_terms(p, LogMode.NATS_CONSISTENT)
    assert v.as_tuple()[:4] == n.as_tuple()[:4]
    for a, b in zip(v.as_tuple()[4:], n.as_tuple()[4:]):
        assert b == pytest.approx(a / math.log(2), rel=1e-15)


def test_fixed_interval_overrides_factor():
    p = _params(interval_tau=0.01)
    assert p.tau == 0.01
    assert _params(W=50.0).tau == pytest.approx(0.01)


def test_argument_outside_validated_range():
    # x ~ 5.4e6 em W = 1 Hz, Rd = 1e-5 m
    with pytest.raises(DomainError):
        capacity_molecular(_params(W=1.0, Rd=1e-5))


@pytest.mark.parametrize("field", ["bandwidth_W", "mean_power_P", "temperature_T", "diffusion_D", "distance_d2"])
def test_invalid_parameters(field):
    with pytest.raises(InvalidParameterError):
        replace(_params(), **{field: 0.0})


def test_log_mode_parse():
    assert LogMode.parse("nats") is LogMode.NATS_CONSISTENT
    assert LogMode.parse("VERBATIM") is LogMode.VERBATIM
    with pytest.raises(InvalidParameterError):
        LogMode.parse("bits")


def test_negative_capacity_is_returned_and_logged(monkeypatch, caplog):
    negative = MolecularTerms(-10.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, x=2.0)
    monkeypatch.setattr(molecular_channel, "molecular_terms", lambda params, mode: negative)

    with caplog.at_level("WARNING"):
        c = capacity_molecular(_params())
    assert c == -4.0
    assert any("negativa" in r.message for r in caplog.records)


# ------------------------------------------------------------
# Varredura em banda
# ------------------------------------------------------------
def test_sweep_preserves_grid_order_with_workers():
    grid = log_grid(1.0, 200.0, 40)
    base = _params(Rd=1e-7, tau_factor=0.1)
    serial = sweep_bandwidth(base, grid)
    parallel = sweep_bandwidth(base, grid, workers=4)
    assert serial == parallel
    assert [w for w, _ in serial] == grid


def test_sweep_wraps_domain_error_with_value():
    with pytest.raises(SweepPointError) as exc:
        sweep_bandwidth(_params(Rd=1e-5), [1.0, 20.0])
    assert exc.value.value == 1.0
    assert isinstance(exc.value.__cause__, DomainError)


def test_sweep_is_pointwise_capacity():
    base = _params(Rd=1e-7, tau_factor=0.1)
    for grid in ([20.0], [5.0, 20.0, 80.0]):
        rows = sweep_bandwidth(base, grid)
        assert rows == [(w, capacity_molecular(replace(base, bandwidth_W=w))) for w in grid]


# ------------------------------------------------------------
# Propriedades termo a termo
# ------------------------------------------------------------
def _unit_x(W=1.0, Rd=1e-5):
    """P escolhido para x = 1, com τ = 1/W."""
    power = 9.0 * BOLTZMANN_K * REF["temperature_T"] * REF["distance_d2"] * W ** 2 / (2.0 * Rd)
    return MolecularChannelParams(
        bandwidth_W=W, detector_radius_Rd=Rd, tau_factor=1.0,
        **{**REF, "mean_power_P": power},
    )


def test_doubling_power_shifts_rate_term_and_doubles_x():
    p = _params(Rd=1e-6)
    q = replace(p, mean_power_P=2 * p.mean_power_P)
    a, b = molecular_terms(p), molecular_terms(q)

    assert b.rate_term - a.rate_term == pytest.approx(2 * p.bandwidth_W, abs=1e-9)
    assert b.x == pytest.approx(2 * a.x, rel=1e-15)


def test_distance_terms_decrease_with_distance():
    terms = [molecular_terms(_params(Rd=1e-6, distance_d2=d)) for d in (5e-5, 1e-4, 2e-4, 4e-4)]
    spread = [t.spread_term for t in terms]
    distance = [t.distance_term for t in terms]
    assert all(b < a for a, b in zip(spread, spread[1:]))
    assert all(b < a for a, b in zip(distance, distance[1:]))


def test_unit_argument_kills_gamma_and_digamma_terms():
    p = _unit_x()
    t = molecular_terms(p)
    W, kT, D, d2 = p.bandwidth_W, BOLTZMANN_K * p.temperature_T, p.diffusion_D, p.distance_d2

    assert t.x == pytest.approx(1.0, rel=1e-14)
    assert t.gamma_term == pytest.approx(0.0, abs=1e-12)
    assert t.digamma_term == pytest.approx(0.0, abs=1e-12)
    assert t.interval_term == 0.0

    assert t.rate_term == pytest.approx(2 * W * (1 + math.log2(p.mean_power_P / (3 * W * kT))), rel=1e-12)
    assert t.spread_term == pytest.approx(-2 * math.log2(math.pi * D * d2), rel=1e-12)
    assert t.distance_term == pytest.approx(-(4 * d2 / (3 * math.log(2))) * math.sqrt(math.pi * W / D), rel=1e-12)
    assert t.linear_x_term == pytest.approx(2 * W, rel=1e-14)


def test_modes_agree_when_log_terms_vanish():
    p = _unit_x()
    verbatim = capacity_molecular(p, LogMode.VERBATIM)
    nats = capacity_molecular(p, LogMode.NATS_CONSISTENT)
    assert nats == pytest.approx(verbatim, abs=1e-12)

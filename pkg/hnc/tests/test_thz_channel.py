import math

import numpy as np
import pytest

from hnc.core.errors import DomainError, InvalidParameterError, SweepPointError
from hnc.core.thz_channel import (
    SPEED_OF_LIGHT,
    PathLossModel,
    SimplifiedThzParams,
    ThzChannelParams,
    capacity,
    capacity_simplified,
    capacity_sum,
    free_space_path_loss,
    path_loss_db,
    sweep_distance,
)
from hnc.core.utils import is_strictly_monotone, log_grid
from hnc.tests.oracles import fspl_mp


def _band(**kw):
    base = dict(
        f_low=1e12, f_high=1.1e12, delta_f=1e10, distance_d1=0.01,
        tx_psd=1e-14, noise_psd=1e-20, path_loss=PathLossModel.free_space(),
    )
    base.update(kw)
    return ThzChannelParams(**base)


def _simple(**kw):
    base = dict(bandwidth_B=1e11, snr_linear=1e6, center_freq=1e12, distance_d1=0.01)
    base.update(kw)
    return SimplifiedThzParams(**base)


# ------------------------------------------------------------
# Perda de percurso
# ------------------------------------------------------------
def test_free_space_loss_at_one_terahertz_one_meter():
    loss = free_space_path_loss(1e12, 1.0)
    assert loss == pytest.approx(fspl_mp(1e12, 1.0), rel=1e-12)
    assert loss == pytest.approx(1.757e9, rel=1e-3)
    assert path_loss_db(1e12, 1.0) == pytest.approx(92.45, abs=0.01)


def test_absorption_multiplies_by_exponential():
    k = 10.0
    ratio = free_space_path_loss(1e12, 1.0, k) / free_space_path_loss(1e12, 1.0)
    assert ratio == pytest.approx(math.exp(k), rel=1e-12)
    assert PathLossModel.with_absorption(k).attenuation(1e12, 0.5) == pytest.approx(fspl_mp(1e12, 0.5, k), rel=1e-12)


def test_near_field_loss_is_not_clamped():
    # d < c / (4πf)
    assert free_space_path_loss(1e12, 1e-5) < 1.0


@pytest.mark.parametrize("f,d", [(0.0, 1.0), (-1e12, 1.0), (1e12, 0.0), (1e12, -1.0), (1e12, math.nan)])
def test_loss_domain_errors(f, d):
    with pytest.raises(DomainError):
        free_space_path_loss(f, d)


def test_path_loss_labels():
    assert PathLossModel.free_space().label() == "FreeSpace"
    assert PathLossModel.free_space().is_free_space
    assert "k=2.0" in PathLossModel.with_absorption(2.0).label()


# ------------------------------------------------------------
# Capacidades
# ------------------------------------------------------------
def test_single_subband_equals_shannon_term():
    p = _band(f_high=1.01e12)
    assert p.n_subbands == 1
    loss = fspl_mp(1.005e12, 0.01)
    expected = 1e10 * math.log2(1 + 1e-14 / (loss * 1e-20))
    assert capacity_sum(p) == pytest.approx(expected, rel=1e-12)


def test_subband_grid_uses_midpoints():
    p = _band()
    assert p.n_subbands == 10
    centers = p.band_centers()
    assert centers[0] == pytest.approx(1.005e12)
    assert centers[-1] == pytest.approx(1.095e12)


def test_subband_sum_is_sum_of_terms():
    p = _band()
    expected = math.fsum(
        1e10 * math.log2(1 + 1e-14 / (fspl_mp(f, 0.01) * 1e-20)) for f in p.band_centers()
    )
    assert capacity_sum(p) == pytest.approx(expected, rel=1e-12)


def test_band_remainder_is_logged(caplog):
    with caplog.at_level("WARNING"):
        capacity_sum(_band(f_high=1.015e12))
    assert any("sobra" in r.message for r in caplog.records)


def test_invalid_band():
    with pytest.raises(InvalidParameterError):
        _band(f_high=0.9e12)
    with pytest.raises(InvalidParameterError):
        _band(delta_f=1e12)
    with pytest.raises(InvalidParameterError):
        _band(distance_d1=0.0)


def test_simplified_formula():
    p = _simple(distance_d1=0.5)
    expected = 1e11 * math.log2(1 + 1e6 / fspl_mp(1e12, 0.5))
    assert capacity_simplified(p) == pytest.approx(expected, rel=1e-12)
    assert capacity(p) == capacity_simplified(p)


def test_tiny_snr_keeps_precision():
    p = _simple(snr_linear=1e-3, distance_d1=1.0)
    y = 1e-3 / fspl_mp(1e12, 1.0)
    assert capacity_simplified(p) == pytest.approx(1e11 * y / math.log(2), rel=1e-9)
    assert capacity_simplified(p) > 0


# ------------------------------------------------------------
# Varredura em distância
# ------------------------------------------------------------
def test_capacity_decreases_with_distance():
    rows = sweep_distance(_simple(), log_grid(1e-3, 1.0, 60))
    assert is_strictly_monotone([c for _, c in rows], increasing=False)
    assert [d for d, _ in rows] == log_grid(1e-3, 1.0, 60)


def test_absorption_drops_three_orders_by_one_meter():
    base = _simple(path_loss=PathLossModel.with_absorption(10.0))
    (_, c_near), (_, c_far) = sweep_distance(base, [0.01, 1.0])
    assert c_far <= c_near / 1e3


@pytest.mark.parametrize("grid", [[], [0.1, 0.01], [0.01, 0.01], [-1.0, 0.01]])
def test_sweep_rejects_bad_grid(grid):
    with pytest.raises(InvalidParameterError):
        sweep_distance(_band(), grid)


def test_sweep_point_error_keeps_grid_value():
    class BrokenLoss(PathLossModel):
        def attenuation(self, f, d):
            if d > 0.05:
                raise DomainError("perda indefinida")
            return super().attenuation(f, d)

    with pytest.raises(SweepPointError) as exc:
        sweep_distance(_simple(path_loss=BrokenLoss()), [0.01, 0.1])
    assert exc.value.value == 0.1
    assert isinstance(exc.value.__cause__, DomainError)


# ------------------------------------------------------------
# Propriedades
# ------------------------------------------------------------
class UnitLoss(PathLossModel):
    """A ≡ 1 (limite d -> 0 forçado)."""

    def attenuation(self, f, d):
        return np.ones_like(np.asarray(f, dtype="float64"))


def test_loss_is_one_at_unit_argument():
    f = 1e12
    d = SPEED_OF_LIGHT / (4.0 * math.pi * f)
    assert free_space_path_loss(f, d) == pytest.approx(1.0, rel=1e-12)
    assert path_loss_db(f, d) == pytest.approx(0.0, abs=1e-10)


def test_zero_absorption_equals_free_space():
    for f, d in [(1e11, 0.3), (1e12, 1e-3), (3e12, 2.0)]:
        assert PathLossModel.with_absorption(0.0).attenuation(f, d) == PathLossModel.free_space().attenuation(f, d)


def test_unit_snr_subband_gives_delta_f():
    p = _band(f_high=1.01e12, tx_psd=1e-20, path_loss=UnitLoss())
    assert capacity_sum(p) == pytest.approx(1e10, rel=1e-14)


def test_two_equal_subbands_double_one_band():
    one = capacity_sum(_band(f_high=1.01e12, path_loss=UnitLoss()))
    two = capacity_sum(_band(f_high=1.02e12, path_loss=UnitLoss()))
    assert two == 2 * one


@pytest.mark.parametrize("snr,bits_per_hz", [(1.0, 1.0), (3.0, 2.0)])
def test_simplified_unit_cases(snr, bits_per_hz):
    p = _simple(snr_linear=snr, path_loss=UnitLoss())
    assert capacity_simplified(p) == pytest.approx(bits_per_hz * 1e11, rel=1e-14)


def test_capacity_increases_with_tx_psd():
    values = [capacity_sum(_band(tx_psd=s)) for s in (1e-17, 1e-16, 1e-15, 1e-14, 1e-13)]
    assert is_strictly_monotone(values)


def test_capacity_increases_with_snr():
    values = [capacity_simplified(_simple(snr_linear=s)) for s in (1e2, 1e4, 1e6, 1e8)]
    assert is_strictly_monotone(values)


def test_halving_subband_width_changes_little():
    coarse = capacity_sum(_band(delta_f=1e10))
    fine = capacity_sum(_band(delta_f=5e9))
    assert _band(delta_f=5e9).n_subbands == 20
    assert abs(fine - coarse) / coarse < 0.01


def test_single_subband_equals_simplified_form():
    band = _band(f_high=1.01e12)
    simple = SimplifiedThzParams(
        bandwidth_B=band.delta_f,
        snr_linear=band.tx_psd / band.noise_psd,
        center_freq=float(band.band_centers()[0]),
        distance_d1=band.distance_d1,
    )
    assert capacity_sum(band) == pytest.approx(capacity_simplified(simple), rel=1e-12)

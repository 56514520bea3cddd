"""
Fig. 9: com Rd e τ nas faixas declaradas a curva tem um único mínimo
interior, mas ele fica perto de 70 Hz e ~6e3 bits/s, fora da faixa alvo
(10-40 Hz, 1e3-5e3 bits/s). Os testes fixam a curva mais próxima e a lacuna.
"""

import pytest

from hnc.core.calibration import (
    CurveShape,
    TARGET_W_BAND,
    calibrate_fig9,
    curve_shape,
    gap_for,
    meets_target,
)
from hnc.core.molecular_channel import MolecularChannelParams, sweep_bandwidth
from hnc.core.utils import find_local_minima, log_grid

W_GRID = log_grid(1.0, 200.0, 200)


def _base(Rd=1e-7, tau_factor=0.1):
    return MolecularChannelParams(
        bandwidth_W=20.0, mean_power_P=1e-12, temperature_T=300.0, diffusion_D=1e-9,
        distance_d2=1e-4, detector_radius_Rd=Rd, tau_factor=tau_factor,
    )


def test_calibrated_curve_has_single_interior_minimum():
    sweep = sweep_bandwidth(_base(), W_GRID)
    caps = [c for _, c in sweep]
    assert len(find_local_minima(caps)) == 1

    shape = curve_shape(sweep)
    assert 50.0 <= shape.w_min <= 100.0
    assert 4e3 <= shape.c_min <= 8e3
    assert caps[0] > shape.c_min and caps[-1] > shape.c_min


def test_gap_is_reported():
    cal = gap_for(_base(), W_GRID)
    assert not cal.meets_band
    assert cal.w_gap_decades > 0
    assert cal.w_min > TARGET_W_BAND[1]
    assert "NÃO atinge" in cal.summary()


def test_search_picks_closest_corner():
    cal = calibrate_fig9(_base(Rd=1e-5, tau_factor=0.5))
    assert cal.r_d == pytest.approx(1e-7)
    assert cal.tau_factor == pytest.approx(0.1)
    assert cal.n_local_minima == 1
    assert not cal.meets_band


def test_search_skips_combinations_outside_validated_range():
    # Rd = 1e-4 leva x acima de 1e6 em W = 1 Hz
    cal = calibrate_fig9(_base(), r_d_grid=[1e-7, 1e-4], tau_factor_grid=[0.1], w_grid=W_GRID)
    assert cal.r_d == pytest.approx(1e-7)


def test_meets_target_rules():
    assert meets_target(CurveShape(w_min=20.0, c_min=2e3, c_max=3e3, n_local_minima=1))
    assert not meets_target(CurveShape(w_min=20.0, c_min=2e3, c_max=3e3, n_local_minima=2))
    assert not meets_target(CurveShape(w_min=70.0, c_min=2e3, c_max=3e3, n_local_minima=1))
    assert not meets_target(CurveShape(w_min=20.0, c_min=2e3, c_max=9e3, n_local_minima=1))

# hnc/hnc_runner.py
# -*- coding: utf-8 -*-

"""
Orquestração dos ciclos do HNC:
- relatório de capacidade (C1, C2, C3 e a cascata)
- reprodução das Figs. 8, 9 e 10
- varredura de uma chave numérica
- simulação do enlace fim a fim
- escrita dos CSVs com a linha de proveniência
"""

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from hnc.core.calibration import calibrate_fig9, gap_for
from hnc.core.configs import KEYS, column_for
from hnc.core.errors import ChannelError, ConfigError, SweepPointError
from hnc.core.hybrid import full_report
from hnc.core.link_sim import analytic_ber, run_link
from hnc.core.molecular_channel import sweep_bandwidth
from hnc.core.neural_channel import nats_to_bits, sweep_input_rate
from hnc.core.thz_channel import path_loss_db, sweep_distance
from hnc.core.utils import lin_grid, log_grid

logger = logging.getLogger(__name__)

FIGURES = ("fig8", "fig9", "fig10")


# ------------------------------------------------------------
# RELATÓRIO DE CAPACIDADE
# ------------------------------------------------------------
def run_capacity(cfg):
    """CapacityReport nos parâmetros da configuração, mais a perda THz em dB."""
    thz = cfg.thz_params()
    report = full_report(thz, cfg.molecular_params(), cfg.neural_params(), cfg.mode)

    centers = thz.band_centers()
    loss_db = path_loss_db(float(centers[len(centers) // 2]), thz.distance_d1, thz.path_loss)
    return report, loss_db


def report_frame(report):
    return pd.DataFrame([report.as_row()], columns=["c1_bps", "c2_bps", "c3_bps", "cascade_bps", "bottleneck"])


# ------------------------------------------------------------
# FIGURAS
# ------------------------------------------------------------
def reproduce_fig8(cfg):
    """Capacidade simplificada x distância d1 (grade log)."""
    grid = log_grid(cfg.get("fig8.d_min_m"), cfg.get("fig8.d_max_m"), cfg.count("fig8.points"))
    rows = sweep_distance(cfg.thz_simplified(), grid)
    return pd.DataFrame(rows, columns=["distance_m", "capacity_bps"])


def reproduce_fig9(cfg, calibrate=False):
    """
    Capacidade molecular x banda W. Com calibrate=True o par (Rd, τ) vem
    da busca em grade; senão, dos valores fig9.* da configuração.
    Retorna (DataFrame, CalibrationResult).
    """
    grid = log_grid(cfg.get("fig9.w_min_hz"), cfg.get("fig9.w_max_hz"), cfg.count("fig9.points"))
    params = cfg.fig9_params()

    if calibrate:
        cal = calibrate_fig9(params, w_grid=grid, mode=cfg.mode)
        params = cfg.with_value("fig9.detector_radius_m", cal.r_d).with_value("fig9.tau_factor", cal.tau_factor).fig9_params()
    else:
        cal = gap_for(params, w_grid=grid, mode=cfg.mode)
        logger.info("[OK] fig9: %s", cal.summary())

    rows = sweep_bandwidth(params, grid, cfg.mode, workers=cfg.count("run.workers"))
    return pd.DataFrame(rows, columns=["bandwidth_hz", "capacity_bps"]), cal


def reproduce_fig10(cfg):
    """Capacidade neural x taxa de entrada a, a partir de a = 0."""
    grid = lin_grid(0.0, cfg.get("fig10.a_max_pps"), cfg.count("fig10.points"))
    rows = sweep_input_rate(cfg.neural_params(), grid)
    df = pd.DataFrame(rows, columns=["rate_pps", "capacity_nats_ps"])
    df["capacity_bps"] = nats_to_bits(df["capacity_nats_ps"])
    return df


def reproduce(figure, cfg, calibrate=False):
    if figure == "fig8":
        return reproduce_fig8(cfg), None
    if figure == "fig9":
        return reproduce_fig9(cfg, calibrate=calibrate)
    if figure == "fig10":
        return reproduce_fig10(cfg), None
    raise ConfigError("figure", f"figura desconhecida {figure!r} (use {', '.join(FIGURES)})")


# ------------------------------------------------------------
# VARREDURA GENÉRICA
# ------------------------------------------------------------
def sweep_grid(cfg):
    lo, hi, n = cfg.get("sweep.min"), cfg.get("sweep.max"), cfg.count("sweep.points")
    scale = cfg.get("sweep.scale").lower()
    if scale == "log":
        return log_grid(lo, hi, n)
    if scale == "lin":
        return lin_grid(lo, hi, n)
    raise ConfigError("sweep.scale", f"escala desconhecida {scale!r} (use log | lin)")


def run_sweep(cfg):
    """Relatório completo por ponto da grade; linhas na ordem da grade."""
    key = cfg.get("sweep.key")
    if key not in KEYS:
        raise ConfigError(key, "chave desconhecida")
    if KEYS[key].kind is str:
        raise ConfigError(key, "a varredura exige uma chave numérica")
    if key.startswith("sweep."):
        raise ConfigError(key, "a varredura não pode alterar a própria grade")
    column = column_for(key)

    rows = []
    for value in sweep_grid(cfg):
        point = cfg.with_value(key, value)
        try:
            report, _ = run_capacity(point)
        except ChannelError as e:
            raise SweepPointError(value, e)
        rows.append({column: float(value), **report.as_row()})

    return pd.DataFrame(rows, columns=[column, "c1_bps", "c2_bps", "c3_bps", "cascade_bps", "bottleneck"])


# ------------------------------------------------------------
# SIMULAÇÃO DO ENLACE
# ------------------------------------------------------------
def random_bits(n_bits, p_one, seed):
    """Fonte on-off; fluxo aleatório separado dos usados por run_link."""
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)).spawn(1)[0])
    return (rng.random(int(n_bits)) < p_one).astype(int).tolist()


def run_simulation(cfg):
    """Retorna (SimResult, LinkTrace, BER analítica ou None)."""
    seed = cfg.seed
    relay, prop = cfg.relay(), cfg.propagation()
    p_one = cfg.probability("sim.p_one")

    bits = random_bits(cfg.count("sim.n_bits"), p_one, seed)
    result, trace = run_link(bits, relay, prop, seed)
    expected = analytic_ber(relay, prop, p_one)

    if expected is None:
        logger.info("[!] BER analítica indisponível (carga residual no T2M entre símbolos)")
    return result, trace, expected


def result_frame(result, expected=None):
    return pd.DataFrame(
        [{
            "ber_frac": result.ber,
            "analytic_ber_frac": expected,
            "throughput_bps": result.throughput,
            "trials_count": result.trials,
            "errors_count": result.errors,
            "seed_id": result.seed,
        }]
    )


# ------------------------------------------------------------
# CSV
# ------------------------------------------------------------
def write_csv(df, path, cfg):
    """CSV com uma linha `#` de proveniência e o cabeçalho; bytes estáveis."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"# {cfg.provenance()}\n")
        df.to_csv(fh, index=False, lineterminator="\n")
    logger.info("[OK] CSV gravado em %s (%d linhas)", p, len(df))
    return p

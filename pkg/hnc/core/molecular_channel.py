# hnc/core/molecular_channel.py
# -*- coding: utf-8 -*-

"""
Sub-canal molecular por difusão (C2).

A fórmula é implementada termo a termo, exatamente como impressa:

    C2 = 2W(1 + log2(P/(3W KB T)))            T1
         - 2 log2(π D d2)                     T2
         - (4 d2 / 3 ln2) √(π W / D)          T3
         + 2W x                               T4
         - 2W ln(W τ)                         T5
         - 2W ln Γ(x)                         T6
         - 2W (1 - x) ψ(x)                    T7

com x = 2 P Rd / (9 W² d2 KB T).

Modos de log:
    VERBATIM         -> exatamente como impresso (mistura log2 e ln)
    NATS_CONSISTENT  -> T5, T6 e T7 (termos em ln) divididos por ln 2

O resultado pode ser negativo em cantos extremos de parâmetros; ele é
devolvido sem clamp e o caso é sinalizado em log.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

from hnc.core.errors import DomainError, InvalidParameterError, NumericOverflowError, SweepPointError
from hnc.core.specfun import VALIDATED_RANGE, digamma, in_validated_range, ln_gamma
from hnc.core.utils import require_grid, require_positive

logger = logging.getLogger(__name__)

BOLTZMANN_K = 1.380649e-23  # J/K
_LN2 = math.log(2.0)


class LogMode(Enum):
    VERBATIM = "verbatim"
    NATS_CONSISTENT = "nats"

    @classmethod
    def parse(cls, text):
        t = str(text).strip().lower()
        for mode in cls:
            if t in (mode.value, mode.name.lower()):
                return mode
        raise InvalidParameterError(f"modo de log desconhecido: {text!r}")


# ============================================================
# PARÂMETROS
# ============================================================

@dataclass(frozen=True)
class MolecularChannelParams:
    bandwidth_W: float          # Hz
    mean_power_P: float         # W
    temperature_T: float        # K
    diffusion_D: float          # m²/s
    distance_d2: float          # m
    detector_radius_Rd: float   # m
    interval_tau: float | None = None  # s; None -> tau_factor / W
    tau_factor: float = 0.5     # τ = 1/(2W) por padrão

    def __post_init__(self):
        require_positive("bandwidth_W", self.bandwidth_W)
        require_positive("mean_power_P", self.mean_power_P)
        require_positive("temperature_T", self.temperature_T)
        require_positive("diffusion_D", self.diffusion_D)
        require_positive("distance_d2", self.distance_d2)
        require_positive("detector_radius_Rd", self.detector_radius_Rd)
        require_positive("tau_factor", self.tau_factor)
        if self.interval_tau is not None:
            require_positive("interval_tau", self.interval_tau)

    @property
    def tau(self):
        """Intervalo τ efetivo (fixo, ou atrelado à banda)."""
        if self.interval_tau is not None:
            return self.interval_tau
        return self.tau_factor / self.bandwidth_W


@dataclass(frozen=True)
class MolecularTerms:
    """Os sete termos da capacidade molecular, em bits/s (ou unidades mistas no modo verbatim)."""
    rate_term: float        # T1
    spread_term: float      # T2
    distance_term: float    # T3
    linear_x_term: float    # T4
    interval_term: float    # T5
    gamma_term: float       # T6
    digamma_term: float     # T7
    x: float

    def as_tuple(self):
        return (
            self.rate_term, self.spread_term, self.distance_term, self.linear_x_term,
            self.interval_term, self.gamma_term, self.digamma_term,
        )

    def total(self):
        return math.fsum(self.as_tuple())


# ============================================================
# ARGUMENTO x
# ============================================================

def gamma_argument(params):
    """x = 2 P Rd / (9 W² d2 KB T)."""
    try:
        den = 9.0 * params.bandwidth_W ** 2 * params.distance_d2 * BOLTZMANN_K * params.temperature_T
        x = 2.0 * params.mean_power_P * params.detector_radius_Rd / den
    except (OverflowError, ZeroDivisionError) as e:
        raise NumericOverflowError(f"argumento x não representável: {e}")

    if not math.isfinite(x) or x <= 0.0:
        raise NumericOverflowError(f"argumento x não representável ({x!r})")
    return x


# ============================================================
# TERMOS E CAPACIDADE
# ============================================================

def molecular_terms(params, mode=LogMode.VERBATIM):
    """Avalia os sete termos separadamente."""
    W = params.bandwidth_W
    P = params.mean_power_P
    kT = BOLTZMANN_K * params.temperature_T
    D = params.diffusion_D
    d2 = params.distance_d2

    x = gamma_argument(params)
    if not in_validated_range(x):
        lo, hi = VALIDATED_RANGE
        raise DomainError(f"x = {x:.6g} fora da faixa validada [{lo:g}, {hi:g}] das funções especiais")

    t1 = 2.0 * W * (1.0 + math.log2(P / (3.0 * W * kT)))
    t2 = -2.0 * math.log2(math.pi * D * d2)
    t3 = -(4.0 * d2 / (3.0 * _LN2)) * math.sqrt(math.pi * W / D)
    t4 = 2.0 * W * x
    t5 = -2.0 * W * math.log(W * params.tau)
    t6 = -2.0 * W * ln_gamma(x)
    t7 = -2.0 * W * (1.0 - x) * digamma(x)

    if mode is LogMode.NATS_CONSISTENT:
        t5, t6, t7 = t5 / _LN2, t6 / _LN2, t7 / _LN2

    return MolecularTerms(t1, t2, t3, t4, t5, t6, t7, x)


def capacity_molecular(params, mode=LogMode.VERBATIM):
    """C2 em bits/s. Valores negativos são devolvidos como estão."""
    if not isinstance(params, MolecularChannelParams):
        raise InvalidParameterError("capacity_molecular espera MolecularChannelParams")

    c2 = molecular_terms(params, mode).total()
    if not math.isfinite(c2):
        raise NumericOverflowError(f"capacidade molecular não finita em W={params.bandwidth_W!r}")

    if c2 < 0:
        logger.warning("[!] capacidade molecular negativa (%.6g bits/s) em W=%g Hz", c2, params.bandwidth_W)
    return c2


# ============================================================
# VARREDURA EM BANDA (Fig. 9)
# ============================================================

def sweep_bandwidth(base, w_grid, mode=LogMode.VERBATIM, workers=1):
    """
    Aplica capacity_molecular ponto a ponto sobre a grade de W.
    Com workers > 1 os pontos são avaliados em paralelo; a ordem da
    grade é sempre preservada no resultado.
    """
    grid = require_grid("w_grid", w_grid)

    def _point(w):
        try:
            return w, capacity_molecular(replace(base, bandwidth_W=w), mode)
        except (InvalidParameterError, DomainError) as e:
            raise SweepPointError(w, e)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_point, grid))

    return [_point(w) for w in grid]

# hnc/core/neural_channel.py
# -*- coding: utf-8 -*-

"""
Sub-canal neural (C3).

    H  = aσ e^{-aσ} - (1 - e^{-aσ}) ln(e^{-aσ})      (nats por sinal)
    C3 = a H / (1 + a δ)                              (nats/s)

Observação: a expressão impressa de H se reduz algebricamente a H = aσ,
logo C3 = a²σ / (1 + aδ) cresce sem saturar (assintoticamente linear em a).
A forma impressa é avaliada literalmente; os testes documentam a redução.
"""

import logging
import math
from dataclasses import dataclass, replace

from hnc.core.errors import InvalidParameterError, SweepPointError
from hnc.core.utils import require_grid, require_nonnegative, require_positive

logger = logging.getLogger(__name__)

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class NeuralChannelParams:
    input_rate_a: float         # pulsos/s
    refractory_delta: float     # s
    latency_sigma: float        # s

    def __post_init__(self):
        require_nonnegative("input_rate_a", self.input_rate_a)
        require_positive("refractory_delta", self.refractory_delta)
        require_positive("latency_sigma", self.latency_sigma)


# ------------------------------------------------------------
# INFORMAÇÃO POR SINAL
# ------------------------------------------------------------
def information_per_signal(a, sigma):
    """H(a, σ) em nats, avaliado como impresso."""
    a = require_nonnegative("a", a)
    sigma = require_positive("sigma", sigma)

    u = a * sigma
    decay = math.exp(-u)

    # ln(e^{-u}) literal; se e^{-u} sofre underflow o log vale exatamente -u
    log_decay = math.log(decay) if decay > 0.0 else -u

    return u * decay - (1.0 - decay) * log_decay


# ------------------------------------------------------------
# CAPACIDADE
# ------------------------------------------------------------
def rate_prefactor(a, delta):
    """a / (1 + a δ): taxa efetiva de sinais, limitada por 1/δ."""
    return a / (1.0 + a * delta)


def capacity_neural(params):
    """C3 = a H / (1 + a δ) em nats/s; exatamente 0 quando a = 0."""
    if not isinstance(params, NeuralChannelParams):
        raise InvalidParameterError("capacity_neural espera NeuralChannelParams")

    a = params.input_rate_a
    if a == 0:
        return 0.0

    h = information_per_signal(a, params.latency_sigma)
    return rate_prefactor(a, params.refractory_delta) * h


def capacity_neural_bits(params):
    """Mesma capacidade convertida para bits/s (÷ ln 2)."""
    return capacity_neural(params) / _LN2


def nats_to_bits(value):
    return value / _LN2


# ------------------------------------------------------------
# VARREDURA EM TAXA (Fig. 10)
# ------------------------------------------------------------
def sweep_input_rate(base, a_grid):
    """[(a, C3 em nats/s)] na ordem da grade."""
    grid = require_grid("a_grid", a_grid, allow_zero=True)
    out = []
    for a in grid:
        try:
            out.append((a, capacity_neural(replace(base, input_rate_a=a))))
        except InvalidParameterError as e:
            raise SweepPointError(a, e)
    return out

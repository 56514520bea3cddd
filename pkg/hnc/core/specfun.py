# hnc/core/specfun.py
# -*- coding: utf-8 -*-

"""
Núcleo de funções especiais usado pela capacidade molecular.

    ln_gamma(x)  -> ln Γ(x)
    digamma(x)   -> ψ(x) = d/dx ln Γ(x)

Implementação: aproximação de Lanczos (g = 7, n = 9) para x >= 0.5 e
fórmula de reflexão para 0 < x < 0.5. A digama é a derivada analítica
da mesma série de Lanczos:

    ln Γ(x) = ½ ln 2π + (x - ½) ln t - t + ln A(x),   t = x + g - ½
    ψ(x)    = ln t - g / t + A'(x) / A(x)

Funções puras, sem estado: seguras para uso concorrente.
"""

import math

from hnc.core.errors import DomainError

# faixa validada pelos testes (tolerâncias 1e-12 / 1e-10)
VALIDATED_RANGE = (1e-6, 1e6)

EULER_GAMMA = 0.57721566490153286061

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


def _check_argument(x, name):
    try:
        x = float(x)
    except (TypeError, ValueError):
        raise DomainError(f"{name}: argumento não numérico {x!r}")

    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name}: argumento deve ser finito e > 0 (recebido {x!r})")
    return x


def _lanczos_series(x):
    """Retorna (A(x), A'(x)) para x >= 0.5."""
    a = _LANCZOS_COEF[0]
    da = 0.0
    z = x - 1.0
    for k in range(1, len(_LANCZOS_COEF)):
        inv = 1.0 / (z + k)
        a += _LANCZOS_COEF[k] * inv
        da -= _LANCZOS_COEF[k] * inv * inv
    return a, da


# ------------------------------------------------------------
# LN GAMMA
# ------------------------------------------------------------
def ln_gamma(x):
    """ln Γ(x) para x > 0."""
    x = _check_argument(x, "ln_gamma")

    if x < 0.5:
        # reflexão: Γ(x) Γ(1 - x) = π / sin(πx)
        return _LOG_PI - math.log(math.sin(math.pi * x)) - ln_gamma(1.0 - x)

    a, _ = _lanczos_series(x)
    t = x + _LANCZOS_G - 0.5
    return _HALF_LOG_2PI + (x - 0.5) * math.log(t) - t + math.log(a)


# ------------------------------------------------------------
# DIGAMMA
# ------------------------------------------------------------
def digamma(x):
    """ψ(x) para x > 0."""
    x = _check_argument(x, "digamma")

    if x < 0.5:
        # reflexão: ψ(1 - x) - ψ(x) = π cot(πx)
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)

    a, da = _lanczos_series(x)
    t = x + _LANCZOS_G - 0.5
    return math.log(t) - _LANCZOS_G / t + da / a


def in_validated_range(x):
    lo, hi = VALIDATED_RANGE
    return lo <= x <= hi

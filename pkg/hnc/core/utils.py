# hnc/core/utils.py
# -*- coding: utf-8 -*-

import math

import numpy as np

from hnc.core.errors import InvalidParameterError


# ------------------------------------------------------------
# HELPER - conversão segura
# ------------------------------------------------------------
def to_float(x):
    try:
        return float(x)
    except (TypeError, ValueError):
        return np.nan


# ------------------------------------------------------------
# VALIDAÇÕES DE PARÂMETRO
# ------------------------------------------------------------
def require_positive(name, value):
    """Garante valor finito e estritamente positivo."""
    v = to_float(value)
    if not math.isfinite(v) or v <= 0:
        raise InvalidParameterError(f"{name} deve ser > 0 (recebido {value!r})")
    return v


def require_nonnegative(name, value):
    v = to_float(value)
    if not math.isfinite(v) or v < 0:
        raise InvalidParameterError(f"{name} deve ser >= 0 (recebido {value!r})")
    return v


def require_probability(name, value):
    v = to_float(value)
    if not (0.0 <= v <= 1.0):
        raise InvalidParameterError(f"{name} deve estar em [0, 1] (recebido {value!r})")
    return v


def require_count(name, value):
    """Contagens inteiras >= 1."""
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise InvalidParameterError(f"{name} deve ser inteiro >= 1 (recebido {value!r})")
    return int(value)


def require_grid(name, grid, allow_zero=False):
    """
    Grade não vazia, finita e estritamente crescente.
    Com allow_zero=True aceita o ponto 0 (ex.: taxa de entrada neural).
    """
    values = [to_float(g) for g in grid]
    if len(values) == 0:
        raise InvalidParameterError(f"{name}: grade vazia")

    for v in values:
        if not math.isfinite(v) or v < 0 or (v == 0 and not allow_zero):
            raise InvalidParameterError(f"{name}: ponto inválido {v!r}")

    if any(b <= a for a, b in zip(values, values[1:])):
        raise InvalidParameterError(f"{name}: grade deve ser estritamente crescente")

    return values


# ------------------------------------------------------------
# GRADES
# ------------------------------------------------------------
def log_grid(lo, hi, points):
    """Grade log-espaçada inclusiva [lo, hi]."""
    lo = require_positive("lo", lo)
    hi = require_positive("hi", hi)
    if points == 1:
        return [lo]
    return np.geomspace(lo, hi, int(points)).tolist()


def lin_grid(lo, hi, points):
    if points == 1:
        return [float(lo)]
    return np.linspace(float(lo), float(hi), int(points)).tolist()


# ------------------------------------------------------------
# ANÁLISE DE CURVAS
# ------------------------------------------------------------
def find_local_minima(values):
    """
    Índices de mínimos locais estritos no interior da curva
    (os extremos nunca contam).
    """
    y = np.asarray(values, dtype="float64")
    if y.size < 3:
        return []

    inner = (y[1:-1] < y[:-2]) & (y[1:-1] < y[2:])
    return (np.nonzero(inner)[0] + 1).tolist()


def refine_minimum_log(x, y, i):
    """
    Refina a posição de um mínimo discreto ajustando uma parábola
    em log(x) sobre os pontos i-1, i, i+1. Retorna (x_min, y_min).
    """
    if i <= 0 or i >= len(x) - 1:
        return float(x[i]), float(y[i])

    u = np.log(np.asarray(x[i - 1:i + 2], dtype="float64"))
    v = np.asarray(y[i - 1:i + 2], dtype="float64")

    a, b, c = np.polyfit(u, v, 2)
    if a <= 0:
        return float(x[i]), float(y[i])

    u_min = -b / (2 * a)
    # vértice fora do trio vizinho -> mantém o ponto discreto
    if not (u[0] <= u_min <= u[2]):
        return float(x[i]), float(y[i])

    return float(np.exp(u_min)), float(c - b * b / (4 * a))


def is_strictly_monotone(values, increasing=True):
    y = np.asarray(values, dtype="float64")
    d = np.diff(y)
    return bool(np.all(d > 0) if increasing else np.all(d < 0))


def log_distance_to_band(value, lo, hi):
    """Distância em décadas de `value` até a faixa [lo, hi] (0 se dentro)."""
    if value <= 0:
        return math.inf
    if value < lo:
        return math.log10(lo / value)
    if value > hi:
        return math.log10(value / hi)
    return 0.0

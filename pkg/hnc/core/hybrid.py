# hnc/core/hybrid.py
# -*- coding: utf-8 -*-

"""
Composição em cascata: C = min{C1, C2, C3}.

C é um limite SUPERIOR da capacidade fim a fim do canal híbrido
(direção do processamento de dados, C_H <= C). Nenhum C_H é estimado aqui.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

from hnc.core.errors import ChannelError, HncError, InvalidParameterError
from hnc.core.molecular_channel import LogMode, capacity_molecular
from hnc.core.neural_channel import capacity_neural_bits
from hnc.core.thz_channel import capacity as capacity_thz

logger = logging.getLogger(__name__)

BOUND_NOTE = "C é limite superior da capacidade fim a fim (C_H <= C); C_H não é calculado"


class Channel(Enum):
    THZ = "Thz"
    MOLECULAR = "Molecular"
    NEURAL = "Neural"


# desempate: o primeiro listado vence
TIE_BREAK_ORDER = (Channel.MOLECULAR, Channel.NEURAL, Channel.THZ)


@dataclass(frozen=True)
class CapacityReport:
    c1_thz: float           # bits/s
    c2_molecular: float     # bits/s
    c3_neural: float        # bits/s (convertido de nats/s)
    cascade_c: float        # bits/s
    bottleneck: Channel
    negative_capacity_flags: dict = field(default_factory=dict)
    bound_note: str = BOUND_NOTE

    def capacities(self):
        return {
            Channel.THZ: self.c1_thz,
            Channel.MOLECULAR: self.c2_molecular,
            Channel.NEURAL: self.c3_neural,
        }

    def as_row(self):
        return {
            "c1_bps": self.c1_thz,
            "c2_bps": self.c2_molecular,
            "c3_bps": self.c3_neural,
            "cascade_bps": self.cascade_c,
            "bottleneck": self.bottleneck.value,
        }


# ------------------------------------------------------------
# CASCATA
# ------------------------------------------------------------
def cascade_capacity(c1, c2, c3):
    """Mínimo das três capacidades e o canal gargalo."""
    values = {Channel.THZ: c1, Channel.MOLECULAR: c2, Channel.NEURAL: c3}

    for ch, v in values.items():
        try:
            ok = math.isfinite(float(v))
        except (TypeError, ValueError):
            ok = False
        if not ok:
            raise InvalidParameterError(f"capacidade não finita no canal {ch.value}: {v!r}")

    cascade = min(float(v) for v in values.values())
    bottleneck = next(ch for ch in TIE_BREAK_ORDER if float(values[ch]) == cascade)

    flags = {ch.value: float(v) < 0 for ch, v in values.items()}
    for name, neg in flags.items():
        if neg:
            logger.warning("[!] capacidade negativa repassada no canal %s", name)

    return CapacityReport(
        c1_thz=float(c1),
        c2_molecular=float(c2),
        c3_neural=float(c3),
        cascade_c=cascade,
        bottleneck=bottleneck,
        negative_capacity_flags=flags,
    )


# ------------------------------------------------------------
# RELATÓRIO COMPLETO
# ------------------------------------------------------------
def full_report(thz, mol, neu, mode=LogMode.VERBATIM):
    """Avalia os três sub-canais e delega a cascade_capacity."""
    steps = (
        (Channel.THZ, lambda: capacity_thz(thz)),
        (Channel.MOLECULAR, lambda: capacity_molecular(mol, mode)),
        (Channel.NEURAL, lambda: capacity_neural_bits(neu)),
    )

    results = {}
    for ch, fn in steps:
        try:
            results[ch] = fn()
        except HncError as e:
            logger.error("[ERRO] canal %s: %s", ch.value, e)
            raise ChannelError(ch.value, e)

    report = cascade_capacity(results[Channel.THZ], results[Channel.MOLECULAR], results[Channel.NEURAL])
    logger.info(
        "[OK] C1=%.6g C2=%.6g C3=%.6g bits/s -> C=%.6g (gargalo %s)",
        report.c1_thz, report.c2_molecular, report.c3_neural, report.cascade_c, report.bottleneck.value,
    )
    return report

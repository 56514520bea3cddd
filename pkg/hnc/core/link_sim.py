# hnc/core/link_sim.py
# -*- coding: utf-8 -*-

"""
Simulação comportamental do enlace fim a fim:

    pulsos THz -> relé T2M (carga/limiar/reset) -> difusão 3-D até esfera
    absorvente -> M2N (detector + liberação de Ca²⁺) -> vesículas sinápticas
    -> spike pós-sináptico -> decodificação N2M por janela

Modulação on-off: bit 1 = rajada de pulsos, bit 0 = silêncio.

Convenção de janelas: a janela i cobre (iT, (i+1)T]. Os pulsos do bit i
saem em iT + (k+1)·Δ, e o spike da janela i é emitido em (i+1)T.

Propagação: probabilidade de captura Rd/d2; tempo de primeira passagem,
condicionado à captura, com distribuição de Lévy de escala (d2 - Rd)²/(2D).
Chegadas após min(liberação + max_wait, fim da janela) são descartadas
(sem interferência intersimbólica).
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd
from scipy import stats

from hnc.core.errors import InvalidParameterError, LinkConsistencyError
from hnc.core.utils import (
    require_count,
    require_positive,
    require_probability,
)

logger = logging.getLogger(__name__)

# tolerância relativa na atribuição de instantes às janelas
_WINDOW_EPS = 1e-10


# ============================================================
# EVENTOS E TRAÇO
# ============================================================

class EventKind(Enum):
    # a ordem de declaração desempata eventos no mesmo instante
    PULSE_SENT = "PulseSent"
    CHARGE_THRESHOLD_CROSSED = "ChargeThresholdCrossed"
    MOLECULES_RELEASED = "MoleculesReleased"
    MOLECULE_ARRIVED = "MoleculeArrived"
    IONS_RELEASED = "IonsReleased"
    VESICLE_FIRED = "VesicleFired"
    SPIKE_EMITTED = "SpikeEmitted"
    BIT_DECODED = "BitDecoded"


_KIND_RANK = {kind: i for i, kind in enumerate(EventKind)}


@dataclass(frozen=True)
class Event:
    time: float
    kind: EventKind
    payload: dict = field(default_factory=dict)

    def payload_text(self):
        return ";".join(f"{k}={self.payload[k]!r}" for k in sorted(self.payload))


@dataclass
class LinkTrace:
    events: list = field(default_factory=list)
    decoded_bits: list = field(default_factory=list)
    sent_bits: list = field(default_factory=list)

    def add(self, time, kind, **payload):
        self.events.append(Event(float(time), kind, payload))

    def finalize(self):
        """Ordena por tempo (estável, desempate pelo tipo do evento)."""
        self.events.sort(key=lambda e: (e.time, _KIND_RANK[e.kind]))
        return self

    def of_kind(self, kind):
        return [e for e in self.events if e.kind is kind]

    def to_frame(self):
        return pd.DataFrame(
            {
                "time_s": [e.time for e in self.events],
                "event_kind": [e.kind.value for e in self.events],
                "payload": [e.payload_text() for e in self.events],
            },
            columns=["time_s", "event_kind", "payload"],
        )


# ============================================================
# CONFIGURAÇÕES
# ============================================================

@dataclass(frozen=True)
class RelayConfig:
    t2m_charge_threshold: float = 1.0
    t2m_charge_per_pulse: float = 1.0
    t2m_molecules_per_release: int = 20
    m2n_detect_threshold: int = 5
    m2n_ions_per_release: int = 10
    vesicle_release_prob_per_ca: float = 0.5
    vesicle_count: int = 4
    molecules_per_vesicle: int = 50
    n2m_decision_threshold: int = 1
    t2m_pulses_per_bit: int = 1
    pulse_interval_s: float = 1e-6

    def __post_init__(self):
        require_positive("t2m_charge_threshold", self.t2m_charge_threshold)
        require_positive("t2m_charge_per_pulse", self.t2m_charge_per_pulse)
        require_positive("m2n_detect_threshold", self.m2n_detect_threshold)
        require_positive("n2m_decision_threshold", self.n2m_decision_threshold)
        require_positive("pulse_interval_s", self.pulse_interval_s)
        require_count("t2m_molecules_per_release", self.t2m_molecules_per_release)
        require_count("m2n_ions_per_release", self.m2n_ions_per_release)
        require_count("vesicle_count", self.vesicle_count)
        require_count("molecules_per_vesicle", self.molecules_per_vesicle)
        require_count("t2m_pulses_per_bit", self.t2m_pulses_per_bit)
        require_probability("vesicle_release_prob_per_ca", self.vesicle_release_prob_per_ca)


@dataclass(frozen=True)
class PropagationConfig:
    diffusion_D: float = 1e-9
    distance_d2: float = 1e-4
    detector_radius_Rd: float = 5e-5
    symbol_period: float = 10.0
    max_wait: float = 10.0

    def __post_init__(self):
        require_positive("diffusion_D", self.diffusion_D)
        require_positive("distance_d2", self.distance_d2)
        require_positive("detector_radius_Rd", self.detector_radius_Rd)
        require_positive("symbol_period", self.symbol_period)
        require_positive("max_wait", self.max_wait)
        if self.detector_radius_Rd >= self.distance_d2:
            raise InvalidParameterError("detector_radius_Rd deve ser menor que distance_d2")

    @property
    def hit_probability(self):
        return self.detector_radius_Rd / self.distance_d2

    @property
    def levy_scale(self):
        return (self.distance_d2 - self.detector_radius_Rd) ** 2 / (2.0 * self.diffusion_D)


@dataclass(frozen=True)
class SimResult:
    ber: float
    throughput: float   # bits/s corretos: (1 - BER) / T
    trials: int         # símbolos simulados
    seed: int
    errors: int = 0


# ============================================================
# JANELAS
# ============================================================

def window_index(t, window):
    """Índice da janela (iT, (i+1)T] que contém t; t = 0 cai na janela 0."""
    return max(int(math.ceil(t / window - _WINDOW_EPS)) - 1, 0)


def _n_windows_for(times, window, n_windows):
    if n_windows is not None:
        return require_count("n_windows", n_windows)
    if len(times) == 0:
        return 0
    return window_index(max(times), window) + 1


def _window_counts(times, window, n_windows):
    counts = np.zeros(n_windows, dtype=int)
    crossing = {}
    for t in times:
        i = window_index(t, window)
        if i < n_windows:
            counts[i] += 1
            crossing.setdefault(i, []).append(t)
    return counts, crossing


# ============================================================
# T2M - acumulador de carga
# ============================================================

class T2MRelay:
    """
    Cada pulso soma t2m_charge_per_pulse. Ao atingir o limiar o relé
    libera t2m_molecules_per_release moléculas e a carga volta a zero.
    """

    def __init__(self, cfg):
        self.cfg = cfg
        self.charge = 0.0

    def receive_pulse(self, t, trace=None):
        self.charge += self.cfg.t2m_charge_per_pulse
        if self.charge < self.cfg.t2m_charge_threshold:
            return None

        if trace is not None:
            trace.add(t, EventKind.CHARGE_THRESHOLD_CROSSED, charge=self.charge)
        self.charge = 0.0

        release = Event(float(t), EventKind.MOLECULES_RELEASED, {"molecules": self.cfg.t2m_molecules_per_release})
        if trace is not None:
            trace.events.append(release)
        return release


def simulate_t2m(pulse_times, cfg, relay=None, trace=None):
    """Lista de eventos de liberação de moléculas gerados pelos pulsos."""
    times = [float(t) for t in pulse_times]
    if any(b < a for a, b in zip(times, times[1:])):
        raise InvalidParameterError("pulse_times deve estar ordenado")

    relay = relay or T2MRelay(cfg)
    releases = []
    for t in times:
        ev = relay.receive_pulse(t, trace)
        if ev is not None:
            releases.append(ev)
    return releases


# ============================================================
# PROPAGAÇÃO - primeira passagem até esfera absorvente
# ============================================================

def _first_passage(prop, rng, n_molecules):
    # as duas amostragens ocorrem sempre, para a sequência aleatória não depender dos resultados
    hits = rng.random(n_molecules) < prop.hit_probability
    times = stats.levy.rvs(scale=prop.levy_scale, size=n_molecules, random_state=rng)
    arrived = hits & (times <= prop.max_wait)
    return np.where(arrived, times, np.nan)


def sample_first_passage(prop, rng_seed, n_molecules):
    """
    Tempo de chegada de cada molécula (s), ou NaN quando ela nunca chega
    dentro de max_wait. Determinístico para a mesma semente.
    """
    n = require_count("n_molecules", n_molecules)
    rng = np.random.default_rng(rng_seed)
    return _first_passage(prop, rng, n)


def arrival_probability(prop, horizon=None):
    """P(molécula chega até `horizon`) = (Rd/d2) · erfc((d2 - Rd) / √(4 D t))."""
    horizon = prop.max_wait if horizon is None else min(horizon, prop.max_wait)
    if horizon <= 0:
        return 0.0
    return prop.hit_probability * float(stats.levy.cdf(horizon, scale=prop.levy_scale))


# ============================================================
# M2N + SINAPSE
# ============================================================

def simulate_m2n_and_synapse(arrivals, cfg, rng_seed, window, n_windows=None, trace=None):
    """
    Por janela: se as chegadas atingem m2n_detect_threshold, libera Ca²⁺;
    cada vesícula dispara com probabilidade vesicle_release_prob_per_ca e,
    havendo ao menos um disparo, um spike sai no fim da janela.
    Retorna os instantes de spike.
    """
    window = require_positive("window", window)
    times = [float(t) for t in arrivals if not math.isnan(t)]
    if any(b < a for a, b in zip(times, times[1:])):
        raise InvalidParameterError("arrivals deve estar em ordem temporal")

    n_windows = _n_windows_for(times, window, n_windows)
    rng = np.random.default_rng(rng_seed)
    counts, by_window = _window_counts(times, window, n_windows)
    thr = cfg.m2n_detect_threshold
    p = cfg.vesicle_release_prob_per_ca

    spikes = []
    for i in range(n_windows):
        if counts[i] < thr:
            continue

        t_detect = by_window[i][int(math.ceil(thr)) - 1]
        if trace is not None:
            trace.add(t_detect, EventKind.IONS_RELEASED, ions=cfg.m2n_ions_per_release, window=i)

        # um sorteio por vesícula, sempre o mesmo número de sorteios por janela detectada
        fired = rng.random(cfg.vesicle_count) < p
        n_fired = int(fired.sum())
        if trace is not None:
            for _ in range(n_fired):
                trace.add(t_detect, EventKind.VESICLE_FIRED, molecules=cfg.molecules_per_vesicle, window=i)

        if n_fired > 0:
            t_spike = (i + 1) * window
            spikes.append(t_spike)
            if trace is not None:
                trace.add(t_spike, EventKind.SPIKE_EMITTED, window=i, vesicles=n_fired)

    return spikes


def simulate_m2t(arrivals, cfg, window, n_windows=None, trace=None):
    """
    Caminho de retorno M2T: o mesmo detector/comparador do M2N liga o
    gerador de pulsos; um pulso gaussiano por janela detectada, no instante
    em que o limiar é cruzado.
    """
    window = require_positive("window", window)
    times = sorted(float(t) for t in arrivals if not math.isnan(t))
    n_windows = _n_windows_for(times, window, n_windows)
    counts, by_window = _window_counts(times, window, n_windows)
    thr = cfg.m2n_detect_threshold

    pulses = []
    for i in range(n_windows):
        if counts[i] >= thr:
            t = by_window[i][int(math.ceil(thr)) - 1]
            pulses.append(t)
            if trace is not None:
                trace.add(t, EventKind.PULSE_SENT, shape="gaussian", window=i)
    return pulses


# ============================================================
# N2M - decodificação
# ============================================================

def decode_n2m(spikes, window, cfg, n_windows=None, trace=None):
    """
    Resposta retangular do tamanho da janela: bit = 1 quando a contagem de
    spikes na janela atinge n2m_decision_threshold.
    """
    window = require_positive("window", window)
    spikes = [float(t) for t in spikes]
    n_windows = _n_windows_for(spikes, window, n_windows)
    counts, _ = _window_counts(spikes, window, n_windows)

    bits = [int(c >= cfg.n2m_decision_threshold) for c in counts]
    if trace is not None:
        for i, b in enumerate(bits):
            trace.add((i + 1) * window, EventKind.BIT_DECODED, bit=b, window=i)
    return bits


# ============================================================
# ENLACE COMPLETO
# ============================================================

def check_link_consistency(relay, prop):
    burst_charge = relay.t2m_pulses_per_bit * relay.t2m_charge_per_pulse
    if burst_charge < relay.t2m_charge_threshold:
        raise LinkConsistencyError(
            f"rajada de {relay.t2m_pulses_per_bit} pulso(s) x {relay.t2m_charge_per_pulse} "
            f"< limiar T2M {relay.t2m_charge_threshold}"
        )
    if relay.t2m_pulses_per_bit * relay.pulse_interval_s >= prop.symbol_period:
        raise LinkConsistencyError("a rajada de pulsos não cabe no período de símbolo")


def _burst_pulse_times(bits, relay, period):
    return [
        i * period + (k + 1) * relay.pulse_interval_s
        for i, b in enumerate(bits) if b
        for k in range(relay.t2m_pulses_per_bit)
    ]


def run_link(bits, relay, prop, seed):
    """
    Transmite `bits` pelo enlace completo. Retorna (SimResult, LinkTrace),
    reprodutíveis a partir de `seed`.
    """
    bits = [int(b) for b in bits]
    if len(bits) == 0:
        raise InvalidParameterError("bits vazio")
    if any(b not in (0, 1) for b in bits):
        raise InvalidParameterError("bits deve conter apenas 0 e 1")

    check_link_consistency(relay, prop)

    period = prop.symbol_period
    n = len(bits)
    trace = LinkTrace(sent_bits=list(bits))

    # fluxos independentes: propagação e sinapse (números aleatórios comuns entre configurações)
    prop_seed, syn_seed = np.random.SeedSequence(int(seed)).generate_state(2)

    # 1 - THz -> T2M
    pulse_times = _burst_pulse_times(bits, relay, period)
    for t in pulse_times:
        trace.add(t, EventKind.PULSE_SENT)
    releases = simulate_t2m(pulse_times, relay, trace=trace)

    # 2 - difusão
    arrivals = []
    if releases:
        mpr = relay.t2m_molecules_per_release
        fp = sample_first_passage(prop, int(prop_seed), len(releases) * mpr).reshape(len(releases), mpr)

        rel_t = np.array([r.time for r in releases])
        cutoff = np.array([(window_index(t, period) + 1) * period for t in rel_t])
        arrive_t = rel_t[:, None] + fp
        ok = ~np.isnan(fp) & (arrive_t <= cutoff[:, None])

        rows, cols = np.nonzero(ok)
        for r, c in zip(rows.tolist(), cols.tolist()):
            t = float(arrive_t[r, c])
            arrivals.append(t)
            trace.add(t, EventKind.MOLECULE_ARRIVED, molecules=1, release_time=float(rel_t[r]))
        arrivals.sort()

    # 3 - M2N + sinapse
    spikes = simulate_m2n_and_synapse(arrivals, relay, int(syn_seed), period, n, trace=trace)

    # 4 - N2M
    decoded = decode_n2m(spikes, period, relay, n, trace=trace)

    errors = sum(int(a != b) for a, b in zip(bits, decoded))
    ber = errors / n
    throughput = (n - errors) / (n * period)

    trace.decoded_bits = decoded
    trace.finalize()

    logger.info("[OK] enlace: %d bits, %d erros, BER=%.6g, vazão=%.6g bits/s", n, errors, ber, throughput)
    return SimResult(ber=ber, throughput=throughput, trials=n, seed=int(seed), errors=errors), trace


# ============================================================
# PROBABILIDADES ANALÍTICAS POR SÍMBOLO
# ============================================================

def symbol_detection_probability(relay, prop):
    """
    P(bit 1 entregue como 1) partindo de carga zero. Retorna None quando a
    rajada deixa carga residual (o estado passa a depender dos símbolos anteriores).
    """
    t2m = T2MRelay(relay)
    offsets = [
        ev.time for ev in simulate_t2m(
            [(k + 1) * relay.pulse_interval_s for k in range(relay.t2m_pulses_per_bit)], relay, relay=t2m
        )
    ]
    if t2m.charge != 0.0 or not offsets:
        return None

    # soma de binomiais independentes (uma por liberação)
    pmf = np.array([1.0])
    for off in offsets:
        p = arrival_probability(prop, prop.symbol_period - off)
        k = np.arange(relay.t2m_molecules_per_release + 1)
        pmf = np.convolve(pmf, stats.binom.pmf(k, relay.t2m_molecules_per_release, p))

    thr = int(math.ceil(relay.m2n_detect_threshold))
    p_detect = float(pmf[thr:].sum()) if thr < pmf.size else 0.0
    p_spike = 1.0 - (1.0 - relay.vesicle_release_prob_per_ca) ** relay.vesicle_count

    # no máximo um spike por janela
    if relay.n2m_decision_threshold > 1:
        return 0.0
    return p_detect * p_spike


def analytic_ber(relay, prop, p_one=0.5):
    """BER esperada: bits 0 nunca viram 1 (sem interferência intersimbólica)."""
    p11 = symbol_detection_probability(relay, prop)
    if p11 is None:
        return None
    return p_one * (1.0 - p11)

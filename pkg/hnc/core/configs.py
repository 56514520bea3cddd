# hnc/core/configs.py
# -*- coding: utf-8 -*-

"""
Configuração de execução (RunConfig).

Tabela plana de chaves pontuadas com default tipado, etiqueta de origem
e descrição:

    [PAPER]       valor declarado nos parâmetros de referência
    [CALIBRATED]  valor escolhido pela calibração da Fig. 9
    [CHOSEN]      escolha nossa, sem valor de referência

Precedência: defaults < arquivo `key = value` < flags da CLI.
O caminho do arquivo também pode vir de HNC_CONFIG (ambiente ou .env).
"""

import logging
import math
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import dotenv_values

from hnc.core.errors import ConfigError, InvalidParameterError
from hnc.core.link_sim import PropagationConfig, RelayConfig
from hnc.core.molecular_channel import LogMode, MolecularChannelParams
from hnc.core.neural_channel import NeuralChannelParams
from hnc.core.thz_channel import PathLossModel, SimplifiedThzParams, ThzChannelParams
from hnc.core.utils import require_count, require_probability

logger = logging.getLogger(__name__)

ENV_CONFIG_PATH = "HNC_CONFIG"


# ============================================================
# 🔧 LEITURA DE VARIÁVEIS (ambiente + .env local)
# ============================================================
def getenv(key: str) -> str:
    """
    Ordem de prioridade:
    1) os.environ
    2) arquivo .env no diretório de trabalho
    Sempre aplica strip().
    """
    val = os.getenv(key)
    if val is not None and val.strip() != "":
        return val.strip()

    try:
        val = dotenv_values(".env").get(key)
        if val:
            return str(val).strip()
    except OSError:
        pass

    return ""


# ============================================================
# TABELA DE DEFAULTS
# ============================================================

@dataclass(frozen=True)
class ConfigKey:
    name: str
    default: object
    kind: type
    tag: str
    description: str
    unit: str | None = None  # sufixo de coluna quando o nome não traz unidade


def _k(name, default, tag, description, unit=None):
    return ConfigKey(name, default, type(default), tag, description, unit)


DEFAULTS = (
    # THz (soma por sub-bandas)
    _k("thz.f_low_hz", 1.0e12, "CHOSEN", "limite inferior da banda THz"),
    _k("thz.f_high_hz", 1.1e12, "CHOSEN", "limite superior da banda THz"),
    _k("thz.delta_f_hz", 1.0e10, "CHOSEN", "largura de cada sub-banda"),
    _k("thz.distance_m", 0.01, "CHOSEN", "distância d1 transmissor-relé T2M"),
    _k("thz.tx_psd_w_per_hz", 1.0e-14, "CHOSEN", "DEP do sinal transmitido"),
    _k("thz.noise_psd_w_per_hz", 1.0e-20, "CHOSEN", "DEP do ruído"),
    _k("thz.absorption_per_m", 0.0, "CHOSEN", "coeficiente de absorção molecular k (0 = espaço livre)"),
    # THz (forma simplificada, Fig. 8)
    _k("thz.simplified.bandwidth_hz", 1.0e11, "CHOSEN", "banda B da forma simplificada"),
    _k("thz.simplified.snr_linear", 1.0e6, "CHOSEN", "SNR linear antes da perda de percurso"),
    _k("thz.simplified.center_hz", 1.0e12, "CHOSEN", "frequência central usada na perda"),
    # molecular
    _k("mol.bandwidth_hz", 20.0, "CHOSEN", "banda W do canal molecular"),
    _k("mol.power_w", 1.0e-12, "PAPER", "potência média P"),
    _k("mol.temperature_k", 300.0, "PAPER", "temperatura T"),
    _k("mol.diffusion_m2_per_s", 1.0e-9, "PAPER", "coeficiente de difusão D"),
    _k("mol.distance_m", 1.0e-4, "PAPER", "distância d2"),
    _k("mol.detector_radius_m", 1.0e-5, "CHOSEN", "raio do detector Rd"),
    _k("mol.tau_factor", 0.5, "CHOSEN", "τ = tau_factor / W", "ratio"),
    # Fig. 9
    _k("fig9.detector_radius_m", 1.0e-7, "CALIBRATED", "Rd usado na reprodução da Fig. 9"),
    _k("fig9.tau_factor", 0.1, "CALIBRATED", "τ = tau_factor / W na reprodução da Fig. 9", "ratio"),
    _k("fig9.w_min_hz", 1.0, "CHOSEN", "início da grade de banda"),
    _k("fig9.w_max_hz", 200.0, "CHOSEN", "fim da grade de banda"),
    _k("fig9.points", 200, "CHOSEN", "pontos log-espaçados da grade de banda", "count"),
    # neural
    _k("neu.input_rate_pps", 1000.0, "CHOSEN", "taxa de entrada a (pulsos/s)"),
    _k("neu.refractory_s", 1.0e-3, "PAPER", "período refratário δ"),
    _k("neu.latency_s", 5.0e-6, "PAPER", "latência σ"),
    # Fig. 8 / Fig. 10
    _k("fig8.d_min_m", 1.0e-3, "CHOSEN", "início da grade de distância"),
    _k("fig8.d_max_m", 1.0, "CHOSEN", "fim da grade de distância"),
    _k("fig8.points", 60, "CHOSEN", "pontos log-espaçados da grade de distância", "count"),
    _k("fig10.a_max_pps", 5000.0, "CHOSEN", "fim da grade de taxa (início em 0)"),
    _k("fig10.points", 100, "CHOSEN", "pontos lineares da grade de taxa", "count"),
    # relés
    _k("relay.t2m_charge_threshold", 1.0, "CHOSEN", "limiar de carga do T2M", "au"),
    _k("relay.t2m_charge_per_pulse", 1.0, "CHOSEN", "carga depositada por pulso THz", "au"),
    _k("relay.t2m_pulses_per_bit", 1, "CHOSEN", "pulsos por rajada de bit 1", "count"),
    _k("relay.pulse_interval_s", 1.0e-6, "CHOSEN", "espaçamento dos pulsos da rajada"),
    _k("relay.t2m_molecules_per_release", 20, "CHOSEN", "moléculas por liberação do T2M", "count"),
    _k("relay.m2n_detect_threshold", 5, "CHOSEN", "chegadas por janela para disparar o M2N", "count"),
    _k("relay.m2n_ions_per_release", 10, "CHOSEN", "íons Ca²⁺ por liberação", "count"),
    _k("relay.vesicle_release_prob_per_ca", 0.5, "CHOSEN", "probabilidade de disparo por vesícula", "prob"),
    _k("relay.vesicle_count", 4, "CHOSEN", "vesículas por sinapse", "count"),
    _k("relay.molecules_per_vesicle", 50, "CHOSEN", "neurotransmissores por vesícula", "count"),
    _k("relay.n2m_decision_threshold", 1, "CHOSEN", "spikes por janela para decidir bit 1", "count"),
    # propagação
    _k("prop.diffusion_m2_per_s", 1.0e-9, "PAPER", "coeficiente de difusão D"),
    _k("prop.distance_m", 1.0e-4, "PAPER", "distância d2 da fonte ao detector"),
    _k("prop.detector_radius_m", 5.0e-5, "CHOSEN", "raio da esfera absorvente"),
    _k("prop.symbol_period_s", 10.0, "CHOSEN", "período de símbolo T"),
    _k("prop.max_wait_s", 10.0, "CHOSEN", "espera máxima por chegada"),
    # simulação / varredura / execução
    _k("sim.n_bits", 1000, "CHOSEN", "bits aleatórios transmitidos", "count"),
    _k("sim.p_one", 0.5, "CHOSEN", "probabilidade de bit 1 na fonte", "prob"),
    _k("sweep.key", "neu.input_rate_pps", "CHOSEN", "chave numérica varrida pelo comando sweep"),
    _k("sweep.min", 1.0, "CHOSEN", "início da varredura"),
    _k("sweep.max", 1.0e4, "CHOSEN", "fim da varredura"),
    _k("sweep.points", 20, "CHOSEN", "pontos da varredura", "count"),
    _k("sweep.scale", "log", "CHOSEN", "espaçamento da grade (log | lin)"),
    _k("run.seed", 12345, "CHOSEN", "semente da simulação", "id"),
    _k("run.mode", "verbatim", "CHOSEN", "modo de log do canal molecular (verbatim | nats)"),
    _k("run.workers", 1, "CHOSEN", "threads nas varreduras de banda", "count"),
)

KEYS = {k.name: k for k in DEFAULTS}


def column_for(key):
    """Cabeçalho CSV de uma chave: o próprio nome, ou nome + sufixo de unidade."""
    unit = KEYS[key].unit
    return key if unit is None else f"{key}_{unit}"


_MISSING = None
_FLOAT_EXACT_INT = 2 ** 53


# ============================================================
# CONVERSÃO DE VALORES
# ============================================================

def _coerce(key, raw):
    entry = KEYS[key]
    text = str(raw).strip()

    if entry.kind is str:
        return text

    if entry.kind is int:
        try:
            return int(text)
        except ValueError:
            pass

    try:
        value = float(text)
    except ValueError:
        raise ConfigError(key, f"valor não numérico {text!r}")
    if not math.isfinite(value):
        raise ConfigError(key, f"valor não finito {text!r}")

    if entry.kind is int:
        # formas como 2e3; acima de 2^53 o float já perdeu dígitos
        if not value.is_integer() or abs(value) >= _FLOAT_EXACT_INT:
            raise ConfigError(key, f"esperado inteiro exato, recebido {text!r}")
        return int(value)
    return value


def _render_value(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ============================================================
# RUNCONFIG
# ============================================================

class RunConfig:
    def __init__(self, values=None, source="defaults"):
        self._values = {k.name: k.default for k in DEFAULTS}
        self.source = source
        for key, value in (values or {}).items():
            self.set(key, value)

    # ------------------------------------------------------------
    # CARGA
    # ------------------------------------------------------------
    @classmethod
    def from_text(cls, text, source="<texto>"):
        cfg = cls(source=source)
        for lineno, line in enumerate(text.splitlines(), start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            if "=" not in body:
                raise ConfigError(f"linha {lineno}", f"esperado 'chave = valor' em {source}")
            key, raw = (part.strip() for part in body.split("=", 1))
            cfg.set(key, raw)
        return cfg

    @classmethod
    def from_file(cls, path):
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigError(str(p), f"não foi possível ler o arquivo: {e}")
        logger.info("[OK] configuração lida de %s", p)
        return cls.from_text(text, source=str(p))

    @classmethod
    def load(cls, path=None):
        """Arquivo explícito, senão HNC_CONFIG, senão apenas os defaults."""
        path = path or getenv(ENV_CONFIG_PATH)
        if path:
            return cls.from_file(path)
        return cls()

    # ------------------------------------------------------------
    # ACESSO
    # ------------------------------------------------------------
    def set(self, key, raw):
        if key not in KEYS:
            raise ConfigError(key, "chave desconhecida")
        if raw is None or str(raw).strip() == "":
            # valor vazio remove o default
            self._values[key] = _MISSING
            return self
        self._values[key] = _coerce(key, raw)
        return self

    def get(self, key):
        if key not in KEYS:
            raise ConfigError(key, "chave desconhecida")
        value = self._values[key]
        if value is _MISSING:
            raise ConfigError(key, "valor ausente (chave obrigatória sem default)")
        return value

    def __getitem__(self, key):
        return self.get(key)

    def with_value(self, key, raw):
        """Cópia com uma chave alterada (usada nas varreduras)."""
        clone = RunConfig(source=self.source)
        clone._values = dict(self._values)
        return clone.set(key, raw)

    def items(self):
        return sorted(self._values.items())

    # ------------------------------------------------------------
    # SAÍDA
    # ------------------------------------------------------------
    def render(self):
        """Texto do print-config: `key = value  # [TAG] descrição`, ordenado."""
        lines = []
        for key, value in self.items():
            entry = KEYS[key]
            shown = "" if value is _MISSING else _render_value(value)
            lines.append(f"{key} = {shown}  # [{entry.tag}] {entry.description}")
        return "\n".join(lines) + "\n"

    def provenance(self):
        """Configuração efetiva em uma única linha (comentário dos CSVs)."""
        parts = [f"{k}={'' if v is _MISSING else _render_value(v)}" for k, v in self.items()]
        return "hnc config: " + "; ".join(parts)

    # ------------------------------------------------------------
    # CONSTRUTORES DE PARÂMETROS
    # ------------------------------------------------------------
    def _build(self, section, factory):
        try:
            return factory()
        except InvalidParameterError as e:
            raise ConfigError(section, str(e))

    @property
    def mode(self):
        try:
            return LogMode.parse(self.get("run.mode"))
        except InvalidParameterError as e:
            raise ConfigError("run.mode", str(e))

    @property
    def seed(self):
        value = self.get("run.seed")
        if value < 0:
            raise ConfigError("run.seed", "a semente deve ser >= 0")
        return value

    def count(self, key):
        """Contagem inteira >= 1 (pontos de grade, bits)."""
        return self._build(key, lambda: require_count(key, self.get(key)))

    def probability(self, key):
        return self._build(key, lambda: require_probability(key, self.get(key)))

    def path_loss(self):
        return self._build("thz.absorption_per_m", lambda: PathLossModel(self.get("thz.absorption_per_m")))

    def thz_params(self):
        g = self.get
        return self._build("thz", lambda: ThzChannelParams(
            f_low=g("thz.f_low_hz"),
            f_high=g("thz.f_high_hz"),
            delta_f=g("thz.delta_f_hz"),
            distance_d1=g("thz.distance_m"),
            tx_psd=g("thz.tx_psd_w_per_hz"),
            noise_psd=g("thz.noise_psd_w_per_hz"),
            path_loss=self.path_loss(),
        ))

    def thz_simplified(self):
        g = self.get
        return self._build("thz.simplified", lambda: SimplifiedThzParams(
            bandwidth_B=g("thz.simplified.bandwidth_hz"),
            snr_linear=g("thz.simplified.snr_linear"),
            center_freq=g("thz.simplified.center_hz"),
            distance_d1=g("thz.distance_m"),
            path_loss=self.path_loss(),
        ))

    def molecular_params(self):
        g = self.get
        return self._build("mol", lambda: MolecularChannelParams(
            bandwidth_W=g("mol.bandwidth_hz"),
            mean_power_P=g("mol.power_w"),
            temperature_T=g("mol.temperature_k"),
            diffusion_D=g("mol.diffusion_m2_per_s"),
            distance_d2=g("mol.distance_m"),
            detector_radius_Rd=g("mol.detector_radius_m"),
            tau_factor=g("mol.tau_factor"),
        ))

    def fig9_params(self):
        """Parâmetros do canal molecular com o (Rd, τ) calibrado."""
        base = self.molecular_params()
        g = self.get
        return self._build("fig9", lambda: MolecularChannelParams(
            bandwidth_W=base.bandwidth_W,
            mean_power_P=base.mean_power_P,
            temperature_T=base.temperature_T,
            diffusion_D=base.diffusion_D,
            distance_d2=base.distance_d2,
            detector_radius_Rd=g("fig9.detector_radius_m"),
            tau_factor=g("fig9.tau_factor"),
        ))

    def neural_params(self):
        g = self.get
        return self._build("neu", lambda: NeuralChannelParams(
            input_rate_a=g("neu.input_rate_pps"),
            refractory_delta=g("neu.refractory_s"),
            latency_sigma=g("neu.latency_s"),
        ))

    def relay(self):
        g = self.get
        return self._build("relay", lambda: RelayConfig(
            t2m_charge_threshold=g("relay.t2m_charge_threshold"),
            t2m_charge_per_pulse=g("relay.t2m_charge_per_pulse"),
            t2m_molecules_per_release=g("relay.t2m_molecules_per_release"),
            m2n_detect_threshold=g("relay.m2n_detect_threshold"),
            m2n_ions_per_release=g("relay.m2n_ions_per_release"),
            vesicle_release_prob_per_ca=g("relay.vesicle_release_prob_per_ca"),
            vesicle_count=g("relay.vesicle_count"),
            molecules_per_vesicle=g("relay.molecules_per_vesicle"),
            n2m_decision_threshold=g("relay.n2m_decision_threshold"),
            t2m_pulses_per_bit=g("relay.t2m_pulses_per_bit"),
            pulse_interval_s=g("relay.pulse_interval_s"),
        ))

    def propagation(self):
        g = self.get
        return self._build("prop", lambda: PropagationConfig(
            diffusion_D=g("prop.diffusion_m2_per_s"),
            distance_d2=g("prop.distance_m"),
            detector_radius_Rd=g("prop.detector_radius_m"),
            symbol_period=g("prop.symbol_period_s"),
            max_wait=g("prop.max_wait_s"),
        ))

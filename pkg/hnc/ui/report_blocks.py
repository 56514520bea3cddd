# hnc/ui/report_blocks.py
# -*- coding: utf-8 -*-

"""
Cards de texto para o terminal: relatório de capacidade, resultado da
simulação e calibração da Fig. 9.
"""

from hnc.core.link_sim import EventKind

_WIDTH = 60


# ------------------------------------------------------------
# Card genérico
# ------------------------------------------------------------
def card(title, rows, status=None):
    """
    - title: cabeçalho do card
    - rows: pares (rótulo, valor já formatado)
    - status: True/False/None -> [OK], [!] ou sem marca
    """
    icon = {True: "[OK] ", False: "[!] "}.get(status, "")
    label_w = max((len(r[0]) for r in rows), default=0)

    lines = ["=" * _WIDTH, f"{icon}{title}", "-" * _WIDTH]
    lines += [f"{label.ljust(label_w)} : {value}" for label, value in rows]
    lines.append("=" * _WIDTH)
    return "\n".join(lines) + "\n"


def _fmt(v, unit=""):
    return f"{v:.6g} {unit}".rstrip()


# ------------------------------------------------------------
# Relatório de capacidade
# ------------------------------------------------------------
def capacity_block(report, loss_db=None, path_loss=None):
    rows = [
        ("C1 THz", _fmt(report.c1_thz, "bits/s")),
        ("C2 molecular", _fmt(report.c2_molecular, "bits/s")),
        ("C3 neural", _fmt(report.c3_neural, "bits/s")),
        ("C cascata", _fmt(report.cascade_c, "bits/s")),
        ("Gargalo", report.bottleneck.value),
    ]
    if loss_db is not None:
        rows.append(("Perda THz (centro)", _fmt(loss_db, "dB")))
    if path_loss is not None:
        rows.append(("Modelo de perda", path_loss.label()))

    negatives = [name for name, neg in sorted(report.negative_capacity_flags.items()) if neg]
    if negatives:
        rows.append(("Capacidade negativa", ", ".join(negatives)))
    rows.append(("Nota", report.bound_note))

    return card("Capacidade do canal híbrido", rows, status=not negatives)


# ------------------------------------------------------------
# Simulação do enlace
# ------------------------------------------------------------
def simulation_block(result, expected=None, trace=None):
    rows = [
        ("BER", repr(result.ber)),
        ("BER analítica", "indisponível" if expected is None else _fmt(expected)),
        ("Vazão", _fmt(result.throughput, "bits/s")),
        ("Símbolos", str(result.trials)),
        ("Erros", str(result.errors)),
        ("Semente", str(result.seed)),
    ]
    if trace is not None:
        rows.append(("Liberações T2M", str(len(trace.of_kind(EventKind.MOLECULES_RELEASED)))))
        rows.append(("Spikes", str(len(trace.of_kind(EventKind.SPIKE_EMITTED)))))
    return card("Simulação do enlace fim a fim", rows, status=result.ber == 0.0 or None)


# ------------------------------------------------------------
# Calibração
# ------------------------------------------------------------
def calibration_block(cal):
    rows = [
        ("Rd", _fmt(cal.r_d, "m")),
        ("τ", f"{cal.tau_factor:.4g} / W"),
        ("W no mínimo", _fmt(cal.w_min, "Hz")),
        ("C mínima", _fmt(cal.c_min, "bits/s")),
        ("C máxima", _fmt(cal.c_max, "bits/s")),
        ("Mínimos locais", str(cal.n_local_minima)),
        ("Gap W", f"{cal.w_gap_decades:.3f} décadas"),
        ("Gap C", f"{cal.c_gap_decades:.3f} décadas"),
    ]
    title = "Fig. 9 dentro da faixa alvo" if cal.meets_band else "Fig. 9 fora da faixa alvo (curva mais próxima)"
    return card(title, rows, status=cal.meets_band)

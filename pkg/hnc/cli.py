# hnc/cli.py
# -*- coding: utf-8 -*-

"""
Linha de comando do HNC.

Subcomandos:
    capacity              relatório C1, C2, C3, cascata e gargalo
    reproduce FIG         CSV (e SVG opcional) das Figs. 8, 9 e 10
    sweep                 varre uma chave numérica da configuração
    simulate              simula o enlace fim a fim (BER, vazão, traço)
    print-config          configuração efetiva com defaults e etiquetas

Códigos de saída: 0 ok, 2 erro de configuração, 3 erro de domínio
numérico, 4 enlace inconsistente.
"""

import argparse
import logging
import sys
from pathlib import Path

from hnc import __version__
from hnc.core.configs import RunConfig
from hnc.core.errors import (
    ChannelError,
    ConfigError,
    DomainError,
    HncError,
    InvalidParameterError,
    LinkConsistencyError,
    SweepPointError,
)
from hnc.hnc_runner import (
    FIGURES,
    report_frame,
    reproduce,
    result_frame,
    run_capacity,
    run_simulation,
    run_sweep,
    write_csv,
)
from hnc.ui.plots import plot_figure, plot_sweep
from hnc.ui.report_blocks import calibration_block, capacity_block, simulation_block

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_LINK = 4


# ------------------------------------------------------------
# PARSER
# ------------------------------------------------------------
def create_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="arquivo de configuração (key = value); default: $HNC_CONFIG")
    common.add_argument("--out", metavar="PATH", help="arquivo CSV de saída")
    common.add_argument("--svg", action="store_true", help="grava também um gráfico SVG ao lado do CSV")
    common.add_argument("--seed", type=int, metavar="U64", help="semente da simulação (sobrepõe run.seed)")
    common.add_argument("--mode", choices=["verbatim", "nats"], help="modo de log do canal molecular")
    common.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE", help="sobrepõe uma chave da configuração"
    )
    common.add_argument("--verbose", "-v", action="store_true", help="log em nível INFO")

    parser = argparse.ArgumentParser(
        prog="hnc",
        description="Capacidade e simulação do canal híbrido THz / molecular / neural.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Códigos de saída: 0 ok, 2 configuração, 3 domínio numérico, 4 enlace inconsistente.",
    )
    parser.add_argument("--version", action="version", version=f"hnc {__version__}")
    parser.add_argument("--print-config", action="store_true", help="imprime a configuração efetiva e sai")
    parser.add_argument("--config", dest="root_config", metavar="PATH", help="arquivo de configuração")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    sub.add_parser("capacity", parents=[common], help="relatório de capacidade do canal híbrido")

    cmd_rep = sub.add_parser("reproduce", parents=[common], help="reproduz a Fig. 8, 9 ou 10 em CSV/SVG")
    cmd_rep.add_argument("figure", choices=FIGURES)
    cmd_rep.add_argument("--calibrate", action="store_true", help="fig9: busca (Rd, τ) nas faixas declaradas")

    cmd_sweep = sub.add_parser("sweep", parents=[common], help="varre uma chave numérica (relatório por ponto)")
    cmd_sweep.add_argument("--key", help="chave varrida (sobrepõe sweep.key)")

    cmd_sim = sub.add_parser("simulate", parents=[common], help="simula o enlace fim a fim")
    cmd_sim.add_argument("--bits", type=int, metavar="N", help="número de bits (sobrepõe sim.n_bits)")

    sub.add_parser("print-config", parents=[common], help="imprime a configuração efetiva")

    return parser


# ------------------------------------------------------------
# CONFIGURAÇÃO EFETIVA
# ------------------------------------------------------------
def build_config(args):
    cfg = RunConfig.load(getattr(args, "config", None) or args.root_config)

    for item in getattr(args, "set", []):
        if "=" not in item:
            raise ConfigError(item, "esperado KEY=VALUE em --set")
        key, value = (part.strip() for part in item.split("=", 1))
        cfg.set(key, value)

    if getattr(args, "key", None):
        cfg.set("sweep.key", args.key)
    if getattr(args, "bits", None) is not None:
        cfg.set("sim.n_bits", args.bits)
    if getattr(args, "seed", None) is not None:
        if args.seed < 0:
            raise ConfigError("run.seed", "a semente deve ser >= 0")
        cfg.set("run.seed", args.seed)
    if getattr(args, "mode", None):
        cfg.set("run.mode", args.mode)
    return cfg


def _svg_path(out):
    return Path(out).with_suffix(".svg")


# ------------------------------------------------------------
# COMANDOS
# ------------------------------------------------------------
def cmd_capacity(cfg, args):
    report, loss_db = run_capacity(cfg)
    sys.stdout.write(capacity_block(report, loss_db, cfg.path_loss()))
    if args.out:
        write_csv(report_frame(report), args.out, cfg)
    return EXIT_OK


def cmd_reproduce(cfg, args):
    df, cal = reproduce(args.figure, cfg, calibrate=args.calibrate)
    out = args.out or f"{args.figure}.csv"
    write_csv(df, out, cfg)

    if cal is not None:
        sys.stdout.write(calibration_block(cal))
    sys.stdout.write(f"{args.figure}: {len(df)} pontos -> {out}\n")

    if args.svg:
        mark = (cal.w_min, cal.c_min) if cal is not None else None
        plot_figure(df, args.figure, _svg_path(out), annotate_min=mark)
    return EXIT_OK


def cmd_sweep(cfg, args):
    df = run_sweep(cfg)
    out = args.out or "sweep.csv"
    write_csv(df, out, cfg)
    sys.stdout.write(f"sweep {cfg.get('sweep.key')}: {len(df)} pontos -> {out}\n")

    if args.svg:
        plot_sweep(df, df.columns[0], _svg_path(out), logx=cfg.get("sweep.scale").lower() == "log")
    return EXIT_OK


def cmd_simulate(cfg, args):
    result, trace, expected = run_simulation(cfg)
    sys.stdout.write(simulation_block(result, expected, trace))

    if args.out:
        write_csv(trace.to_frame(), args.out, cfg)
        write_csv(result_frame(result, expected), Path(args.out).with_suffix(".result.csv"), cfg)
    return EXIT_OK


def cmd_print_config(cfg, args=None):
    sys.stdout.write(cfg.render())
    return EXIT_OK


COMMANDS = {
    "capacity": cmd_capacity,
    "reproduce": cmd_reproduce,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
    "print-config": cmd_print_config,
}


# ------------------------------------------------------------
# ERROS -> CÓDIGOS DE SAÍDA
# ------------------------------------------------------------
def exit_code_for(error):
    if isinstance(error, ConfigError):
        return EXIT_CONFIG
    if isinstance(error, LinkConsistencyError):
        return EXIT_LINK
    if isinstance(error, (DomainError, ChannelError, SweepPointError)):
        return EXIT_DOMAIN
    if isinstance(error, InvalidParameterError):
        return EXIT_CONFIG
    return EXIT_DOMAIN


def main(argv=None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )

    command = "print-config" if args.print_config else args.command
    if command is None:
        parser.print_help()
        return EXIT_CONFIG

    try:
        cfg = build_config(args)
        return COMMANDS[command](cfg, args)
    except HncError as e:
        code = exit_code_for(e)
        sys.stderr.write(f"[ERRO] {e}\n")
        return code


if __name__ == "__main__":
    sys.exit(main())

# hnc/core/errors.py
# -*- coding: utf-8 -*-
"""
Hierarquia de exceções do HNC.

A CLI converte cada família em um código de saída:
    ConfigError              -> 2
    DomainError / ChannelError / SweepPointError -> 3
    LinkConsistencyError     -> 4
"""


class HncError(Exception):
    """Base de todos os erros do pacote."""


class InvalidParameterError(HncError, ValueError):
    """Parâmetro fora do invariante do tipo (ex.: distância <= 0)."""


class DomainError(HncError, ValueError):
    """Argumento fora do domínio numérico (ex.: lnΓ(x) com x <= 0)."""


class NumericOverflowError(DomainError):
    """Valor intermediário não representável em float64."""


class SweepPointError(HncError):
    """Falha em um ponto de varredura; guarda o valor da grade que falhou."""

    def __init__(self, value, cause):
        self.value = value
        super().__init__(f"falha no ponto {value!r} da varredura: {cause}")
        self.__cause__ = cause


class ChannelError(HncError):
    """Falha em um sub-canal, rotulada pelo nome do canal."""

    def __init__(self, channel, cause):
        self.channel = channel
        super().__init__(f"canal {channel}: {cause}")
        self.__cause__ = cause


class ConfigError(HncError):
    """Erro de configuração; `key` nomeia a chave problemática."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class LinkConsistencyError(HncError):
    """Configuração do enlace que nunca consegue disparar o relé T2M."""

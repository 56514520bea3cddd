# hnc/__init__.py
# -*- coding: utf-8 -*-
"""Projeto HNC: capacidade e simulação do canal híbrido nano (THz, molecular, neural)."""

__version__ = "1.0.0"

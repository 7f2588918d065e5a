"""End-to-end certification of isolated singular solutions."""

from src.viss.algorithm import VissResult, consequence_check, viss

__all__ = ["VissResult", "consequence_check", "viss"]

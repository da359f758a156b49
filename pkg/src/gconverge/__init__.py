"""Exact G-convergence methods on the real line and the topology they induce."""

from .methods import CESARO, LIM, STAT, Cesaro, Lim, Matrix, Product, Statistical, g_limit, in_domain, parse_method
from .parsing import parse_box, parse_seq, parse_set
from .realsets import RSet, interval
from .topology import g_closure, g_interior, hull, is_g_closed, is_g_connected, is_g_open, kernel

__all__ = [
    "CESARO", "LIM", "STAT", "Cesaro", "Lim", "Matrix", "Product", "Statistical",
    "g_limit", "in_domain", "parse_method", "parse_box", "parse_seq", "parse_set",
    "RSet", "interval", "g_closure", "g_interior", "hull", "is_g_closed", "is_g_connected",
    "is_g_open", "kernel",
]

"""Exact combinatorial algebra: quasi-ordered languages, K_N generating
functions, weighted-word posets, wreath-product characters, and Segre-product
homology, all over Q(zeta_N)."""

from .cyclotomic import CyclotomicNumber, Rational, cyc_arith, cyc_inv, cyc_root

__all__ = ["CyclotomicNumber", "Rational", "cyc_root", "cyc_arith", "cyc_inv"]

__version__ = "0.1.0"

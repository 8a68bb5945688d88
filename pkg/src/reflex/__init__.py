"""Exact-arithmetic workbench for 2-reflection groups of hyperbolic lattices
and their automorphic corrections as Borcherds products.
"""

__version__ = "0.1.0"

"""Evaluation codes from linear systems of conics over GF(2^h).

The package builds the point set covered by the parabolas Y = a*X^2 with
trace-zero a, counts intersections of lines and conics with that set (both
by closed form and by brute force), derives the associated quartic and
cubic curves whose rational points control those counts, and assembles the
resulting evaluation codes together with their exact weight distributions.
"""

from .field import ExtField, Field, default_modulus, modulus_hex, parse_modulus

__all__ = [
    "Field",
    "ExtField",
    "default_modulus",
    "modulus_hex",
    "parse_modulus",
]

__version__ = "0.1.0"

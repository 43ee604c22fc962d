"""Exact Kauffman-bracket skein computations at roots of unity.

Cyclotomic scalar arithmetic, Temperley-Lieb diagram algebra, recoupling
data, labeled-link evaluation with surgery invariants, spine-basis TQFT
vector spaces, mapping-class-group representations, and braid-group sector
representations, all over exact cyclotomic numbers.
"""

__version__ = "0.1.0"

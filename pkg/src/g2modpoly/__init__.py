"""Genus-2 modular polynomial toolkit.

Exact rational and high-precision numeric infrastructure for working with
degree-2 Siegel modular forms on the curve side: symplectic level structure,
the Siegel upper half space, truncated Fourier expansions, Igusa invariants,
Richelot (2,2)-isogenies, and point-evaluated modular polynomials.
"""

__version__ = "0.1.0"

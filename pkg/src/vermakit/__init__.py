"""Exact-arithmetic toolkit for split semisimple Lie algebras: Chevalley
bases, PBW normal forms, (generalised) Verma modules and their simple
characters, irreducibility certificates, p-adic admissibility, and the
scalar-projection maps between Levi-induced modules.

All computation is over exact rationals; nothing here is floating point.
"""

__version__ = "0.1.0"

"""
Orbifold - Sous-groupes finis de SO(4) et 3-orbifolds sphériques
"""

__version__ = "0.1.0"

"""
Noyau algébrique exact: corps cyclotomiques, quaternions, algèbre linéaire
"""

from src.algebra.cyclo import CycloField, CycloNumber, make_field, root_of_unity
from src.algebra.quat import IsometryS3, Quaternion, UnitQuaternion

__all__ = [
    'CycloField', 'CycloNumber', 'make_field', 'root_of_unity',
    'IsometryS3', 'Quaternion', 'UnitQuaternion',
]

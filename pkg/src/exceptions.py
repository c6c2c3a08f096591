"""
Exceptions du noyau Orbifold.

Toutes dérivent de OrbifoldError, ce qui permet à la CLI de distinguer les
erreurs métier (codes de sortie 2, 3, 4) des erreurs internes (code 1).
"""

from typing import List, Optional


class OrbifoldError(Exception):
    """Erreur de base du projet."""


class FieldMismatchError(OrbifoldError):
    """Opération entre nombres de corps cyclotomiques différents."""


class ConductorMismatchError(OrbifoldError):
    """Racine de l'unité non disponible dans le conducteur courant."""


class ClosureCapExceeded(OrbifoldError):
    """La clôture dépasse la taille maximale autorisée (groupe non fini?)."""

    def __init__(self, cap: int):
        super().__init__(f"not finite within cap: closure exceeded {cap} elements")
        self.cap = cap


class NotClosedError(OrbifoldError):
    """Ensemble d'éléments non fermé pour la multiplication."""


class UnrecognizedSubgroupError(OrbifoldError):
    """Aucune étiquette de sous-groupe fini de S³ ne correspond."""


class InvalidGroupError(OrbifoldError):
    """Groupe produit mal formé (noyau de Φ absent, φ non isomorphisme...)."""


class ConstraintViolation(OrbifoldError, ValueError):
    """Paramètres hors des contraintes de la famille."""

    def __init__(self, family: str, condition: str):
        super().__init__(f"family {family}: constraint violated: {condition}")
        self.family = family
        self.condition = condition


class NotHopfPreservingError(OrbifoldError):
    """Le groupe ne préserve pas la fibration de Hopf."""

    def __init__(self, family: str, preserved: Optional[List[dict]] = None):
        self.family = family
        self.preserved = preserved or []
        names = ", ".join(f["fibration"] for f in self.preserved) or "none"
        super().__init__(
            f"family {family} does not preserve the Hopf fibration "
            f"(preserved fibrations: {names})"
        )

"""
Coïncidences connues entre lignes de la classification.

Un même groupe peut apparaître dans plusieurs familles pour des valeurs
particulières des paramètres; chaque apparition fournit une fibration
préservée supplémentaire, non standard pour la ligne d'origine.
"""

from dataclasses import dataclass
from typing import Dict, List

from src.groups.families import FamilySpec


@dataclass(frozen=True)
class Coincidence:
    family: str
    condition: Dict[str, int]
    partner: str
    note: str = ""

    def matches(self, spec: FamilySpec) -> bool:
        if spec.family != self.family:
            return False
        return all(getattr(spec, k) == v for k, v in self.condition.items())


# Le partenaire est une ligne des tables ("2bis(m=2)") quand elle existe, sinon
# le groupe en notation de Du Val: cas limites exclus des tables par leurs contraintes.
COINCIDENCES: List[Coincidence] = [
    Coincidence("1", {"m": 2, "r": 1}, "2bis(m=2)", "(C4/C4, C2n/C2n)"),
    Coincidence("1", {"m": 1, "r": 2}, "(D*4/C2, C4n/C2n)", "cas m=1 de 3bis"),
    Coincidence("1", {"m": 1, "r": 2}, "(C4n/C2n, D*4/C2)", "cas n=1 de 3"),
    Coincidence("3", {"m": 1}, "(D*4/C2, D*4n/C2n)", "cas m=r=1 de 11"),
    Coincidence("11", {"m": 2, "r": 1}, "13", "(D*8/C4, D*4n/C2n)"),
    Coincidence("1p", {"m": 1, "r": 4}, "(D*4/C1, C4n/Cn)", "cas m=1 de 34bis"),
    Coincidence("34", {"m": 1}, "(D*4/C1, D*4n/Cn)", "cas m=1, r=2 de 11p"),
    Coincidence("11", {"m": 1, "r": 2}, "(D*8/C2, D*8n/C2n)_f", "cas m=1 de 33"),
    Coincidence("11p", {"m": 1, "r": 4}, "(D*8/C1, D*8n/Cn)_f", "cas m=1 de 33p"),
    Coincidence("3bis", {"m": 2}, "(D*8/D*4, C4n/C2n)", "cas m=1 de 4bis, 3 fibrations"),
    Coincidence("2", {"m": 2}, "(D*4/D*4, D*4n/D*4n)", "cas m=1 de 10, 3 fibrations"),
    Coincidence("4", {"m": 1}, "13bis", "(C4/C2, D*8n/D*4n), 3 fibrations"),
    Coincidence("5", {"m": 2}, "(D*4/D*4, T*/T*)", "cas m=1 de 14"),
    Coincidence("7", {"m": 2}, "(D*4/D*4, O*/O*)", "cas m=1 de 15"),
    Coincidence("8", {"m": 1}, "(D*4/C2, O*/T*)", "cas m=1 de 16"),
    Coincidence("9", {"m": 2}, "(D*4/D*4, I*/I*)", "cas m=1 de 19"),
    Coincidence("16", {"m": 2}, "(D*8/D*4, O*/T*)", "cas m=1 de 17"),
]


def coincidences_for(spec: FamilySpec) -> List[Coincidence]:
    return [c for c in COINCIDENCES if c.matches(spec)]

"""
Valeurs attendues transcrites des tables de classification.

Ce module:
1. Charge data/expected_tables.json (données de test, jamais consultées
   par le chemin de calcul)
2. Retrouve les lignes correspondant à une spécification: paramètres
   transcrits, ou conditions "where" d'une ligne paramétrique
3. Instancie les valeurs paramétriques ("S2(2,2,{n})") pour une spécification
4. Compare valeurs calculées et attendues (groupes à isomorphisme près,
   signatures à l'ordre des cônes près) et produit les MatchFlag
"""

import json
import operator
import re
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from src.config import EXPECTED_TABLES_PATH
from src.groups.families import PARAM_NAMES, FamilySpec
from src.geometry.fibration import Signature2D, signature_from_label
from src.geometry.recognize import FiniteGroupId, group_from_label, same_group
from src.logger import get_logger
from src.reports.models import MatchFlag

logger = get_logger("Expected")

_ORDER_FORMULA = re.compile(r"^(\d*)([mnr]*)(?:/(\d+))?$")


def evaluate_order_formula(formula: str, params: Dict[str, int]) -> int:
    """
    Évalue une forme close de la table des ordres: "2mnr", "mnr/2", "288".

    Raises:
        ValueError: formule non reconnue
    """
    match = _ORDER_FORMULA.match(formula.replace(" ", ""))
    if not match or not formula:
        raise ValueError(f"unknown order formula {formula!r}")
    coeff, variables, divisor = match.groups()
    value = int(coeff) if coeff else 1
    for name in variables:
        value *= params[name]
    if divisor:
        value //= int(divisor)
    return value


def spec_from_row(row: Dict) -> FamilySpec:
    return FamilySpec.create(row["family"], **row.get("params", {}))


def _used_params(spec: FamilySpec) -> Dict[str, int]:
    return {k: v for k, v in spec.to_json().items() if k in PARAM_NAMES}


def _same_params(spec: FamilySpec, params: Dict[str, int]) -> bool:
    return _used_params(spec) == params


# ============================================================================
# Lignes paramétriques
# ============================================================================

_CONDITION = re.compile(r"^(s\^2|[mnrs])\s*(!=|>=|<=|=|>|<)\s*(-?\d+|[mnrs])(\s+mod\s+r)?$")
_PARITY = re.compile(r"^([mnrs])\s+(even|odd)$")
_PLACEHOLDER = re.compile(r"\{([^{}]+)\}")
_COMPARE = {
    "=": operator.eq, "!=": operator.ne,
    ">": operator.gt, "<": operator.lt,
    ">=": operator.ge, "<=": operator.le,
}
# Colonnes pouvant porter des gabarits {formule}
_VALUE_FIELDS = ("base", "isom0", "pi0", "isom_p", "isom_f", "action")


def _param(spec: FamilySpec, name: str) -> int:
    value = getattr(spec, name)
    if value is None:
        raise ValueError(f"condition on parameter {name!r}, unused by family {spec.family}")
    return value


def condition_holds(clause: str, spec: FamilySpec) -> bool:
    """
    Évalue une condition de ligne: "n>2", "m=n", "n odd", "s^2=-1 mod r".
    Les alternatives séparées par "|" forment une disjonction.

    Raises:
        ValueError: condition non reconnue ou paramètre absent de la famille
    """
    alternatives = [alt.strip() for alt in clause.split("|")]
    if len(alternatives) > 1:
        return any(condition_holds(alt, spec) for alt in alternatives)

    parity = _PARITY.match(clause)
    if parity:
        name, kind = parity.groups()
        return _param(spec, name) % 2 == (0 if kind == "even" else 1)

    match = _CONDITION.match(clause)
    if not match:
        raise ValueError(f"unknown row condition {clause!r}")
    left, op, right, modulo = match.groups()
    lhs = _param(spec, "s") ** 2 if left == "s^2" else _param(spec, left)
    rhs = _param(spec, right) if right in PARAM_NAMES else int(right)
    if modulo:
        if op not in ("=", "!="):
            raise ValueError(f"congruence must use = or != in {clause!r}")
        congruent = (lhs - rhs) % _param(spec, "r") == 0
        return congruent if op == "=" else not congruent
    return _COMPARE[op](lhs, rhs)


def row_applies(row: Dict, spec: FamilySpec) -> bool:
    """
    Vrai si la ligne décrit cette spécification: même famille, puis soit
    toutes les conditions "where", soit exactement les paramètres transcrits
    pour une ligne sans "where".
    """
    if row.get("family") != spec.family:
        return False
    if "where" not in row:
        return _same_params(spec, row.get("params", {}))
    return _same_params(spec, row.get("params", {})) or all(
        condition_holds(clause, spec) for clause in row["where"]
    )


def _fill(value: Any, params: Dict[str, int]) -> Any:
    if isinstance(value, str):
        return _PLACEHOLDER.sub(lambda m: str(evaluate_order_formula(m.group(1), params)), value)
    if isinstance(value, dict):
        return {k: _fill(v, params) for k, v in value.items()}
    return value


def instantiate_row(row: Dict, spec: FamilySpec) -> Dict:
    """Copie de la ligne dont les gabarits "{2n}", "{nr/2}" sont évalués pour spec."""
    params = _used_params(spec)
    out = dict(row)
    for key in _VALUE_FIELDS:
        if key in out:
            out[key] = _fill(out[key], params)
    return out


def flag(field: str, expected: Any, computed: Any, equal: bool,
         errata: Optional[Dict[str, str]] = None) -> MatchFlag:
    """
    Statut d'un champ: match si égal, known-erratum si le champ (ou son
    groupe, ex. "isom_p" pour "isom_p.pi0") est marqué erratum, mismatch sinon.
    """
    errata = errata or {}
    if equal:
        return MatchFlag(field=field, status="match", expected=expected, computed=computed)
    note = errata.get(field) or errata.get(field.split(".")[0])
    if note:
        return MatchFlag(field=field, status="known-erratum", expected=expected, computed=computed, note=note)
    return MatchFlag(field=field, status="mismatch", expected=expected, computed=computed)


def not_applicable(field: str, note: str) -> MatchFlag:
    return MatchFlag(field=field, status="not-applicable", note=note)


def compare_group(field: str, expected: str, computed: FiniteGroupId,
                  errata: Optional[Dict[str, str]] = None) -> MatchFlag:
    equal = same_group(group_from_label(expected), computed)
    return flag(field, expected, computed.label, equal, errata)


def compare_signature(field: str, expected: str, computed: Signature2D,
                      errata: Optional[Dict[str, str]] = None) -> MatchFlag:
    equal = signature_from_label(expected) == computed
    return flag(field, expected, computed.label, equal, errata)


def compare_value(field: str, expected: Any, computed: Any,
                  errata: Optional[Dict[str, str]] = None) -> MatchFlag:
    return flag(field, expected, computed, expected == computed, errata)


class ExpectedTables:
    """Accès aux tables transcrites."""

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else EXPECTED_TABLES_PATH
        with open(self.path, "r", encoding="utf-8") as f:
            self.data = json.load(f)
        logger.debug(f"Tables attendues chargées depuis {self.path}")

    @property
    def table_ids(self) -> List[int]:
        return sorted(int(k) for k in self.data["tables"])

    def rows(self, table: int) -> List[Dict]:
        return self.data["tables"][str(table)]["rows"]

    def caption(self, table: int) -> str:
        return self.data["tables"][str(table)]["caption"]

    def order_row(self, family: str) -> Optional[Dict]:
        return next((row for row in self.rows(1) if row["row"] == family), None)

    def rows_for(self, spec: FamilySpec, tables: Iterable[int] = (2, 3, 4, 5)) -> Dict[int, List[Dict]]:
        """
        Lignes des tables 2 à 5 décrivant cette spécification (paramètres
        transcrits ou conditions "where"), instanciées pour spec.
        """
        found: Dict[int, List[Dict]] = {}
        for table in tables:
            for row in self.rows(table):
                if row_applies(row, spec):
                    found.setdefault(table, []).append(instantiate_row(row, spec))
        return found

    def fibration_rows(self) -> List[Dict]:
        return self.data.get("fibrations", [])

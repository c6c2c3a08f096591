"""
Calcul des rapports de la CLI.

Ce module:
1. Construit G̃ (via le cache si disponible)
2. Assemble les Report des commandes build, isom, fibrations, base, singular
3. Compare une ligne de table transcrite aux valeurs calculées
   (fonctions check_*_row, partagées avec le vérificateur)
"""

from fractions import Fraction
from typing import Dict, List, Optional

from src.algebra.quat import UnitQuaternion
from src.cache.store import GroupCache
from src.groups.duval import (
    ProductGroup,
    build,
    build_from_tuple,
    closed_form_order,
    group_order,
    resolve_conductor,
    tuple_of,
)
from src.groups.families import PARAM_NAMES, FamilySpec
from src.geometry.fibration import (
    BaseAction,
    Signature2D,
    base_orbifold,
    euler_characteristic,
    fibration_isometries,
    list_fibrations,
)
from src.geometry.isometry import LieDescriptor, full_isom, isom_plus, or_exists, verify_witness
from src.geometry.recognize import FiniteGroupId
from src.geometry.singular import SingularGraph, complement_seifert_hint, is_free_action, singular_locus
from src.logger import get_logger
from src.reports.expected import (
    ExpectedTables,
    compare_group,
    compare_signature,
    compare_value,
    evaluate_order_formula,
    instantiate_row,
    not_applicable,
)
from src.reports.models import (
    BaseActionModel,
    EdgeModel,
    FibrationModel,
    GroupIdModel,
    LieDescriptorModel,
    MatchFlag,
    Report,
    SignatureModel,
    SingularGraphModel,
    SpecEcho,
    TupleSummary,
    VertexModel,
    WitnessModel,
)

logger = get_logger("Runner")


# ============================================================================
# Conversions vers les modèles
# ============================================================================

def spec_echo(spec: FamilySpec, conductor: Optional[int] = None) -> SpecEcho:
    params = {k: v for k, v in spec.to_json().items() if k in PARAM_NAMES}
    return SpecEcho(family=spec.family, label=spec.label(), params=params, conductor=conductor)


def group_id_model(gid: FiniteGroupId) -> GroupIdModel:
    return GroupIdModel(label=gid.label, order=gid.order, structure=gid.to_json())


def lie_model(desc: LieDescriptor) -> LieDescriptorModel:
    return LieDescriptorModel(isom0=desc.identity_component, pi0=group_id_model(desc.pi0))


def _fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def signature_model(sig: Signature2D) -> SignatureModel:
    return SignatureModel(
        label=sig.label,
        base=sig.base,
        cone=list(sig.cone),
        corner=list(sig.corner),
        euler=_fraction(euler_characteristic(sig)),
    )


def base_action_model(action: BaseAction) -> BaseActionModel:
    return BaseActionModel(
        isom0=action.identity_component,
        pi0=group_id_model(action.pi0),
        annotation=action.annotation,
    )


def singular_model(graph: SingularGraph, free: bool, seifert: bool) -> SingularGraphModel:
    return SingularGraphModel(
        edges=[EdgeModel(**e.to_json()) for e in graph.edges],
        vertices=[VertexModel(**v.to_json()) for v in graph.vertices],
        free_action=free,
        complement_seifert=seifert,
    )


# ============================================================================
# Comparaison ligne par ligne
# ============================================================================

def check_order_row(row: Dict, spec: FamilySpec, group: ProductGroup) -> List[MatchFlag]:
    """Ligne de la table des ordres: forme close évaluée et ordre littéral éventuel."""
    params = {k: v for k, v in spec.to_json().items() if k in PARAM_NAMES}
    computed = group_order(group)
    flags = [compare_value("order", evaluate_order_formula(row["order"], params), computed)]
    for sample in row.get("samples", []):
        if sample["params"] == params:
            flags.append(compare_value("order.sample", sample["order"], computed))
    return flags


def check_isom_row(row: Dict, group: ProductGroup) -> List[MatchFlag]:
    """Lignes (Isom₀, π₀ Isom⁺), génériques ou petits indices."""
    errata = row.get("errata")
    desc = isom_plus(group)
    return [
        compare_value("isom0", row["isom0"], desc.identity_component, errata),
        compare_group("pi0", row["pi0"], desc.pi0, errata),
    ]


def check_base_row(row: Dict, spec: FamilySpec, group: ProductGroup) -> List[MatchFlag]:
    """Base, Isom_p, Isom_f et action sur la base."""
    row = instantiate_row(row, spec)
    errata = row.get("errata")
    flags = [compare_signature("base", row["base"], base_orbifold(spec, group), errata)]
    result = fibration_isometries(spec, group)
    computed = {
        "isom_p": (result.isom_p.identity_component, result.isom_p.pi0),
        "isom_f": (result.isom_f.identity_component, result.isom_f.pi0),
        "action": (result.base_action.identity_component, result.base_action.pi0),
    }
    for key, (isom0, pi0) in computed.items():
        expected = row[key]
        flags.append(compare_value(f"{key}.isom0", expected["isom0"], isom0, errata))
        flags.append(compare_group(f"{key}.pi0", expected["pi0"], pi0, errata))
    if "annotation" in row["action"]:
        flags.append(compare_value(
            "action.annotation", row["action"]["annotation"], result.base_action.annotation, errata,
        ))
    return flags


def check_or_row(row: Dict, group: ProductGroup) -> List[MatchFlag]:
    """Existence d'une isométrie renversant l'orientation, π₀ Isom si transcrit."""
    errata = row.get("errata")
    witness = or_exists(group)
    flags = [compare_value("exists", row["exists"], witness.exists, errata)]
    if witness.exists:
        flags.append(compare_value("witness", True, verify_witness(group, witness.witness)))
        if "pi0" in row:
            flags.append(compare_group("pi0", row["pi0"], full_isom(group).pi0, errata))
        elif "printed" in row:
            flags.append(not_applicable("pi0", f"printed {row['printed']}, existence only"))
    return flags


def check_fibration_row(row: Dict, spec: FamilySpec, group: ProductGroup) -> List[MatchFlag]:
    """Fibrations standard préservées (Hopf, anti-Hopf)."""
    computed = [f for f in list_fibrations(spec, group) if f["source"] == "computed"]
    names = sorted(f["fibration"] for f in computed if f["fibration"] in ("hopf", "anti-hopf"))
    flags = [compare_value("preserved", sorted(row["preserved"]), names)]
    if "equivalent_to_hopf" in row:
        anti = next((f for f in computed if f["fibration"] == "anti-hopf"), {})
        flags.append(compare_value("equivalent_to_hopf", row["equivalent_to_hopf"], anti.get("equivalent_to_hopf")))
    return flags


# ============================================================================
# Rapports
# ============================================================================

class ReportRunner:
    """
    Produit les rapports d'une spécification.

    Args:
        cache: Cache des constructions (None: construction directe)
        conductor_override: Conducteur imposé (multiple du conducteur requis)
        expected: Tables transcrites, pour les drapeaux `--expected`
    """

    def __init__(self, cache: Optional[GroupCache] = None, conductor_override: Optional[int] = None,
                 expected: Optional[ExpectedTables] = None):
        self.cache = cache
        self.conductor_override = conductor_override
        self.expected = expected

    def group(self, spec: FamilySpec) -> ProductGroup:
        if self.cache is not None:
            return self.cache.build(spec, self.conductor_override)
        return build(spec, self.conductor_override)

    def _report(self, command: str, spec: FamilySpec, group: ProductGroup, **fields) -> Report:
        return Report(command=command, spec=spec_echo(spec, group.field.conductor), **fields)

    def _rows(self, spec: FamilySpec, tables) -> Dict[int, List[Dict]]:
        if self.expected is None:
            return {}
        return self.expected.rows_for(spec, tables)

    # ------------------------------------------------------------------

    def build_report(self, spec: FamilySpec) -> Report:
        """Ordre, noyau (−1,−1) et aller-retour par le quintuplet."""
        resolve_conductor(spec, self.conductor_override)
        group = self.group(spec)
        minus = -UnitQuaternion.one(group.field)
        kernel_ok = (minus, minus) in group
        five = tuple_of(group)
        rebuilt = build_from_tuple(five, spec=spec)
        report = self._report(
            "build", spec, group,
            order=group.so4_order,
            closed_form_order=closed_form_order(spec),
            kernel_ok=kernel_ok,
            round_trip_ok=rebuilt.pairs == group.pairs,
            tuple=TupleSummary(
                L=five.L.tag.name, L_K=five.L_K.tag.name,
                R=five.R.tag.name, R_K=five.R_K.tag.name,
                quotient_order=five.quotient_order(),
            ),
        )
        if self.expected is not None:
            row = self.expected.order_row(spec.family)
            if row is None:
                report.expected.append(not_applicable("order", "no order row for this family"))
            else:
                report.expected.extend(check_order_row(row, spec, group))
        return report

    def isom_report(self, spec: FamilySpec) -> Report:
        """Isom⁺, isométrie renversant l'orientation et, si elle existe, Isom complet."""
        group = self.group(spec)
        witness = or_exists(group)
        fields = {
            "isom_plus": lie_model(isom_plus(group)),
            "or_isometry": WitnessModel(
                exists=witness.exists,
                witness=witness.name,
                verified=verify_witness(group, witness.witness) if witness.exists else None,
            ),
        }
        if witness.exists:
            fields["isom_full"] = lie_model(full_isom(group))
        report = self._report("isom", spec, group, **fields)
        rows = self._rows(spec, (2, 3, 5))
        for table in (2, 3):
            for row in rows.get(table, []):
                report.expected.extend(check_isom_row(row, group))
        for row in rows.get(5, []):
            report.expected.extend(check_or_row(row, group))
        if self.expected is not None and not rows:
            report.expected.append(not_applicable("isom", "no tabulated row for these parameters"))
        return report

    def fibrations_report(self, spec: FamilySpec) -> Report:
        group = self.group(spec)
        fibrations = [FibrationModel(**entry) for entry in list_fibrations(spec, group)]
        report = self._report("fibrations", spec, group, fibrations=fibrations)
        if self.expected is not None:
            rows = [r for r in self.expected.fibration_rows()
                    if r["family"] == spec.family and r["params"] == spec_echo(spec).params]
            for row in rows:
                report.expected.extend(check_fibration_row(row, spec, group))
            if not rows:
                report.expected.append(not_applicable("fibrations", "no tabulated row for these parameters"))
        return report

    def base_report(self, spec: FamilySpec) -> Report:
        """
        Base de la fibration de Hopf et isométries associées.

        Raises:
            NotHopfPreservingError: fibration de Hopf non préservée
        """
        group = self.group(spec)
        signature = base_orbifold(spec, group)
        result = fibration_isometries(spec, group)
        report = self._report(
            "base", spec, group,
            base=signature_model(signature),
            isom_p=lie_model(result.isom_p),
            isom_f=lie_model(result.isom_f),
            base_action=base_action_model(result.base_action),
        )
        rows = self._rows(spec, (4,)).get(4, [])
        for row in rows:
            report.expected.extend(check_base_row(row, spec, group))
        if self.expected is not None and not rows:
            report.expected.append(not_applicable("base", "no tabulated row for these parameters"))
        return report

    def singular_report(self, spec: FamilySpec) -> Report:
        group = self.group(spec)
        graph = singular_locus(group)
        report = self._report(
            "singular", spec, group,
            singular=singular_model(graph, is_free_action(group), complement_seifert_hint(spec)),
        )
        if self.expected is not None:
            report.expected.append(not_applicable("singular", "singular loci are not tabulated"))
        return report

    def run(self, command: str, spec: FamilySpec) -> Report:
        handler = {
            "build": self.build_report,
            "isom": self.isom_report,
            "fibrations": self.fibrations_report,
            "base": self.base_report,
            "singular": self.singular_report,
        }[command]
        report = handler(spec)
        logger.info(f"{command} {spec.label()}: {len(report.expected)} comparaisons")
        return report

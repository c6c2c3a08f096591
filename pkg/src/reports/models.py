"""
Modèles Pydantic des rapports JSON de la CLI.

Chaque commande produit un Report; `verify` produit un VerifySummary.
La sérialisation passe par model_dump() puis json.dumps(sort_keys=True),
ce qui rend la sortie déterministe (pas d'horodatage dans la charge utile).
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

SCHEMA = "1"

MATCH_STATUSES = ("match", "mismatch", "not-applicable", "known-erratum")


# ============================================================================
# Briques
# ============================================================================

class SpecEcho(BaseModel):
    """Famille et paramètres tels que normalisés par le registre"""
    family: str = Field(..., description="Identifiant de famille (ex: 11p, 2bis)")
    label: str = Field(..., description="Étiquette typographique (ex: 11′(m=1,n=3,r=4,s=1))")
    params: Dict[str, int] = Field(default_factory=dict, description="Paramètres utilisés")
    conductor: Optional[int] = Field(None, description="Conducteur du corps cyclotomique")


class TupleSummary(BaseModel):
    """Résumé du quintuplet (L, L_K, R, R_K, φ)"""
    L: str
    L_K: str
    R: str
    R_K: str
    quotient_order: int = Field(..., ge=1, description="|L/L_K| = |R/R_K|")


class GroupIdModel(BaseModel):
    """Type d'isomorphisme reconnu d'un groupe fini"""
    label: str
    order: int = Field(..., ge=1)
    structure: Dict[str, Any] = Field(..., description="Forme structurée (type, n, facteurs...)")


class LieDescriptorModel(BaseModel):
    """Composante neutre et groupe des composantes"""
    isom0: str = Field(..., description="Type de la composante neutre (Trivial, S1, SO3...)")
    pi0: GroupIdModel


class WitnessModel(BaseModel):
    """Isométrie renversant l'orientation"""
    exists: bool
    witness: Optional[str] = Field(None, description="phibar_1_1, phibar_j_1 ou search")
    verified: Optional[bool] = Field(None, description="Résultat de verify_witness")


class FibrationModel(BaseModel):
    fibration: str
    source: str = Field(..., description="computed ou coincidence")
    as_: Optional[str] = Field(None, alias="as")
    equivalent_to_hopf: Optional[bool] = None
    note: Optional[str] = None
    sample: Optional[List[str]] = None

    model_config = {"populate_by_name": True}


class SignatureModel(BaseModel):
    """Signature d'un 2-orbifold sphérique"""
    label: str = Field(..., description="ex: S2(2,2,3), D2(2;3), RP2(3)")
    base: str
    cone: List[int] = Field(default_factory=list)
    corner: List[int] = Field(default_factory=list)
    euler: str = Field(..., description="χ_orb exact, fraction p/q")


class BaseActionModel(BaseModel):
    isom0: str
    pi0: GroupIdModel
    annotation: Optional[str] = Field(None, description="reflection, rotation ou antipodal")


class EdgeModel(BaseModel):
    index: int = Field(..., ge=2, description="Ordre du groupe local cyclique")
    arc: bool = Field(..., description="Arête repliée en arc (extrémités sur des sommets)")
    orbit_size: int = Field(..., ge=1)
    stabilizer_order: int = Field(..., ge=1)


class VertexModel(BaseModel):
    local: str = Field(..., description="dihedral(k), tetra, octa ou icosa")
    orbit_size: int = Field(..., ge=1)
    germs: int = Field(..., ge=0)
    edge_indices: List[int] = Field(default_factory=list)


class SingularGraphModel(BaseModel):
    edges: List[EdgeModel] = Field(default_factory=list)
    vertices: List[VertexModel] = Field(default_factory=list)
    free_action: bool
    complement_seifert: bool


class MatchFlag(BaseModel):
    """Comparaison d'un champ avec la valeur transcrite des tables"""
    field: str
    status: str = Field(..., description="match, mismatch, not-applicable, known-erratum")
    expected: Optional[Any] = None
    computed: Optional[Any] = None
    note: Optional[str] = None


# ============================================================================
# Rapports
# ============================================================================

class Report(BaseModel):
    """Rapport d'une commande sur une spécification"""
    schema_: str = Field(SCHEMA, alias="schema")
    command: str
    spec: SpecEcho
    order: Optional[int] = None
    closed_form_order: Optional[int] = None
    kernel_ok: Optional[bool] = Field(None, description="(−1,−1) ∈ G̃")
    round_trip_ok: Optional[bool] = Field(None, description="build(tuple_of(G̃)) = G̃")
    tuple: Optional[TupleSummary] = None
    isom_plus: Optional[LieDescriptorModel] = None
    or_isometry: Optional[WitnessModel] = None
    isom_full: Optional[LieDescriptorModel] = None
    fibrations: Optional[List[FibrationModel]] = None
    base: Optional[SignatureModel] = None
    isom_p: Optional[LieDescriptorModel] = None
    isom_f: Optional[LieDescriptorModel] = None
    base_action: Optional[BaseActionModel] = None
    singular: Optional[SingularGraphModel] = None
    expected: List[MatchFlag] = Field(default_factory=list)

    model_config = {"populate_by_name": True}

    def to_payload(self) -> Dict:
        return self.model_dump(by_alias=True, exclude_none=True)


class VerifySummary(BaseModel):
    """Bilan de `verify`"""
    schema_: str = Field(SCHEMA, alias="schema")
    command: str = "verify"
    tables: List[int]
    max_param: int = Field(..., ge=2)
    counts: Dict[str, int] = Field(default_factory=dict, description="Nombre de lignes par statut")
    by_table: Dict[str, Dict[str, int]] = Field(default_factory=dict)
    mismatches: List[Dict[str, Any]] = Field(default_factory=list)
    errata: List[Dict[str, Any]] = Field(default_factory=list)
    run_id: Optional[int] = None

    model_config = {"populate_by_name": True}

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_payload(self) -> Dict:
        return self.model_dump(by_alias=True, exclude_none=True)

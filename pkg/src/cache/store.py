"""
Cache SQLite des groupes construits et des résultats de vérification.

Ce module:
1. Sérialise G̃ par son quintuplet (L, L_K, R, R_K, φ) et son conducteur
2. Reconstruit le groupe à l'identique depuis la base
3. Enregistre les exécutions de `verify` et leurs lignes
Chaque écriture est une transaction validée (atomique).
"""

import json
from pathlib import Path
from typing import Dict, Iterable, List, Optional

from sqlalchemy import create_engine
from sqlalchemy.exc import IntegrityError
from sqlalchemy.orm import sessionmaker

from src.algebra.cyclo import make_field
from src.cache.models import Base, CachedGroup, CacheMetadata, RowRecord, VerificationRun
from src.config import CACHE_CONFIG, CACHE_DIR
from src.groups.duval import ProductGroup, build, build_from_tuple, five_tuple_from_json, resolve_conductor
from src.groups.families import FamilySpec
from src.logger import get_logger

SCHEMA_VERSION = "1"


class GroupCache:
    """
    Cache des constructions, clé (famille, paramètres, conducteur).

    Un cache désactivé (CACHE_CONFIG["enabled"] faux) construit toujours.
    """

    def __init__(self, cache_dir: Optional[Path] = None, enabled: Optional[bool] = None):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else CACHE_DIR
        self.enabled = CACHE_CONFIG["enabled"] if enabled is None else enabled
        self.db_path = self.cache_dir / CACHE_CONFIG["database_name"]
        self.hits = 0
        self.misses = 0
        self.logger = get_logger("Cache")
        self.Session = None
        if self.enabled:
            self._init_database()

    def _init_database(self):
        """Crée le dossier, la base et les tables si nécessaire."""
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.engine = create_engine(f'sqlite:///{self.db_path}', echo=False)
        Base.metadata.create_all(self.engine)
        self.Session = sessionmaker(bind=self.engine)
        self.set_metadata("schema", SCHEMA_VERSION)
        self.logger.debug(f"Cache initialisé: {self.db_path}")

    # ------------------------------------------------------------------
    # Groupes
    # ------------------------------------------------------------------

    @staticmethod
    def _key(spec: FamilySpec, conductor: int) -> Dict:
        return {
            "family": spec.family,
            "m": spec.m or 0,
            "n": spec.n or 0,
            "r": spec.r or 0,
            "s": spec.s or 0,
            "conductor": conductor,
        }

    def get(self, spec: FamilySpec, conductor: int) -> Optional[ProductGroup]:
        if not self.enabled:
            return None
        session = self.Session()
        try:
            row = session.query(CachedGroup).filter_by(**self._key(spec, conductor)).first()
            if row is None:
                return None
            data = json.loads(row.payload)
        finally:
            session.close()
        field = make_field(data["conductor"])
        five = five_tuple_from_json(field, data["tuple"])
        return build_from_tuple(five, spec=spec)

    def put(self, spec: FamilySpec, group: ProductGroup) -> None:
        if not self.enabled:
            return
        payload = json.dumps(
            {"conductor": group.field.conductor, "tuple": group.five_tuple.to_json()},
            sort_keys=True,
        )
        session = self.Session()
        try:
            session.add(CachedGroup(
                **self._key(spec, group.field.conductor),
                order=group.so4_order,
                payload=payload,
            ))
            session.commit()
        except IntegrityError:
            # Écrit entre-temps par un autre processus
            session.rollback()
        finally:
            session.close()

    def build(self, spec: FamilySpec, conductor_override: Optional[int] = None) -> ProductGroup:
        """Groupe depuis le cache, construit et enregistré sinon."""
        conductor = resolve_conductor(spec, conductor_override)
        cached = self.get(spec, conductor)
        if cached is not None:
            self.hits += 1
            return cached
        self.misses += 1
        group = build(spec, conductor)
        self.put(spec, group)
        return group

    def count(self) -> int:
        if not self.enabled:
            return 0
        session = self.Session()
        try:
            return session.query(CachedGroup).count()
        finally:
            session.close()

    # ------------------------------------------------------------------
    # Vérifications
    # ------------------------------------------------------------------

    def start_run(self, tables: Iterable[int], max_param: int) -> Optional[int]:
        if not self.enabled:
            return None
        session = self.Session()
        try:
            run = VerificationRun(tables=",".join(str(t) for t in tables), max_param=max_param)
            session.add(run)
            session.commit()
            return run.id
        finally:
            session.close()

    def add_records(self, run_id: Optional[int], records: List[Dict]) -> None:
        if not self.enabled or run_id is None:
            return
        session = self.Session()
        try:
            for rec in records:
                session.add(RowRecord(
                    run_id=run_id,
                    table=rec["table"],
                    row=rec["row"],
                    params=json.dumps(rec.get("params"), sort_keys=True),
                    field=rec.get("field"),
                    status=rec["status"],
                    expected=json.dumps(rec.get("expected"), sort_keys=True),
                    computed=json.dumps(rec.get("computed"), sort_keys=True),
                ))
            session.commit()
        except Exception as e:
            session.rollback()
            self.logger.error(f"Erreur lors de l'enregistrement des lignes: {e}")
            raise
        finally:
            session.close()

    def finish_run(self, run_id: Optional[int], status: str) -> None:
        if not self.enabled or run_id is None:
            return
        session = self.Session()
        try:
            run = session.get(VerificationRun, run_id)
            run.status = status
            session.commit()
        finally:
            session.close()

    def run_records(self, run_id: int) -> List[RowRecord]:
        session = self.Session()
        try:
            return session.query(RowRecord).filter_by(run_id=run_id).all()
        finally:
            session.close()

    # ------------------------------------------------------------------
    # Métadonnées
    # ------------------------------------------------------------------

    def set_metadata(self, key: str, value: str) -> None:
        session = self.Session()
        try:
            meta = session.query(CacheMetadata).filter_by(key=key).first()
            if meta is None:
                session.add(CacheMetadata(key=key, value=value))
            else:
                meta.value = value
            session.commit()
        except IntegrityError:
            session.rollback()
        finally:
            session.close()

    def get_metadata(self, key: str) -> Optional[str]:
        session = self.Session()
        try:
            meta = session.query(CacheMetadata).filter_by(key=key).first()
            return meta.value if meta else None
        finally:
            session.close()

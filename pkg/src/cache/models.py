"""
Modèles SQLAlchemy du cache Orbifold.

Ce module définit les 4 tables du cache:
- CachedGroup: Groupes G̃ construits, sérialisés (quintuplet + conducteur)
- VerificationRun: Une exécution de la vérification des tables
- RowRecord: Résultat d'une ligne de table (attendu / calculé / statut)
- CacheMetadata: Métadonnées globales (version du schéma, etc.)
"""

from datetime import datetime

from sqlalchemy import Column, DateTime, ForeignKey, Index, Integer, String, Text
from sqlalchemy.orm import declarative_base, relationship

Base = declarative_base()


class CachedGroup(Base):
    """
    Table des groupes construits.

    Clé: (famille, m, n, r, s, conducteur); les paramètres inutilisés valent 0.
    """
    __tablename__ = 'cached_groups'

    id = Column(Integer, primary_key=True, autoincrement=True)
    family = Column(String, nullable=False, index=True)
    m = Column(Integer, nullable=False, default=0)
    n = Column(Integer, nullable=False, default=0)
    r = Column(Integer, nullable=False, default=0)
    s = Column(Integer, nullable=False, default=0)
    conductor = Column(Integer, nullable=False)
    order = Column(Integer, nullable=False)      # |Φ(G̃)|
    payload = Column(Text, nullable=False)       # JSON du quintuplet
    created_at = Column(DateTime, default=datetime.utcnow)

    def __repr__(self):
        return (f"<CachedGroup(family='{self.family}', m={self.m}, n={self.n}, r={self.r}, "
                f"s={self.s}, conductor={self.conductor}, order={self.order})>")


Index('idx_group_key', CachedGroup.family, CachedGroup.m, CachedGroup.n, CachedGroup.r,
      CachedGroup.s, CachedGroup.conductor, unique=True)


class VerificationRun(Base):
    """Une exécution de `verify` (tables demandées, bornes, bilan)."""
    __tablename__ = 'verification_runs'

    id = Column(Integer, primary_key=True, autoincrement=True)
    tables = Column(String, nullable=False)
    max_param = Column(Integer, nullable=False)
    status = Column(String, default="running")
    started_at = Column(DateTime, default=datetime.utcnow)

    records = relationship("RowRecord", back_populates="run", cascade="all, delete-orphan")

    def __repr__(self):
        return f"<VerificationRun(id={self.id}, tables='{self.tables}', status='{self.status}')>"


class RowRecord(Base):
    """Résultat d'une ligne (match, mismatch, not-applicable, known-erratum)."""
    __tablename__ = 'row_records'

    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('verification_runs.id'), nullable=False, index=True)
    table = Column(Integer, nullable=False)
    row = Column(String, nullable=False)
    params = Column(Text)       # JSON de la spécification
    field = Column(String)      # colonne comparée
    status = Column(String, nullable=False, index=True)
    expected = Column(Text)
    computed = Column(Text)

    run = relationship("VerificationRun", back_populates="records")

    def __repr__(self):
        return f"<RowRecord(table={self.table}, row='{self.row}', status='{self.status}')>"


class CacheMetadata(Base):
    """Paires clé/valeur globales."""
    __tablename__ = 'cache_metadata'

    id = Column(Integer, primary_key=True, autoincrement=True)
    key = Column(String, unique=True, nullable=False)
    value = Column(Text)
    updated_at = Column(DateTime, default=datetime.utcnow, onupdate=datetime.utcnow)

    def __repr__(self):
        return f"<CacheMetadata(key='{self.key}', value='{self.value}')>"

"""
Vérification des tables de classification.

Ce module:
1. Énumère les tâches: toutes les spécifications valides (m, n ≤ max_param,
   r, s ≤ max_r) pour la table des ordres et pour chaque ligne paramétrique
   des tables 2 à 5 (filtrées par ses conditions "where"), plus le point
   transcrit de chaque ligne quand m, n ≤ max_param
2. Évalue les tâches, en parallèle avec --jobs N (ProcessPoolExecutor),
   chaque tâche isolée dans son processus
3. Fusionne les résultats dans l'ordre table/ligne, les enregistre dans le
   cache et affiche un tableau croisé statut × table (pandas)
"""

from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import pandas as pd

from src.cache.store import GroupCache
from src.config import VERIFY_CONFIG
from src.groups.families import FAMILY_ORDER, FamilySpec, enumerate_specs
from src.logger import get_logger
from src.reports.expected import ExpectedTables, row_applies, spec_from_row
from src.reports.models import VerifySummary
from src.reports.runner import (
    check_base_row,
    check_isom_row,
    check_or_row,
    check_order_row,
)

logger = get_logger("Verifier")

Task = Tuple[int, int, str, Dict, Dict]

# Cache propre à chaque processus de travail
_worker_cache: Optional[GroupCache] = None
_worker_cache_key: Optional[Tuple] = None


def _cache_for(cache_dir: Optional[str], enabled: bool) -> GroupCache:
    global _worker_cache, _worker_cache_key
    key = (cache_dir, enabled)
    if _worker_cache is None or _worker_cache_key != key:
        _worker_cache = GroupCache(Path(cache_dir) if cache_dir else None, enabled=enabled)
        _worker_cache_key = key
    return _worker_cache


def _records(table: int, row: str, spec: FamilySpec, flags) -> List[Dict]:
    return [
        {
            "table": table,
            "row": row,
            "params": spec.to_json(),
            "field": f.field,
            "status": f.status,
            "expected": f.expected,
            "computed": f.computed,
            "note": f.note,
        }
        for f in flags
    ]


def evaluate_task(task: Task, cache_dir: Optional[str] = None, cache_enabled: bool = False) -> List[Dict]:
    """
    Évalue une tâche (table, position, ligne, paramètres, ligne transcrite).

    Une erreur est journalisée et enregistrée comme mismatch du champ "error";
    la vérification continue.
    """
    table, _, row_name, params, row = task
    spec = FamilySpec.create(row.get("family", row_name), **params)
    try:
        group = _cache_for(cache_dir, cache_enabled).build(spec)
        if table == 1:
            flags = check_order_row(row, spec, group)
        elif table in (2, 3):
            flags = check_isom_row(row, group)
        elif table == 4:
            flags = check_base_row(row, spec, group)
        else:
            flags = check_or_row(row, group)
    except Exception as e:
        logger.error(f"Table {table}, ligne {row_name} ({spec.label()}): {e}")
        return [{
            "table": table, "row": row_name, "params": spec.to_json(), "field": "error",
            "status": "mismatch", "expected": None, "computed": f"{type(e).__name__}: {e}", "note": None,
        }]
    return _records(table, row_name, spec, flags)


def _evaluate_packed(args) -> List[Dict]:
    return evaluate_task(*args)


class TableVerifier:
    """
    Vérifie les tables demandées contre le calcul exact.

    Args:
        expected: Tables transcrites
        cache: Cache des constructions et des exécutions
        max_param: Borne sur m, n
        max_r: Borne sur r, s pour l'énumération
        jobs: Nombre de processus
    """

    def __init__(self, expected: Optional[ExpectedTables] = None, cache: Optional[GroupCache] = None,
                 max_param: Optional[int] = None, jobs: Optional[int] = None,
                 max_r: Optional[int] = None):
        self.expected = expected or ExpectedTables()
        self.cache = cache or GroupCache(enabled=False)
        self.max_param = max_param or VERIFY_CONFIG["max_param"]
        self.max_r = max_r or VERIFY_CONFIG["max_r"]
        self.jobs = jobs or VERIFY_CONFIG["jobs"]
        if self.max_param < 2:
            raise ValueError("max_param must be at least 2")

    def _within_bounds(self, spec: FamilySpec) -> bool:
        return all(getattr(spec, name) is None or getattr(spec, name) <= self.max_param for name in ("m", "n"))

    def row_specs(self, row: Dict) -> List[FamilySpec]:
        """
        Spécifications vérifiées pour une ligne des tables 2 à 5: le point
        transcrit si m, n ≤ max_param, puis, pour une ligne paramétrique,
        toutes les spécifications énumérées (m, n ≤ max_param, r, s ≤ max_r)
        satisfaisant ses conditions "where".
        """
        transcribed = spec_from_row(row)
        specs = [transcribed] if self._within_bounds(transcribed) else []
        if "where" in row:
            for spec in enumerate_specs(row["family"], self.max_param, self.max_r):
                if spec != transcribed and row_applies(row, spec):
                    specs.append(spec)
        return specs

    def tasks(self, tables: Iterable[int]) -> List[Task]:
        result: List[Task] = []
        for table in sorted(set(tables)):
            if table == 1:
                for position, family in enumerate(FAMILY_ORDER):
                    row = self.expected.order_row(family)
                    if row is None:
                        logger.warning(f"Famille {family} absente de la table des ordres transcrite")
                        continue
                    for spec in enumerate_specs(family, self.max_param, self.max_r):
                        params = {k: v for k, v in spec.to_json().items() if k != "family"}
                        result.append((1, position, family, params, dict(row, family=family)))
            else:
                for position, row in enumerate(self.expected.rows(table)):
                    specs = self.row_specs(row)
                    if not specs:
                        logger.info(f"Table {table}, ligne {row['row']}: aucun paramètre avec m, n ≤ {self.max_param}")
                    for spec in specs:
                        params = {k: v for k, v in spec.to_json().items() if k != "family"}
                        result.append((table, position, row["row"], params, row))
        return result

    def run(self, tables: Iterable[int]) -> VerifySummary:
        tables = sorted(set(tables))
        tasks = self.tasks(tables)
        logger.info("=" * 50)
        logger.info(f"Vérification des tables {tables}: {len(tasks)} tâches, {self.jobs} processus")
        logger.info("=" * 50)

        run_id = self.cache.start_run(tables, self.max_param)
        cache_dir = str(self.cache.cache_dir) if self.cache.enabled else None
        packed = [(task, cache_dir, self.cache.enabled) for task in tasks]
        if self.jobs > 1:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                results = list(pool.map(_evaluate_packed, packed, chunksize=4))
        else:
            results = []
            for idx, args in enumerate(packed, 1):
                results.append(_evaluate_packed(args))
                if idx % 50 == 0:
                    logger.info(f"Progression: {idx}/{len(packed)} tâches")

        # pool.map conserve l'ordre des tâches
        records = [rec for batch in results for rec in batch]
        self.cache.add_records(run_id, records)
        summary = self.summarize(tables, records)
        summary.run_id = run_id
        self.cache.finish_run(run_id, "ok" if summary.ok else "mismatch")
        return summary

    def summarize(self, tables: List[int], records: List[Dict]) -> VerifySummary:
        summary = VerifySummary(tables=tables, max_param=self.max_param)
        if not records:
            return summary
        df = pd.DataFrame(records)
        pivot = df.groupby(["table", "status"]).size().unstack(fill_value=0)
        logger.info(f"Bilan par table:\n{pivot}")
        summary.counts = {str(k): int(v) for k, v in df["status"].value_counts().sort_index().items()}
        summary.by_table = {
            str(table): {str(status): int(count) for status, count in row.items()}
            for table, row in pivot.to_dict(orient="index").items()
        }
        summary.mismatches = [_diff(rec) for rec in records if rec["status"] == "mismatch"]
        summary.errata = [_diff(rec) for rec in records if rec["status"] == "known-erratum"]

        logger.info("=" * 50)
        logger.info("VÉRIFICATION TERMINÉE")
        logger.info(f"Lignes comparées: {len(df)}")
        logger.info(f"Divergences: {len(summary.mismatches)}")
        logger.info(f"Errata connus: {len(summary.errata)}")
        logger.info("=" * 50)
        return summary


def _diff(rec: Dict) -> Dict:
    out = {k: rec[k] for k in ("table", "row", "params", "field", "expected", "computed")}
    if rec.get("note"):
        out["note"] = rec["note"]
    return out

"""
Rapports JSON, tables attendues et vérification.
"""

from src.reports.expected import ExpectedTables
from src.reports.models import SCHEMA, MatchFlag, Report, VerifySummary
from src.reports.runner import ReportRunner
from src.reports.verifier import TableVerifier

__all__ = ['SCHEMA', 'ExpectedTables', 'MatchFlag', 'Report', 'ReportRunner', 'TableVerifier', 'VerifySummary']

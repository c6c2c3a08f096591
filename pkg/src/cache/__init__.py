"""
Cache SQLite des groupes construits
"""

from src.cache.models import Base, CachedGroup, CacheMetadata, RowRecord, VerificationRun
from src.cache.store import GroupCache

__all__ = ['Base', 'CachedGroup', 'CacheMetadata', 'RowRecord', 'VerificationRun', 'GroupCache']

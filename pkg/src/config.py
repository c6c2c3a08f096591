"""
Configuration du projet Orbifold
"""
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Chemins de base
BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = BASE_DIR / "data"
LOGS_DIR = BASE_DIR / "logs"
CACHE_DIR = Path(os.getenv("ORBIFOLD_CACHE", DATA_DIR / "cache"))
EXPECTED_TABLES_PATH = DATA_DIR / "expected_tables.json"

# Noyau de calcul exact
KERNEL_CONFIG = {
    "closure_cap": int(os.getenv("ORBIFOLD_CLOSURE_CAP", 20000)),
    "random_seed": int(os.getenv("ORBIFOLD_SEED", 20240611)),
    "recognize_max_factors": int(os.getenv("ORBIFOLD_RECOGNIZE_FACTORS", 3)),
    # Échantillonnage des tests du lieu singulier
    "circle_samples": int(os.getenv("ORBIFOLD_CIRCLE_SAMPLES", 20)),
    "global_samples": int(os.getenv("ORBIFOLD_GLOBAL_SAMPLES", 200)),
}

# Cache des groupes construits
CACHE_CONFIG = {
    "database_name": os.getenv("ORBIFOLD_CACHE_DB", "orbifold_cache.db"),
    "enabled": os.getenv("ORBIFOLD_CACHE_ENABLED", "True").lower() == "true",
}

# Vérification des tables
VERIFY_CONFIG = {
    "max_param": int(os.getenv("VERIFY_MAX_PARAM", 3)),
    "max_r": int(os.getenv("VERIFY_MAX_R", 5)),
    "jobs": int(os.getenv("VERIFY_JOBS", 1)),
}

# Logging
LOG_CONFIG = {
    "level": os.getenv("LOG_LEVEL", "WARNING"),
    "file": LOGS_DIR / "orbifold.log",
}

"""
Configuration commune des loggers Orbifold.

Même schéma pour tous les modules: un fichier de logs et la console (stderr),
la sortie standard restant réservée au JSON.
"""

import logging

from src.config import LOG_CONFIG, LOGS_DIR


def get_logger(name: str) -> logging.Logger:
    """
    Retourne le logger "Orbifold.<name>" configuré.

    Args:
        name: Nom du composant (ex: "Duval", "Verifier")
    """
    logger = logging.getLogger(f"Orbifold.{name}")
    logger.setLevel(LOG_CONFIG["level"])

    # Éviter les doublons de handlers
    if not logger.handlers:
        LOGS_DIR.mkdir(parents=True, exist_ok=True)

        # Handler pour fichier
        file_handler = logging.FileHandler(LOG_CONFIG["file"])
        file_handler.setLevel(logging.INFO)

        # Handler pour console
        console_handler = logging.StreamHandler()
        console_handler.setLevel(LOG_CONFIG["level"])

        # Format des logs
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        file_handler.setFormatter(formatter)
        console_handler.setFormatter(formatter)

        logger.addHandler(file_handler)
        logger.addHandler(console_handler)
        logger.propagate = False

    return logger

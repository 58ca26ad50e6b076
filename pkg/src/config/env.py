"""
Configuration centralisée pour les variables d'environnement.
Toutes les variables d'environnement doivent être accessibles via cet objet.
"""
import os
from dotenv import load_dotenv

# Charger les variables d'environnement
load_dotenv()


def _int_env(name: str, default: str) -> int:
    try:
        return int(os.getenv(name, default))
    except ValueError:
        return -1


class Config:
    """Configuration centralisée pour les variables d'environnement"""

    # Exécution
    SCHUBERT_WORKERS = _int_env('SCHUBERT_WORKERS', '1')
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()
    OUTPUT_FORMAT = os.getenv('OUTPUT_FORMAT', 'text').lower()

    # Fichiers
    FIXTURES_DIR = os.getenv('FIXTURES_DIR', os.path.join(os.path.dirname(os.path.dirname(__file__)), 'fixtures'))
    REPORTS_DIR = os.getenv('REPORTS_DIR', 'reports')
    USE_MEMORY_ADAPTER = os.getenv('USE_MEMORY_ADAPTER', 'false').lower() == 'true'

    # Localisation
    RANDOM_SEED = _int_env('RANDOM_SEED', '20240101')
    LOCALIZATION_SYMBOLIC_MAX_DEGREE = _int_env('LOCALIZATION_SYMBOLIC_MAX_DEGREE', '12')


# Créer une instance de la configuration
config = Config()

OUTPUT_FORMATS = ('text', 'json')
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def validate_env():
    """
    Vérifie que les variables d'environnement sont valides.

    Returns:
        list: Liste des variables d'environnement invalides
    """
    invalid_vars = []

    if config.SCHUBERT_WORKERS < 1:
        invalid_vars.append('SCHUBERT_WORKERS')

    if config.RANDOM_SEED < 0:
        invalid_vars.append('RANDOM_SEED')

    if config.LOCALIZATION_SYMBOLIC_MAX_DEGREE < 1:
        invalid_vars.append('LOCALIZATION_SYMBOLIC_MAX_DEGREE')

    if config.OUTPUT_FORMAT not in OUTPUT_FORMATS:
        invalid_vars.append('OUTPUT_FORMAT')

    if config.LOG_LEVEL not in LOG_LEVELS:
        invalid_vars.append('LOG_LEVEL')

    if not os.path.isdir(config.FIXTURES_DIR):
        invalid_vars.append('FIXTURES_DIR')

    return invalid_vars

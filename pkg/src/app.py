"""
Application principale : câblage adaptateur → service → contrôleur → analyseur.
"""
import argparse
import logging
import os
from typing import Optional

from .config.env import config
from .controllers.cli_controller import CliController
from .db.adapters.file_adapter import FileAdapter
from .db.adapters.memory_adapter import MemoryAdapter
from .db.db_adapter import FixtureAdapter
from .routes.cli_route import create_cli_parser
from .services.certifier_service import CertifierService

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def _load_fixture_files(directory: str) -> dict:
    """Lit les fixtures du disque pour les précharger dans l'adaptateur mémoire."""
    fixtures = {}
    if not os.path.isdir(directory):
        return fixtures
    for entry in sorted(os.listdir(directory)):
        if entry.endswith(".poly"):
            with open(os.path.join(directory, entry), encoding="utf-8") as handle:
                fixtures[entry[:-len(".poly")]] = handle.read()
    logger.debug(f"{len(fixtures)} fixtures préchargées depuis {directory}")
    return fixtures


def get_fixture_adapter() -> FixtureAdapter:
    """
    Obtient l'adaptateur de stockage approprié en fonction des variables d'environnement.

    Returns:
        Adaptateur de stockage configuré
    """
    # Vérifier si nous devons utiliser l'adaptateur mémoire
    if config.USE_MEMORY_ADAPTER:
        logger.info("Utilisation de l'adaptateur mémoire (fixtures préchargées, rapports en mémoire)")
        return MemoryAdapter(_load_fixture_files(config.FIXTURES_DIR))

    # Par défaut, utiliser l'adaptateur fichiers
    logger.info("Utilisation de l'adaptateur fichiers")
    return FileAdapter()


def create_app(fixture_adapter: Optional[FixtureAdapter] = None) -> argparse.ArgumentParser:
    """
    Crée et configure l'application en ligne de commande.

    Args:
        fixture_adapter: Adaptateur de stockage à utiliser (optionnel)

    Returns:
        Analyseur configuré, dont chaque sous-commande porte son ``handler``
    """
    # Utiliser l'adaptateur fourni ou en obtenir un nouveau
    if fixture_adapter is None:
        fixture_adapter = get_fixture_adapter()

    # Créer le service et le contrôleur
    certifier_service = CertifierService(fixture_adapter)
    cli_controller = CliController(certifier_service)

    return create_cli_parser(cli_controller)

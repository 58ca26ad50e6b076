"""
Adaptateur de stockage sur fichiers : fixtures ``*.poly`` et rapports JSON.
"""
import json
import logging
import os
from typing import Any, Dict, List, Optional

from ..db_adapter import FixtureAdapter
from ...config.env import config
from ...services.errors import FixtureNotFoundError

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

FIXTURE_SUFFIX = ".poly"


class FileAdapter(FixtureAdapter):
    """Implémentation de l'adaptateur de stockage qui lit et écrit sur le disque."""

    def __init__(self, fixtures_dir: Optional[str] = None, reports_dir: Optional[str] = None):
        """
        Initialise l'adaptateur fichiers.

        Args:
            fixtures_dir: Répertoire des fixtures (par défaut : FIXTURES_DIR)
            reports_dir: Répertoire des rapports (par défaut : REPORTS_DIR)
        """
        self.fixtures_dir = fixtures_dir or config.FIXTURES_DIR
        self.reports_dir = reports_dir or config.REPORTS_DIR
        logger.info(f"Adaptateur fichiers : fixtures dans {self.fixtures_dir}, rapports dans {self.reports_dir}")

    def _fixture_path(self, name: str) -> str:
        if not name or os.sep in name or name.startswith("."):
            raise FixtureNotFoundError(f"Nom de fixture invalide '{name}'")
        return os.path.join(self.fixtures_dir, name + FIXTURE_SUFFIX)

    def _report_path(self, report_id: str) -> str:
        return os.path.join(self.reports_dir, f"{report_id}.json")

    async def get_polynomial_text(self, name: str) -> str:
        """
        Lit le texte d'une fixture.

        Args:
            name: Nom de la fixture, sans extension

        Returns:
            Contenu du fichier

        Raises:
            FixtureNotFoundError: fichier absent
        """
        path = self._fixture_path(name)
        try:
            with open(path, encoding="utf-8") as handle:
                return handle.read()
        except FileNotFoundError:
            raise FixtureNotFoundError(f"Fixture '{name}' introuvable dans {self.fixtures_dir}")

    async def list_fixtures(self) -> List[str]:
        if not os.path.isdir(self.fixtures_dir):
            return []
        return sorted(entry[:-len(FIXTURE_SUFFIX)] for entry in os.listdir(self.fixtures_dir)
                      if entry.endswith(FIXTURE_SUFFIX))

    async def save_report(self, report_id: str, report: Dict[str, Any]) -> str:
        """
        Écrit un rapport JSON dans le répertoire des rapports.

        Args:
            report_id: Identifiant du rapport
            report: Rapport sérialisable en JSON

        Returns:
            Chemin du fichier écrit
        """
        os.makedirs(self.reports_dir, exist_ok=True)
        path = self._report_path(report_id)
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(report, handle, ensure_ascii=False, indent=2, sort_keys=True)
        logger.info(f"Rapport écrit : {path}")
        return path

    async def get_report(self, report_id: str) -> Optional[Dict[str, Any]]:
        path = self._report_path(report_id)
        if not os.path.exists(path):
            return None
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)

"""
Adaptateur de stockage en mémoire.
"""
from typing import Any, Dict, List, Optional

from ..db_adapter import FixtureAdapter
from ...services.errors import FixtureNotFoundError


class MemoryAdapter(FixtureAdapter):
    """
    Implémentation de l'adaptateur de stockage qui garde fixtures et rapports en mémoire.
    Utile pour le développement et les tests.
    """

    def __init__(self, fixtures: Optional[Dict[str, str]] = None):
        """
        Initialise l'adaptateur en mémoire.

        Args:
            fixtures: Textes des polynômes nommés, préchargés
        """
        self.fixtures: Dict[str, str] = dict(fixtures or {})
        self.reports: Dict[str, Dict[str, Any]] = {}

    async def get_polynomial_text(self, name: str) -> str:
        if name not in self.fixtures:
            raise FixtureNotFoundError(f"Fixture inconnue '{name}'")
        return self.fixtures[name]

    async def list_fixtures(self) -> List[str]:
        return sorted(self.fixtures)

    async def save_report(self, report_id: str, report: Dict[str, Any]) -> str:
        """
        Sauvegarde un rapport dans la mémoire.

        Args:
            report_id: Identifiant du rapport
            report: Rapport sérialisable en JSON

        Returns:
            Emplacement symbolique ``memory://<id>``
        """
        self.reports[report_id] = report
        return f"memory://{report_id}"

    async def get_report(self, report_id: str) -> Optional[Dict[str, Any]]:
        return self.reports.get(report_id)

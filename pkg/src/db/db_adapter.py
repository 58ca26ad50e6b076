"""
Interface d'adaptateur de stockage pour les polynômes nommés et les rapports de reproduction.
Toutes les implémentations de stockage doivent implémenter cette interface.
"""
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional


class FixtureAdapter(ABC):
    """
    Interface d'adaptateur de stockage pour le moteur de Schubert.
    Toutes les implémentations de stockage doivent implémenter cette interface.
    """

    @abstractmethod
    async def get_polynomial_text(self, name: str) -> str:
        """
        Récupère le texte d'un polynôme nommé (fixture).

        Args:
            name: Nom de la fixture (par exemple ``e7-p5``)

        Returns:
            Texte du polynôme dans la grammaire textuelle

        Raises:
            FixtureNotFoundError: fixture inconnue
        """
        pass

    @abstractmethod
    async def list_fixtures(self) -> List[str]:
        """
        Liste les fixtures disponibles.

        Returns:
            Noms des fixtures, triés
        """
        pass

    @abstractmethod
    async def save_report(self, report_id: str, report: Dict[str, Any]) -> str:
        """
        Sauvegarde un rapport de reproduction.

        Args:
            report_id: Identifiant du rapport
            report: Rapport sérialisable en JSON

        Returns:
            Emplacement du rapport
        """
        pass

    @abstractmethod
    async def get_report(self, report_id: str) -> Optional[Dict[str, Any]]:
        """
        Récupère un rapport sauvegardé.

        Args:
            report_id: Identifiant du rapport

        Returns:
            Rapport, ou None s'il n'existe pas
        """
        pass

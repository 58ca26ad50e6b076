"""
Service de calcul : façade asynchrone du moteur consommée par le contrôleur.
"""
import asyncio
import logging
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence

from ..config.env import config
from ..db.db_adapter import FixtureAdapter
from .bruhat import parse_word
from .chevalley import CapMode, CapQuery, cap
from .errors import InputError
from .exactalg import ExactScalar, qq
from .integrality import (
    E7_FIXTURE_WITNESSES,
    CertificationResult,
    ParabolicChoice,
    certify,
    half_delta_class,
    invariant_basis,
    invariant_basis_mod_Iplus,
    iplus_slice,
    is_invariant_mod_iplus,
    span_contains,
)
from .localization import localize, subdiagram_word
from .mpoly import MultiPoly, parse_polynomial
from .reproduce import ReproductionReport, reproduce
from .rootdata import Coweight, RootSystemDescriptor, catalog, coweight_class, describe, weight_table

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


class CertifierService:
    """Service regroupant les requêtes du moteur (cap, localisation, invariants, certificats, reproduction)."""

    def __init__(self, fixture_adapter: FixtureAdapter):
        """
        Initialise le service.

        Args:
            fixture_adapter: Adaptateur de stockage des fixtures et des rapports
        """
        self.fixture_adapter = fixture_adapter

    async def load_polynomial(self, system: RootSystemDescriptor, text: Optional[str] = None,
                              path: Optional[str] = None, fixture: Optional[str] = None,
                              basis: Optional[str] = None) -> Optional[MultiPoly]:
        """
        Charge un polynôme depuis une chaîne, un fichier ou une fixture nommée.

        Args:
            system: Système actif
            text: Polynôme en ligne
            path: Chemin d'un fichier de polynôme
            fixture: Nom d'une fixture
            basis: Base d'arrivée

        Returns:
            Polynôme, ou None si aucune source n'est donnée
        """
        sources = [s for s in (text, path, fixture) if s is not None]
        if len(sources) > 1:
            raise InputError("Une seule source de polynôme est permise (--poly, --poly-file ou --fixture)")
        if fixture is not None:
            text = await self.fixture_adapter.get_polynomial_text(fixture)
        elif path is not None:
            try:
                with open(path, encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as e:
                raise InputError(f"Lecture impossible de '{path}' : {e}")
        if text is None:
            return None
        return parse_polynomial(text, system, basis)

    async def fixture_texts(self, names: Optional[Sequence[str]] = None) -> Dict[str, str]:
        """Textes des fixtures demandées (par défaut : toutes celles de l'adaptateur)."""
        names = await self.fixture_adapter.list_fixtures() if names is None else names
        return {name: await self.fixture_adapter.get_polynomial_text(name) for name in names}

    @staticmethod
    def coweight(system: RootSystemDescriptor, generator: str = "z0", d: int = 1,
                 coords: Optional[Sequence[str]] = None) -> Coweight:
        """Copoids d·z, ou copoids explicite donné dans la base des coracines simples."""
        if coords is None:
            return coweight_class(system, generator, d)
        if len(coords) != system.rank:
            raise InputError(f"{len(coords)} coordonnées de copoids, attendu {system.rank}")
        try:
            return Coweight(system, tuple(qq(c) for c in coords))
        except (ValueError, TypeError) as e:
            raise InputError(f"Coordonnée de copoids invalide : {e}")

    async def rootinfo(self, family: str, rank: Optional[int] = None, generator: Optional[str] = None,
                       d: int = 1) -> Dict[str, Any]:
        system = catalog(family, rank)
        info = describe(system)
        if generator is not None:
            z = coweight_class(system, generator, d)
            info["weight_table"] = {"generator": generator, "d": d, "values": weight_table(system, z)}
        return info

    async def cap(self, family: str, rank: Optional[int], polynomial: MultiPoly, word_text: str,
                  z: Optional[Coweight] = None, mode: str = "fibered") -> ExactScalar:
        """
        ∫ sur bX_w (mode fibré) ou X_w (mode vertical) d'un polynôme.

        Args:
            family: Famille
            rank: Rang
            polynomial: Polynôme homogène
            word_text: Liste de lettres (``4,6,5``)
            z: Copoids (mode fibré)
            mode: fibered ou vertical

        Returns:
            Valeur exacte
        """
        system = catalog(family, rank)
        word = parse_word(system, word_text)
        query = CapQuery(system, polynomial, word, z, CapMode(mode))
        return await asyncio.to_thread(cap, query)

    async def localize(self, family: str, rank: Optional[int], r: int, selector: str, generator: str, d: int,
                       polynomial: Optional[MultiPoly] = None) -> Dict[str, Any]:
        """
        Intégrale sur le sous-diagramme projectif choisi, par localisation.

        Sans polynôme, la classe ½δ du sous-diagramme est utilisée (types B et D).
        Le mot vide est traité par Chevalley.
        """
        system = catalog(family, rank)
        word = subdiagram_word(system, r, selector, generator)
        if polynomial is None:
            polynomial = half_delta_class(system, r).polynomial
        z = coweight_class(system, generator, d)
        if word.letters:
            value = await asyncio.to_thread(localize, system, word, polynomial, z)
        else:
            value = await asyncio.to_thread(cap, CapQuery(system, polynomial, word, z, CapMode.FIBERED))
        return {"word": word, "polynomial": polynomial, "value": value}

    async def invariants(self, family: str, rank: Optional[int], r: int, degree: int, mod_iplus: bool = False,
                         check: Optional[MultiPoly] = None) -> Dict[str, Any]:
        """
        Base entière des W_r-invariants de degré donné, éventuellement modulo I⁺.

        Args:
            family: Famille
            rank: Rang
            r: Racine retirée
            degree: Degré
            mod_iplus: Réduire modulo l'idéal des W-invariants de degré positif
            check: Polynôme dont on teste l'appartenance à l'espace engendré

        Returns:
            Base, et résultats du test d'appartenance le cas échéant
        """
        system = catalog(family, rank)
        P = ParabolicChoice(system, r)
        if mod_iplus:
            basis = await asyncio.to_thread(invariant_basis_mod_Iplus, system, P, degree)
        else:
            basis = await asyncio.to_thread(invariant_basis, system, P, degree)
        result: Dict[str, Any] = {"parabolic": P.label, "degree": degree, "mod_iplus": mod_iplus, "basis": basis}
        if check is not None:
            modulo = iplus_slice(system, degree) if mod_iplus else None
            result["contains"] = span_contains(basis, check, modulo)
            result["invariance"] = is_invariant_mod_iplus(check, P)
        return result

    async def certify(self, family: str, rank: Optional[int], r: int, generator: str = "z0",
                      d: int = 1) -> CertificationResult:
        system = catalog(family, rank)
        fixtures = None
        if system.family == "E7" and r in E7_FIXTURE_WITNESSES:
            fixtures = await self.fixture_texts([E7_FIXTURE_WITNESSES[r][0]])
        return await asyncio.to_thread(certify, system, r, generator, d, fixtures)

    async def reproduce(self, scope: str = "all", d: int = 1, workers: Optional[int] = None,
                        save: bool = False) -> Dict[str, Any]:
        """
        Recalcule la table de reproduction et sauvegarde éventuellement le rapport.

        Args:
            scope: A, C, B, D, E6, E7 ou all
            d: Multiplicateur du copoids
            workers: Nombre de processus (par défaut SCHUBERT_WORKERS)
            save: Sauvegarder le rapport JSON via l'adaptateur

        Returns:
            Rapport et emplacement éventuel
        """
        workers = config.SCHUBERT_WORKERS if workers is None else workers
        fixtures = None
        if scope.upper() in ("E7", "ALL"):
            fixtures = await self.fixture_texts([name for name, _ in E7_FIXTURE_WITNESSES.values()])
        report: ReproductionReport = await asyncio.to_thread(reproduce, scope, d, fixtures, workers)
        location = None
        if save:
            stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
            location = await self.fixture_adapter.save_report(f"reproduce-{scope}-d{d}-{stamp}", report.to_dict())
        return {"report": report, "location": location}

    async def list_fixtures(self) -> List[str]:
        return await self.fixture_adapter.list_fixtures()

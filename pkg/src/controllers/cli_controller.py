"""
Contrôleur pour traiter les commandes de la ligne de commande.
"""
import json
import logging
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from ..services.bruhat import parse_word
from ..services.certifier_service import CertifierService
from ..services.errors import InputError, MathematicalError
from ..services.exactalg import format_scalar, scalar_to_dict
from ..services.integrality import IntegralVerdict, NoWitnessFound, NonIntegralityCertificate, certificate_from_dict
from ..services.rootdata import catalog

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

SUBCOMMANDS = ("rootinfo", "cap", "localize", "invariants", "certify", "reproduce")


class CommandError(Exception):
    """Erreur de commande portant le code de sortie."""

    def __init__(self, status: int, detail: str):
        super().__init__(detail)
        self.status = status
        self.detail = detail


class RunConfig(BaseModel):
    """Sélection complète d'une commande, validée avant tout calcul."""
    subcommand: Literal["rootinfo", "cap", "localize", "invariants", "certify", "reproduce"]
    family: Optional[str] = None
    rank: Optional[int] = Field(default=None, ge=1)
    r: Optional[int] = Field(default=None, ge=1)
    word: Optional[str] = None
    subdiagram: str = "auto"
    poly: Optional[str] = None
    poly_file: Optional[str] = None
    fixture: Optional[str] = None
    basis: Optional[Literal["zeta", "eps", "t"]] = None
    d: int = 1
    generator: str = "z0"
    coweight: Optional[List[str]] = None
    mode: Literal["fibered", "vertical"] = "fibered"
    degree: Optional[int] = Field(default=None, ge=0)
    mod_iplus: bool = False
    scope: str = "all"
    replay: Optional[str] = None
    save: bool = False
    workers: Optional[int] = Field(default=None, ge=1)
    output: Literal["text", "json"] = "text"

    @model_validator(mode="after")
    def check_selection(self) -> "RunConfig":
        needs_family = self.subcommand != "reproduce" and not (self.subcommand == "certify" and self.replay)
        if needs_family and not self.family:
            raise ValueError(f"--family est obligatoire pour '{self.subcommand}'")
        if self.subcommand == "cap" and self.word is None:
            raise ValueError("--word est obligatoire pour 'cap' (utiliser 'e' pour le mot vide)")
        if self.subcommand == "cap" and not any((self.poly, self.poly_file, self.fixture)):
            raise ValueError("'cap' demande un polynôme (--poly, --poly-file ou --fixture)")
        if self.subcommand in ("localize", "invariants") and self.r is None:
            raise ValueError(f"--r est obligatoire pour '{self.subcommand}'")
        if self.subcommand == "certify" and self.r is None and not self.replay:
            raise ValueError("--r est obligatoire pour 'certify'")
        if self.subcommand == "invariants" and self.degree is None:
            raise ValueError("--degree est obligatoire pour 'invariants'")
        if self.coweight is not None and self.subcommand != "cap":
            raise ValueError("--coweight n'est accepté que par 'cap'")
        return self


class ResponseModel(BaseModel):
    """Réponse d'une commande, rendue en texte ou en JSON."""

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)

    def to_text(self) -> str:
        return self.to_json()

    @property
    def success(self) -> bool:
        return True


class RootInfoResponse(ResponseModel):
    family: str
    rank: int
    group: str
    cartan: List[List[int]]
    bases: Dict[str, Any]
    coweight_generators: Dict[str, List[str]]
    generator_orders: Dict[str, int]
    torsion: List[int]
    weight_table: Optional[Dict[str, Any]] = None

    def to_text(self) -> str:
        lines = [f"{self.family}{'' if self.family.startswith('E') else self.rank} ({self.group})",
                 "Matrice de Cartan :"]
        lines += ["  " + " ".join(f"{a:>2}" for a in row) for row in self.cartan]
        for name, coords in self.coweight_generators.items():
            lines.append(f"Générateur {name} : ({', '.join(coords)}), ordre {self.generator_orders[name]}")
        lines.append(f"Torsion : {' x '.join(f'Z/{t}' for t in self.torsion)}")
        if self.weight_table:
            values = ", ".join(f"{k} = {v}" for k, v in self.weight_table["values"].items())
            lines.append(f"Évaluations en {self.weight_table['d']}·{self.weight_table['generator']} : {values}")
        return "\n".join(lines)


class CapResponse(ResponseModel):
    family: str
    rank: int
    word: List[int]
    mode: str
    coweight: List[str]
    polynomial: str
    value: Dict[str, int]
    value_text: str

    def to_text(self) -> str:
        return self.value_text


class LocalizeResponse(ResponseModel):
    family: str
    rank: int
    orbit_r: int
    subdiagram: str
    generator: str
    d: int
    word: List[int]
    polynomial: str
    value: Dict[str, int]
    value_text: str

    def to_text(self) -> str:
        return self.value_text


class InvariantsResponse(ResponseModel):
    family: str
    rank: int
    parabolic: str
    degree: int
    mod_iplus: bool
    dimension: int
    basis: List[str]
    contains: Optional[bool] = None
    invariance: Optional[Dict[str, bool]] = None

    def to_text(self) -> str:
        header = f"{self.parabolic}, degré {self.degree}{' modulo I⁺' if self.mod_iplus else ''} : dimension {self.dimension}"
        lines = [header] + [f"  [{i}] {p}" for i, p in enumerate(self.basis, start=1)]
        if self.contains is not None:
            lines.append(f"Polynôme dans l'espace engendré : {'oui' if self.contains else 'non'}")
        if self.invariance is not None:
            flags = ", ".join(f"s{g} : {'oui' if ok else 'non'}" for g, ok in self.invariance.items())
            lines.append(f"Invariance modulo I⁺ : {flags}")
        return "\n".join(lines)


class CertificateModel(ResponseModel):
    family: str
    rank: int
    orbit_r: int
    coweight: Dict[str, Any]
    word: Optional[List[int]] = None
    subdiagram: Optional[str] = None
    polynomial: Optional[str] = None
    justification: Optional[str] = None
    value: Optional[Dict[str, int]] = None
    witness_values: Optional[List[str]] = None
    integral: Optional[bool] = None

    def to_json(self) -> str:
        data = self.model_dump(exclude_none=True)
        data["integral"] = self.integral
        return json.dumps(data, ensure_ascii=False, indent=2)

    def to_text(self) -> str:
        label = f"{self.family}{'' if self.family.startswith('E') else self.rank}"
        target = f"{label}, r = {self.orbit_r}, {self.coweight['d']}·{self.coweight['generator']}"
        if self.integral is True:
            return f"{target} : entier (valeurs des témoins : {', '.join(self.witness_values or [])})"
        if self.integral is None:
            return f"{target} : aucun témoin non entier trouvé ({', '.join(self.witness_values or [])})"
        value = self.value or {}
        where = f"sous-diagramme {self.subdiagram}" if self.subdiagram else f"mot ({','.join(map(str, self.word or []))})"
        return (f"{target} : non entier, {where}, polynôme {self.polynomial}, "
                f"valeur {value.get('num')}/{value.get('den')}")


class ReproduceResponse(ResponseModel):
    scope: str
    d: int
    passed: bool
    total: int
    failed: int
    lines: List[Dict[str, Any]]
    text: str = Field(default="", exclude=True)
    location: Optional[str] = None

    def to_text(self) -> str:
        return self.text + (f"\nRapport sauvegardé : {self.location}" if self.location else "")

    @property
    def success(self) -> bool:
        return self.passed


class CliController:
    """Contrôleur pour traiter les commandes de la ligne de commande."""

    def __init__(self, certifier_service: CertifierService):
        """
        Initialise le contrôleur.

        Args:
            certifier_service: Service de calcul à utiliser
        """
        self.certifier_service = certifier_service

    async def run(self, config: RunConfig) -> ResponseModel:
        """
        Exécute une commande validée.

        Args:
            config: Sélection de la commande

        Returns:
            Réponse de la commande

        Raises:
            CommandError: code 1 pour une erreur mathématique, 2 pour une erreur d'usage
        """
        handler = getattr(self, f"_{config.subcommand}")
        try:
            return await handler(config)
        except CommandError:
            raise
        except (InputError, ValidationError) as e:
            raise CommandError(2, f"Erreur lors du traitement de la commande {config.subcommand}: {e}")
        except MathematicalError as e:
            raise CommandError(1, f"Erreur lors du calcul ({config.subcommand}): {e}")
        except Exception as e:
            logger.exception(f"Erreur inattendue ({config.subcommand})")
            raise CommandError(1, f"Erreur lors du traitement de la commande {config.subcommand}: {str(e)}")

    async def _polynomial(self, config: RunConfig, system):
        return await self.certifier_service.load_polynomial(
            system, config.poly, config.poly_file, config.fixture, config.basis
        )

    async def _rootinfo(self, config: RunConfig) -> RootInfoResponse:
        info = await self.certifier_service.rootinfo(config.family, config.rank, config.generator, config.d)
        info["weight_table"]["values"] = {k: format_scalar(v) for k, v in info["weight_table"]["values"].items()}
        return RootInfoResponse(**info)

    async def _cap(self, config: RunConfig) -> CapResponse:
        system = catalog(config.family, config.rank)
        polynomial = await self._polynomial(config, system)
        z = self.certifier_service.coweight(system, config.generator, config.d, config.coweight)
        value = await self.certifier_service.cap(config.family, config.rank, polynomial, config.word, z, config.mode)
        return CapResponse(
            family=system.family, rank=system.rank, word=list(parse_word(system, config.word).letters),
            mode=config.mode, coweight=[format_scalar(c) for c in z.coords],
            polynomial=polynomial.to_text(), value=scalar_to_dict(value), value_text=format_scalar(value),
        )

    async def _localize(self, config: RunConfig) -> LocalizeResponse:
        system = catalog(config.family, config.rank)
        polynomial = await self._polynomial(config, system)
        result = await self.certifier_service.localize(
            config.family, config.rank, config.r, config.subdiagram, config.generator, config.d, polynomial
        )
        return LocalizeResponse(
            family=system.family, rank=system.rank, orbit_r=config.r, subdiagram=config.subdiagram,
            generator=config.generator, d=config.d, word=list(result["word"].letters),
            polynomial=result["polynomial"].to_text(), value=scalar_to_dict(result["value"]),
            value_text=format_scalar(result["value"]),
        )

    async def _invariants(self, config: RunConfig) -> InvariantsResponse:
        system = catalog(config.family, config.rank)
        check = await self._polynomial(config, system)
        result = await self.certifier_service.invariants(
            config.family, config.rank, config.r, config.degree, config.mod_iplus, check
        )
        invariance = result.get("invariance")
        return InvariantsResponse(
            family=system.family, rank=system.rank, parabolic=result["parabolic"], degree=config.degree,
            mod_iplus=config.mod_iplus, dimension=len(result["basis"]),
            basis=[p.to_text() for p in result["basis"]], contains=result.get("contains"),
            invariance={str(g): ok for g, ok in invariance.items()} if invariance is not None else None,
        )

    async def _certify(self, config: RunConfig) -> CertificateModel:
        if config.replay:
            try:
                with open(config.replay, encoding="utf-8") as handle:
                    data = json.load(handle)
            except (OSError, ValueError) as e:
                raise InputError(f"Certificat illisible '{config.replay}' : {e}")
            result = certificate_from_dict(data)
        else:
            result = await self.certifier_service.certify(config.family, config.rank, config.r,
                                                          config.generator, config.d)
        if isinstance(result, (IntegralVerdict, NoWitnessFound, NonIntegralityCertificate)):
            return CertificateModel(**result.to_dict())
        raise CommandError(1, "Erreur lors de la certification : résultat inattendu")

    async def _reproduce(self, config: RunConfig) -> ReproduceResponse:
        result = await self.certifier_service.reproduce(config.scope, config.d, config.workers, config.save)
        report = result["report"]
        return ReproduceResponse(**report.to_dict(), text=report.to_text(), location=result["location"])

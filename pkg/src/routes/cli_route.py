"""
Routes de la ligne de commande : sous-commandes et options.
"""
import argparse
from typing import Any, Dict, List

from ..config.env import config
from ..controllers.cli_controller import CliController, ResponseModel, RunConfig
from ..services.reproduce import SCOPES


def _coweight_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _selection(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", required=True, help="A, B, C, D, E6 ou E7")
    parser.add_argument("--rank", type=int, help="Rang (facultatif pour E6, E7)")


def _polynomial_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--poly", help="Polynôme en ligne, par exemple 't1*t2'")
    group.add_argument("--poly-file", dest="poly_file", help="Fichier contenant un polynôme")
    group.add_argument("--fixture", help="Polynôme nommé (e7-p5, e7-p6)")
    parser.add_argument("--basis", choices=("zeta", "eps", "t"), help="Base de calcul")


def _coweight(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--d", type=int, default=1, help="Multiplicateur du copoids (défaut : 1)")
    parser.add_argument("--generator", default="z0", help="Générateur du copoids (z0, ou z1 en type D)")


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Construit la configuration validée d'une commande à partir des options analysées.

    Args:
        args: Options renvoyées par ``argparse``

    Returns:
        Configuration validée

    Raises:
        pydantic.ValidationError: combinaison d'options invalide
    """
    values: Dict[str, Any] = {k: v for k, v in vars(args).items() if k != "handler" and v is not None}
    if values.pop("all", False):
        values["scope"] = "all"
    return RunConfig(**values)


def create_cli_parser(cli_controller: CliController) -> argparse.ArgumentParser:
    """
    Crée l'analyseur de la ligne de commande.

    Args:
        cli_controller: Contrôleur à utiliser

    Returns:
        Analyseur ``argparse`` configuré ; chaque sous-commande porte un ``handler`` asynchrone
    """
    parser = argparse.ArgumentParser(
        prog="schubert",
        description="Calcul exact de Schubert fibré et certificats de non-intégralité",
    )
    parser.add_argument("--output", choices=("text", "json"), default=config.OUTPUT_FORMAT,
                        help="Format de sortie (défaut : OUTPUT_FORMAT)")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    async def handle(args: argparse.Namespace) -> ResponseModel:
        return await cli_controller.run(run_config_from_args(args))

    rootinfo = subparsers.add_parser("rootinfo", help="Décrit un système de racines du catalogue")
    _selection(rootinfo)
    _coweight(rootinfo)

    cap = subparsers.add_parser("cap", help="∫ sur bX_w (ou X_w) d'un polynôme, par Chevalley")
    _selection(cap)
    cap.add_argument("--word", required=True, help="Lettres séparées par des virgules, 'e' pour le mot vide")
    _polynomial_source(cap)
    _coweight(cap)
    cap.add_argument("--coweight", type=_coweight_list, help="Copoids explicite dans la base h (h1,...,hn)")
    cap.add_argument("--mode", choices=("fibered", "vertical"), default="fibered")

    localize = subparsers.add_parser("localize", help="∫ sur un sous-diagramme projectif, par localisation")
    _selection(localize)
    localize.add_argument("--r", type=int, required=True, help="Racine retirée")
    localize.add_argument("--subdiagram", default="auto",
                          choices=("auto", "Gamma", "GammaPrime", "GammaDoublePrime"))
    _polynomial_source(localize)
    _coweight(localize)

    invariants = subparsers.add_parser("invariants", help="Base entière des W_r-invariants d'un degré")
    _selection(invariants)
    invariants.add_argument("--r", type=int, required=True, help="Racine retirée")
    invariants.add_argument("--degree", type=int, required=True)
    invariants.add_argument("--mod-iplus", dest="mod_iplus", action="store_true",
                            help="Réduire modulo l'idéal des W-invariants de degré positif")
    _polynomial_source(invariants)

    certify = subparsers.add_parser("certify", help="Certificat de (non-)intégralité de la classe κ")
    certify.add_argument("--family", help="A, B, C, D, E6 ou E7")
    certify.add_argument("--rank", type=int)
    certify.add_argument("--r", type=int, help="Racine retirée")
    _coweight(certify)
    certify.add_argument("--replay", help="Rejoue un certificat JSON enregistré")

    reproduce = subparsers.add_parser("reproduce", help="Recalcule la table des intégrales de référence")
    reproduce.add_argument("scope", nargs="?", default="all", choices=SCOPES + ("all",))
    reproduce.add_argument("--all", action="store_true", help="Équivalent à la portée 'all'")
    reproduce.add_argument("--d", type=int, default=1)
    reproduce.add_argument("--workers", type=int, help="Nombre de processus (défaut : SCHUBERT_WORKERS)")
    reproduce.add_argument("--save", action="store_true", help="Sauvegarde le rapport JSON")

    for subparser in (rootinfo, cap, localize, invariants, certify, reproduce):
        subparser.add_argument("--output", choices=("text", "json"), default=argparse.SUPPRESS)
        subparser.set_defaults(handler=handle)

    return parser

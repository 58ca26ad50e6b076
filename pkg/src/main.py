"""
Point d'entrée principal de la ligne de commande (``python -m src.main``).
"""
import asyncio
import logging
import sys
from typing import List, Optional

from .config.env import config, validate_env
from .app import create_app
from .controllers.cli_controller import CommandError

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Fonction principale : analyse les options, exécute la commande et écrit le résultat sur stdout.

    Args:
        argv: Arguments (par défaut : ``sys.argv[1:]``)

    Returns:
        Code de sortie : 0 succès, 1 erreur mathématique ou échec de reproduction, 2 erreur d'usage
    """
    # Vérifier que les variables d'environnement sont valides
    invalid_vars = validate_env()
    if invalid_vars:
        logger.error(f"Variables d'environnement invalides : {', '.join(invalid_vars)}")
        logger.error("Veuillez corriger ces variables dans le fichier .env")
        return 2

    logging.getLogger().setLevel(config.LOG_LEVEL)

    parser = create_app()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        response = asyncio.run(args.handler(args))
    except CommandError as e:
        logger.error(e.detail)
        return e.status
    except ValueError as e:
        # erreurs de validation pydantic de RunConfig
        logger.error(f"Erreur lors de la validation de la commande: {e}")
        return 2

    print(response.to_json() if args.output == "json" else response.to_text())
    return 0 if response.success else 1


# Point d'entrée pour l'exécution directe
if __name__ == "__main__":
    sys.exit(main())

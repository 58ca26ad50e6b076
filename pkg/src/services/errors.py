"""
Hiérarchie d'exceptions du moteur de calcul de Schubert.

Les erreurs mathématiques (précondition violée) sont distinguées des erreurs
d'entrée (texte mal formé, sélection invalide) : la CLI les traduit en codes
de sortie différents.
"""


class SchubertError(Exception):
    """Racine de toutes les erreurs du moteur."""


class MathematicalError(SchubertError, ValueError):
    """Une précondition mathématique n'est pas satisfaite."""


class DegreeMismatchError(MathematicalError):
    """Le degré du polynôme ne correspond pas à la dimension de la cellule."""


class InadmissibleWordError(MathematicalError):
    """Le mot de Weyl n'est pas admissible."""


class MixedSystemsError(MathematicalError):
    """Les objets combinés appartiennent à des systèmes de racines différents."""


class NotIndependentError(MathematicalError):
    """Les vecteurs fournis ne sont pas linéairement indépendants."""


class NonConstantSumError(MathematicalError):
    """Une somme de localisation n'est pas une constante."""


class InvalidSubdiagramError(MathematicalError):
    """Le chemin du diagramme de Dynkin n'est pas un sous-diagramme projectif."""


class InvalidClassError(MathematicalError):
    """La classe demandée n'existe pas pour ce choix de famille et d'orbite."""


class EquivariantVariableError(MathematicalError):
    """Le polynôme contient déjà la variable équivariante."""


class InputError(SchubertError, ValueError):
    """Donnée d'entrée mal formée."""


class PolynomialSyntaxError(InputError):
    """Texte de polynôme invalide pour la grammaire ou pour le système actif."""


class CatalogError(InputError):
    """Famille ou rang inconnu du catalogue."""


class WordSyntaxError(InputError):
    """Liste de lettres invalide."""


class FixtureNotFoundError(InputError):
    """Polynôme nommé introuvable."""

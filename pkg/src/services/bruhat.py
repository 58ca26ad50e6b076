"""
Combinatoire des mots de Weyl : mots admissibles, recouvrements par
suppression d'une lettre, chaînes maximales et mots des sous-diagrammes
projectifs.

Un mot est stocké dans l'ordre d'écriture (gauche à droite) :
w = s_{i₁}∘…∘s_{i_l}, la lettre la plus à droite agissant en premier.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

from sympy.polys.domains import QQ

from .errors import CatalogError, InadmissibleWordError, InvalidSubdiagramError, WordSyntaxError
from .rootdata import (
    Coweight,
    RootSystemDescriptor,
    adjacent,
    check_index,
    commute,
    coroot,
    reflect_coweight,
    reflect_zeta,
)

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeylWord:
    """Mot en réflexions simples, lu de gauche à droite."""
    system: RootSystemDescriptor
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(i) for i in self.letters))
        for i in self.letters:
            check_index(self.system, i)

    def __len__(self) -> int:
        return len(self.letters)

    def delete(self, position: int) -> "WeylWord":
        """Sous-mot obtenu en supprimant la lettre en position ``position`` (à partir de 0)."""
        return WeylWord(self.system, self.letters[:position] + self.letters[position + 1:])

    def prefix(self, count: int) -> "WeylWord":
        return WeylWord(self.system, self.letters[:count])

    def to_text(self) -> str:
        return ",".join(str(i) for i in self.letters) if self.letters else "e"

    def __str__(self) -> str:
        return self.to_text()


def parse_word(system: RootSystemDescriptor, text: str) -> WeylWord:
    """
    Analyse une liste de lettres séparées par des virgules (``4,6,5``).

    Le mot vide s'écrit ``e`` ou une chaîne vide.
    """
    cleaned = (text or "").strip().strip("()[]")
    if cleaned in ("", "e"):
        return WeylWord(system, ())
    try:
        letters = tuple(int(part) for part in cleaned.split(","))
    except ValueError:
        raise WordSyntaxError(f"Liste de lettres invalide : '{text}'")
    try:
        return WeylWord(system, letters)
    except CatalogError as e:
        raise WordSyntaxError(str(e))


@dataclass(frozen=True)
class AdmissibilityReport:
    """Résultat du test d'admissibilité avec diagnostics."""
    admissible: bool
    violations: Tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.admissible


def is_admissible(word: WeylWord) -> AdmissibilityReport:
    """
    Un mot est admissible si ses lettres sont deux à deux distinctes et si chaque
    lettre, sauf la plus à droite, ne commute pas avec au moins une lettre située
    strictement à sa droite.

    Args:
        word: Mot de Weyl

    Returns:
        Rapport (booléen et lettres fautives)
    """
    letters = word.letters
    violations = []
    if len(set(letters)) != len(letters):
        repeated = sorted({i for i in letters if letters.count(i) > 1})
        violations.append(f"lettres répétées : {repeated}")
    for position, letter in enumerate(letters[:-1]):
        right = letters[position + 1:]
        if all(commute(word.system, letter, other) for other in right if other != letter):
            violations.append(f"la lettre {letter} (position {position + 1}) commute avec toutes les lettres à sa droite")
    return AdmissibilityReport(admissible=not violations, violations=tuple(violations))


def require_admissible(word: WeylWord) -> None:
    report = is_admissible(word)
    if not report:
        raise InadmissibleWordError(f"Mot non admissible ({word.to_text()}) : " + "; ".join(report.violations))


@dataclass(frozen=True)
class CoverDatum:
    """Recouvrement w′ ⋖ w : sous-mot, position supprimée et coracine h_α de la réflexion."""
    subword: WeylWord
    position: int
    reflection_coroot: Coweight
    reflection_root: Tuple


def deletion_coroot(word: WeylWord, position: int) -> Coweight:
    """h_α = (s_{i₁}…s_{i_{p−1}})(h_{α_{i_p}})."""
    h = coroot(word.system, word.letters[position])
    for j in reversed(word.letters[:position]):
        h = reflect_coweight(j, h)
    return h


def deletion_root(word: WeylWord, position: int) -> Tuple:
    """α = (s_{i₁}…s_{i_{p−1}})(α_{i_p}) en coordonnées ζ."""
    root = word.system.simple_root(word.letters[position])
    for j in reversed(word.letters[:position]):
        root = reflect_zeta(word.system, j, root)
    return root


def single_deletions(word: WeylWord) -> List[CoverDatum]:
    """Toutes les suppressions d'une lettre, sans test d'admissibilité."""
    return [
        CoverDatum(
            subword=word.delete(p),
            position=p,
            reflection_coroot=deletion_coroot(word, p),
            reflection_root=deletion_root(word, p),
        )
        for p in range(len(word.letters))
    ]


def covers(word: WeylWord) -> List[CoverDatum]:
    """
    Recouvrements d'un mot admissible : un par position supprimée.

    Raises:
        InadmissibleWordError: si le mot n'est pas admissible
    """
    require_admissible(word)
    return single_deletions(word)


Chain = Tuple[CoverDatum, ...]


def _chains_from(word: WeylWord) -> Iterator[Chain]:
    if not word.letters:
        yield ()
        return
    for datum in single_deletions(word):
        for tail in _chains_from(datum.subword):
            yield (datum,) + tail


def maximal_chains(word: WeylWord) -> Iterator[Chain]:
    """
    Chaînes maximales de suppressions de w jusqu'au mot vide (l(w)! chaînes).

    Chaque chaîne est la suite des recouvrements successifs, dans un ordre
    déterministe (positions croissantes).
    """
    require_admissible(word)
    return _chains_from(word)


def projective_subdiagram_word(system: RootSystemDescriptor, r: int, path: Sequence[int]) -> WeylWord:
    """
    Mot w_Γ = s_(k)∘…∘s_(1) d'un sous-diagramme projectif Γ = (α_(1)=α_r, …, α_(k)).

    Args:
        system: Système de racines
        r: Racine retirée (orbite G/P_r)
        path: Chaîne de nœuds du diagramme de Dynkin, commençant par r

    Returns:
        Mot (path[k−1], …, path[0])

    Raises:
        InvalidSubdiagramError: chaîne invalide, arête multiple ou nœud répété
    """
    check_index(system, r)
    path = tuple(int(i) for i in path)
    for i in path:
        check_index(system, i)
    if not path:
        return WeylWord(system, ())
    if path[0] != r:
        raise InvalidSubdiagramError(f"Le chemin doit commencer par α_{r}, il commence par α_{path[0]}")
    if len(set(path)) != len(path):
        raise InvalidSubdiagramError(f"Nœud répété dans le chemin {list(path)}")
    for a, b in zip(path, path[1:]):
        if not adjacent(system, a, b):
            raise InvalidSubdiagramError(f"α_{a} et α_{b} ne sont pas voisins dans le diagramme de {system.label}")
        if system.cartan[a - 1][b - 1] * system.cartan[b - 1][a - 1] != 1:
            raise InvalidSubdiagramError(f"Arête multiple entre α_{a} et α_{b} : racines de longueurs différentes")
    for i, a in enumerate(path):
        for b in path[i + 2:]:
            if adjacent(system, a, b):
                raise InvalidSubdiagramError(f"α_{a} et α_{b} sont voisins : le chemin n'est pas une chaîne")
    return WeylWord(system, tuple(reversed(path)))


def word_matrix(word: WeylWord) -> Tuple[Tuple, ...]:
    """Matrice (images des ζ_i) de l'élément représenté par le mot."""
    system = word.system
    images = []
    for i in range(system.rank):
        vec = tuple(QQ.one if k == i else QQ.zero for k in range(system.rank))
        for j in reversed(word.letters):
            vec = reflect_zeta(system, j, vec)
        images.append(tuple(vec))
    return tuple(images)

"""
Formule de Chevalley généralisée : évaluation exacte de ∫_{[bX_w]} κ(f)
(mode fibré) et de ∫_{[X_w]} f (mode vertical) par épluchage récursif des
monômes.

Pour un monôme g·x (x facteur linéaire épluché en premier) :

    Cap_v(1, e) = 1
    Cap_v(g·x, u) = −Σ_{(u′, h)} (u′·x)(h) · Cap_v(g, u′)
    Cap_b(g·x, u) = −(u·x)(z) · Cap_v(g, u) − Σ_{(u′, h)} (u′·x)(h) · Cap_b(g, u′)

la somme portant sur les recouvrements (u′, h_α) de u par suppression d'une lettre.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from .bruhat import CoverDatum, WeylWord, maximal_chains, require_admissible, single_deletions
from .errors import DegreeMismatchError, EquivariantVariableError, MixedSystemsError
from .exactalg import ExactScalar, dot
from .mpoly import MultiPoly, act_on_zeta
from .rootdata import Coweight, RootSystemDescriptor, zero_coweight

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


class CapMode(str, Enum):
    FIBERED = "fibered"
    VERTICAL = "vertical"


@dataclass(frozen=True)
class CapQuery:
    """
    Requête de cap : polynôme homogène, mot admissible, copoids et mode.

    En mode fibré le degré du polynôme vaut l(w) + 1, en mode vertical l(w).
    """
    system: RootSystemDescriptor
    polynomial: MultiPoly
    word: WeylWord
    coweight: Optional[Coweight] = None
    mode: CapMode = CapMode.FIBERED

    def __post_init__(self):
        object.__setattr__(self, "mode", CapMode(self.mode))
        if self.coweight is None:
            object.__setattr__(self, "coweight", zero_coweight(self.system))
        for name, other in (("polynôme", self.polynomial.system), ("mot", self.word.system),
                            ("copoids", self.coweight.system)):
            if other.key != self.system.key:
                raise MixedSystemsError(f"Le {name} appartient à {other.label}, la requête à {self.system.label}")
        require_admissible(self.word)
        if self.polynomial.has_equivariant():
            raise EquivariantVariableError("Le polynôme d'une requête de cap ne doit pas contenir ε₀")
        if self.polynomial.is_zero:
            return
        if not self.polynomial.is_homogeneous():
            raise DegreeMismatchError("Le polynôme n'est pas homogène")
        expected = len(self.word) + (1 if self.mode == CapMode.FIBERED else 0)
        if self.polynomial.degree() != expected:
            raise DegreeMismatchError(
                f"Degré {self.polynomial.degree()} incompatible avec le mot {self.word.to_text()} "
                f"en mode {self.mode.value} (attendu {expected})"
            )


Factors = Tuple[int, ...]


class _CapEngine:
    """Récursion mémoïsée pour une requête ; les facteurs sont des indices de variables de la base."""

    def __init__(self, query: CapQuery, basis: str):
        self.system = query.system
        self.rows = query.system.basis(basis).rows
        self.z = query.coweight.coords
        self.vertical_memo: Dict[Tuple[Factors, Tuple[int, ...]], ExactScalar] = {}
        self.fibered_memo: Dict[Tuple[Factors, Tuple[int, ...]], ExactScalar] = {}
        self.cover_memo: Dict[Tuple[int, ...], List[CoverDatum]] = {}
        self.root_memo: Dict[Tuple[Tuple[int, ...], int], Tuple] = {}

    def covers(self, letters: Tuple[int, ...]) -> List[CoverDatum]:
        if letters not in self.cover_memo:
            self.cover_memo[letters] = single_deletions(WeylWord(self.system, letters))
        return self.cover_memo[letters]

    def image(self, letters: Tuple[int, ...], factor: int) -> Tuple:
        key = (letters, factor)
        if key not in self.root_memo:
            self.root_memo[key] = act_on_zeta(self.system, letters, self.rows[factor])
        return self.root_memo[key]

    def vertical(self, factors: Factors, letters: Tuple[int, ...]) -> ExactScalar:
        if len(factors) != len(letters):
            return QQ.zero
        if not factors:
            return QQ.one
        key = (factors, letters)
        if key in self.vertical_memo:
            return self.vertical_memo[key]
        x, rest = factors[0], factors[1:]
        total = QQ.zero
        for datum in self.covers(letters):
            weight = dot(self.image(datum.subword.letters, x), datum.reflection_coroot.coords)
            if weight:
                total -= weight * self.vertical(rest, datum.subword.letters)
        self.vertical_memo[key] = total
        return total

    def fibered(self, factors: Factors, letters: Tuple[int, ...]) -> ExactScalar:
        if len(factors) != len(letters) + 1:
            return QQ.zero
        key = (factors, letters)
        if key in self.fibered_memo:
            return self.fibered_memo[key]
        x, rest = factors[0], factors[1:]
        total = QQ.zero
        base = dot(self.image(letters, x), self.z)
        if base:
            total -= base * self.vertical(rest, letters)
        for datum in self.covers(letters):
            weight = dot(self.image(datum.subword.letters, x), datum.reflection_coroot.coords)
            if weight:
                total -= weight * self.fibered(rest, datum.subword.letters)
        self.fibered_memo[key] = total
        return total


def _factor_lists(polynomial: MultiPoly, peel_order: Optional[Sequence[int]]):
    """(facteurs ordonnés, coefficient) pour chaque monôme ; ordre croissant des indices par défaut."""
    rank = polynomial.system.rank
    order = list(peel_order) if peel_order is not None else list(range(rank))
    if sorted(order) != list(range(rank)):
        raise ValueError(f"Ordre d'épluchage invalide {order} : attendu une permutation de 0..{rank - 1}")
    priority = {index: position for position, index in enumerate(order)}
    for monom, coeff in polynomial.terms():
        factors = []
        for index, exponent in enumerate(monom[:rank]):
            factors.extend([index] * exponent)
        factors.sort(key=lambda i: priority[i])
        yield tuple(factors), coeff


def cap(query: CapQuery, peel_order: Optional[Sequence[int]] = None, basis: Optional[str] = None) -> ExactScalar:
    """
    Évalue exactement le cap d'une requête.

    Args:
        query: Requête validée
        peel_order: Permutation des indices de variables fixant l'ordre d'épluchage
            (par défaut : indices croissants)
        basis: Base de calcul (par défaut : base préférée du système)

    Returns:
        Valeur rationnelle exacte
    """
    basis = basis or query.system.preferred_basis
    polynomial = query.polynomial.to_basis(basis)
    if polynomial.is_zero:
        return QQ.zero

    engine = _CapEngine(query, basis)
    evaluate = engine.fibered if query.mode == CapMode.FIBERED else engine.vertical
    letters = query.word.letters

    total = QQ.zero
    for factors, coeff in _factor_lists(polynomial, peel_order):
        total += coeff * evaluate(factors, letters)

    logger.info(
        f"Cap {query.mode.value} sur {query.system.label}, mot {query.word.to_text()}, "
        f"{len(polynomial.terms())} monômes : {total}"
    )
    logger.debug(f"Mémo vertical {len(engine.vertical_memo)}, fibré {len(engine.fibered_memo)}")
    return total


def fibered_cap(polynomial: MultiPoly, word: WeylWord, z: Coweight) -> ExactScalar:
    """Raccourci pour ∫_{[bX_w]} κ(f)."""
    return cap(CapQuery(polynomial.system, polynomial, word, z, CapMode.FIBERED))


def vertical_cap(polynomial: MultiPoly, word: WeylWord) -> ExactScalar:
    """Raccourci pour ∫_{[X_w]} f."""
    return cap(CapQuery(polynomial.system, polynomial, word, None, CapMode.VERTICAL))


def cap_by_chains(query: CapQuery, basis: Optional[str] = None) -> ExactScalar:
    """
    Même valeur que ``cap``, par énumération explicite des chaînes maximales.

    Chaque chaîne u₀ = w → u₁ → … → u_l = e contribue Π_k −(u_k·x_k)(h_k) ; en mode
    fibré, l'étape de base −(u_j·x_{j+1})(z) est insérée à chaque position j.
    Coût factoriel en l(w) : réservé aux vérifications.
    """
    basis = basis or query.system.preferred_basis
    polynomial = query.polynomial.to_basis(basis)
    if polynomial.is_zero:
        return QQ.zero

    system = query.system
    rows = system.basis(basis).rows
    z = query.coweight.coords
    word = query.word
    chains = list(maximal_chains(word))

    def step(letters, factor, h) -> ExactScalar:
        return -dot(act_on_zeta(system, letters, rows[factor]), h)

    total = QQ.zero
    for factors, coeff in _factor_lists(polynomial, None):
        value = QQ.zero
        for chain in chains:
            if query.mode == CapMode.VERTICAL:
                product = QQ.one
                for k, datum in enumerate(chain):
                    product *= step(datum.subword.letters, factors[k], datum.reflection_coroot.coords)
                value += product
                continue
            words = [word.letters] + [datum.subword.letters for datum in chain]
            for j in range(len(chain) + 1):
                product = step(words[j], factors[j], z)
                for k, datum in enumerate(chain):
                    factor = factors[k] if k < j else factors[k + 1]
                    product *= step(datum.subword.letters, factor, datum.reflection_coroot.coords)
                value += product
        total += coeff * value
    logger.info(f"Cap par chaînes sur {system.label}, mot {word.to_text()} : {len(chains)} chaînes, valeur {total}")
    return total

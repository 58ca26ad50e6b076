"""
Localisation exacte aux points fixes de C*×T pour les variétés de Schubert
fibrées bX_{w_Γ} associées aux sous-diagrammes projectifs.

Les 2(k+1) points fixes sont w_(j)(0) et w_(j)(∞), j = 0..k ; chaque point
contribue (classe restreinte) / (classe d'Euler) et la somme est une constante
rationnelle.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from random import Random
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from ..config.env import config
from .bruhat import WeylWord, projective_subdiagram_word
from .errors import (
    DegreeMismatchError,
    EquivariantVariableError,
    InvalidSubdiagramError,
    MathematicalError,
    MixedSystemsError,
    NonConstantSumError,
)
from .exactalg import ExactScalar, dot
from .mpoly import MultiPoly, compose, equivariant_shift, equivariant_variable, weyl_act, zeta_form
from .rootdata import Coweight, RootSystemDescriptor, check_index

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

MAX_RESAMPLING = 20
CHECK_POINTS = 3


class Pole(str, Enum):
    ZERO = "0"
    INFINITY = "inf"


@dataclass(frozen=True)
class FixedPointDatum:
    """Donnée d'un point fixe w_(j)(pôle) : classe restreinte et facteurs de la classe d'Euler."""
    index: int
    pole: Pole
    restricted_class: MultiPoly
    euler_class: Tuple[MultiPoly, ...]

    @property
    def point(self) -> Tuple[int, str]:
        return (self.index, self.pole.value)


@dataclass(frozen=True)
class RationalFunctionSum:
    """Somme de fractions numérateur / produit de formes linéaires non nulles."""
    summands: Tuple[Tuple[MultiPoly, Tuple[MultiPoly, ...]], ...]

    @classmethod
    def from_fixed_points(cls, data: Sequence[FixedPointDatum]) -> "RationalFunctionSum":
        return cls(tuple((datum.restricted_class, datum.euler_class) for datum in data))

    def evaluate(self, values: Sequence) -> ExactScalar:
        """Valeur exacte en un point où aucun dénominateur ne s'annule."""
        total = QQ.zero
        for numerator, factors in self.summands:
            denominator = QQ.one
            for factor in factors:
                denominator *= factor.evaluate(values)
            if not denominator:
                raise ZeroDivisionError("Dénominateur nul au point d'évaluation")
            total += numerator.evaluate(values) / denominator
        return total


def _check_localization_input(system: RootSystemDescriptor, word: WeylWord, f: MultiPoly, z: Coweight) -> None:
    for name, other in (("mot", word.system), ("polynôme", f.system), ("copoids", z.system)):
        if other.key != system.key:
            raise MixedSystemsError(f"Le {name} appartient à {other.label}, pas à {system.label}")
    if f.has_equivariant():
        raise EquivariantVariableError("Le polynôme à localiser ne doit pas contenir ε₀")
    if f.is_zero:
        return
    expected = len(word) + 1
    if not f.is_homogeneous() or f.degree() != expected:
        raise DegreeMismatchError(
            f"Le polynôme doit être homogène de degré {expected} (dimension de bX_w pour w = {word.to_text()})"
        )


def fixed_point_data(system: RootSystemDescriptor, word: WeylWord, f: MultiPoly, z: Coweight) -> List[FixedPointDatum]:
    """
    Données de localisation de bX_{w_Γ}.

    Args:
        system: Système de racines
        word: Mot w_Γ = s_(k)∘…∘s_(1) d'un sous-diagramme projectif
        f: Polynôme homogène de degré k + 1
        z: Copoids de l'accouplement

    Returns:
        Les 2(k+1) points fixes, par j croissant puis pôle 0 avant ∞

    Raises:
        DegreeMismatchError: degré de f différent de k + 1
        InvalidSubdiagramError: le mot ne provient pas d'un sous-diagramme projectif
    """
    _check_localization_input(system, word, f, z)
    path = tuple(reversed(word.letters))
    if path:
        projective_subdiagram_word(system, path[0], path)

    basis = f.basis
    k = len(path)
    roots = [system.simple_root(i) for i in path]
    epsilon0 = equivariant_variable(system, basis)

    def partial_sum(first: int, last: int) -> Tuple:
        # α_(first) + … + α_(last), indices à partir de 1
        return tuple(sum((roots[m - 1][c] for m in range(first, last + 1)), QQ.zero) for c in range(system.rank))

    def form(coords, shifted: bool) -> MultiPoly:
        shift = dot(coords, z.coords) if shifted else None
        return MultiPoly(system, basis, zeta_form(system, coords, basis, equivariant=shift))

    data = []
    for j in range(k + 1):
        prefix = word.letters[k - j:]
        restricted = weyl_act(prefix, f)
        tangent = [partial_sum(h, j) for h in range(1, j + 1)]
        tangent += [tuple(-c for c in partial_sum(j + 1, h)) for h in range(j + 1, k + 1)]

        data.append(FixedPointDatum(
            index=j, pole=Pole.ZERO, restricted_class=restricted,
            euler_class=(epsilon0,) + tuple(form(c, False) for c in tangent),
        ))
        data.append(FixedPointDatum(
            index=j, pole=Pole.INFINITY, restricted_class=equivariant_shift(restricted, z),
            euler_class=(-epsilon0,) + tuple(form(c, True) for c in tangent),
        ))

    logger.info(f"Localisation sur {system.label}, mot {word.to_text()} : {len(data)} points fixes")
    return data


def _factor_key(p: PolyElement) -> FrozenSet:
    return frozenset(p.items())


def _combine(summands: Sequence[Tuple[PolyElement, Sequence[PolyElement]]], ring) -> Tuple[PolyElement, PolyElement]:
    """
    Réduit au dénominateur commun : renvoie (N, L) avec Σ num/den = N / L.

    Les facteurs linéaires sont normalisés unitaires ; L est le ppcm des dénominateurs.
    """
    normalized = []
    distinct: Dict[FrozenSet, PolyElement] = {}
    multiplicity: Dict[FrozenSet, int] = {}
    for numerator, factors in summands:
        scalar = QQ.one
        counts: Dict[FrozenSet, int] = {}
        for factor in factors:
            if not factor:
                raise MathematicalError("Facteur nul dans une classe d'Euler")
            scalar *= factor.LC
            if factor.is_ground:
                continue
            monic = factor.monic()
            key = _factor_key(monic)
            distinct[key] = monic
            counts[key] = counts.get(key, 0) + 1
        for key, count in counts.items():
            multiplicity[key] = max(multiplicity.get(key, 0), count)
        normalized.append((numerator, scalar, counts))

    common = ring.one
    for key, count in multiplicity.items():
        common *= distinct[key] ** count

    total = ring.zero
    for numerator, scalar, counts in normalized:
        term = numerator * (QQ.one / scalar)
        for key, count in multiplicity.items():
            missing = count - counts.get(key, 0)
            if missing:
                term *= distinct[key] ** missing
        total += term
    return total, common


def _common_degree(summands: Sequence[Tuple[PolyElement, Sequence[PolyElement]]]) -> int:
    """Degré du ppcm des dénominateurs."""
    multiplicity: Dict[FrozenSet, int] = {}
    for _, factors in summands:
        counts: Dict[FrozenSet, int] = {}
        for factor in factors:
            if factor and not factor.is_ground:
                key = _factor_key(factor.monic())
                counts[key] = counts.get(key, 0) + 1
        for key, count in counts.items():
            multiplicity[key] = max(multiplicity.get(key, 0), count)
    return sum(multiplicity.values())


def _constant_quotient(numerator: PolyElement, denominator: PolyElement) -> Optional[ExactScalar]:
    """c si N = c·L, sinon None."""
    if not numerator:
        return QQ.zero
    c = numerator.LC / denominator.LC
    if numerator - denominator * c:
        return None
    return c


def _restrict_to_line(summand_polys, ring, rng: Random):
    """Restreint chaque polynôme à une droite affine rationnelle aléatoire x = a + s·b."""
    line_ring = PolyRing(["s"], QQ, lex)
    s = line_ring.gens[0]
    for _ in range(MAX_RESAMPLING):
        a = [QQ(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(ring.ngens)]
        b = [QQ(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(ring.ngens)]
        images = [line_ring.ground_new(ai) + s * bi for ai, bi in zip(a, b)]
        restricted = []
        degenerate = False
        for numerator, factors in summand_polys:
            line_factors = [compose(factor, images, line_ring) for factor in factors]
            if any(not factor for factor in line_factors):
                degenerate = True
                break
            restricted.append((compose(numerator, images, line_ring), line_factors))
        if not degenerate:
            return restricted, line_ring
    raise MathematicalError("Impossible de trouver une droite évitant les zéros des dénominateurs")


def _random_point(rng: Random, nvars: int) -> List[ExactScalar]:
    return [QQ(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(nvars)]


def sum_constant(S: RationalFunctionSum, strategy: str = "auto", seed: Optional[int] = None,
                 max_degree: Optional[int] = None) -> ExactScalar:
    """
    Valeur constante exacte d'une somme de fractions rationnelles.

    Stratégies : ``symbolic`` (dénominateur commun multivarié puis test N = c·L),
    ``line`` (même calcul restreint à une droite affine aléatoire), ``auto``
    (symbolique tant que le degré du dénominateur commun ne dépasse pas
    ``max_degree``). Le résultat est toujours contrôlé en trois points aléatoires.

    Args:
        S: Somme de fractions
        strategy: auto, symbolic ou line
        seed: Graine des tirages aléatoires (par défaut RANDOM_SEED)
        max_degree: Seuil de la stratégie auto (par défaut LOCALIZATION_SYMBOLIC_MAX_DEGREE)

    Returns:
        Constante exacte

    Raises:
        NonConstantSumError: la somme n'est pas constante
    """
    if strategy not in ("auto", "symbolic", "line"):
        raise ValueError(f"Stratégie de sommation inconnue '{strategy}'")
    if not S.summands:
        return QQ.zero
    seed = config.RANDOM_SEED if seed is None else seed
    max_degree = config.LOCALIZATION_SYMBOLIC_MAX_DEGREE if max_degree is None else max_degree
    rng = Random(seed)

    basis = S.summands[0][0].basis
    S = RationalFunctionSum(tuple(
        (numerator.to_basis(basis), tuple(factor.to_basis(basis) for factor in factors))
        for numerator, factors in S.summands
    ))
    polys = [(numerator.poly, [factor.poly for factor in factors]) for numerator, factors in S.summands]
    ring = S.summands[0][0].ring

    if strategy == "auto":
        degree = _common_degree(polys)
        strategy = "symbolic" if degree <= max_degree else "line"
        if strategy == "line":
            logger.warning(f"Dénominateur commun de degré {degree} > {max_degree} : sommation sur une droite aléatoire")

    if strategy == "symbolic":
        numerator, denominator = _combine(polys, ring)
    else:
        restricted, line_ring = _restrict_to_line(polys, ring, rng)
        numerator, denominator = _combine(restricted, line_ring)

    value = _constant_quotient(numerator, denominator)
    if value is None:
        raise NonConstantSumError(
            "La somme n'est pas une constante : données d'entrée probablement erronées "
            "(not a constant, likely wrong input data)"
        )

    checked = 0
    attempts = 0
    while checked < CHECK_POINTS and attempts < MAX_RESAMPLING * CHECK_POINTS:
        attempts += 1
        point = _random_point(rng, ring.ngens)
        try:
            observed = S.evaluate(point)
        except ZeroDivisionError:
            continue
        if observed != value:
            raise NonConstantSumError(
                f"La somme n'est pas une constante : {observed} au point de contrôle contre {value} "
                "(not a constant, likely wrong input data)"
            )
        checked += 1

    logger.info(f"Somme de {len(S.summands)} fractions ({strategy}) : {value}")
    return value


def localize(system: RootSystemDescriptor, word: WeylWord, f: MultiPoly, z: Coweight,
             strategy: str = "auto") -> ExactScalar:
    """
    ∫_{bX_{w_Γ}} κ(f) par localisation exacte.

    Args:
        system: Système de racines
        word: Mot d'un sous-diagramme projectif
        f: Polynôme homogène de degré l(w) + 1
        z: Copoids
        strategy: Stratégie de ``sum_constant``

    Returns:
        Valeur rationnelle exacte
    """
    data = fixed_point_data(system, word, f, z)
    if f.is_zero:
        return QQ.zero
    return sum_constant(RationalFunctionSum.from_fixed_points(data), strategy=strategy)


class SubdiagramSelector(str, Enum):
    AUTO = "auto"
    GAMMA = "Gamma"
    GAMMA_PRIME = "GammaPrime"
    GAMMA_DOUBLE_PRIME = "GammaDoublePrime"


def subdiagram(system: RootSystemDescriptor, r: int, selector: str = "auto", generator: str = "z0") -> Tuple[int, ...]:
    """
    Chemin (α_(1) = α_r, …, α_(k)) d'un sous-diagramme projectif nommé.

    B_n : Γ = α_r…α_{n−1} (vide si r = n).
    D_n : Γ = α_r…α_{n−1}, Γ′ = α_r…α_{n−2}, α_n (tous deux vides si r = n),
    Γ″ = α_{n−1}, α_{n−2} pour r = n−1.
    Autres familles : Γ = {α_r}.
    ``auto`` choisit Γ″ pour D_n et r = n−1, Γ pour le générateur z1, Γ′ sinon.

    Args:
        system: Système de racines
        r: Racine retirée
        selector: auto, Gamma, GammaPrime ou GammaDoublePrime
        generator: Générateur du copoids (utilisé par ``auto`` en type D)

    Returns:
        Liste de nœuds, éventuellement vide

    Raises:
        InvalidSubdiagramError: sélecteur sans objet pour cette famille ou ce r
    """
    check_index(system, r)
    try:
        choice = SubdiagramSelector(selector)
    except ValueError:
        raise InvalidSubdiagramError(f"Sélecteur de sous-diagramme inconnu '{selector}'")
    n = system.rank

    if system.family == "D":
        if choice == SubdiagramSelector.AUTO:
            if r == n - 1:
                choice = SubdiagramSelector.GAMMA_DOUBLE_PRIME
            elif generator == "z1" and r < n - 1:
                choice = SubdiagramSelector.GAMMA
            else:
                choice = SubdiagramSelector.GAMMA_PRIME
        if choice == SubdiagramSelector.GAMMA_DOUBLE_PRIME:
            if r != n - 1:
                raise InvalidSubdiagramError(f"Γ″ n'est défini que pour r = {n - 1} en type {system.label}")
            return (n - 1, n - 2)
        if r == n - 1:
            raise InvalidSubdiagramError(f"Pour r = {n - 1} en type {system.label}, utiliser GammaDoublePrime")
        if r == n:
            return ()
        if choice == SubdiagramSelector.GAMMA:
            return tuple(range(r, n))
        return tuple(range(r, n - 1)) + (n,)

    if system.family == "B":
        if choice not in (SubdiagramSelector.AUTO, SubdiagramSelector.GAMMA):
            raise InvalidSubdiagramError(f"Seul Γ est défini en type {system.label}")
        return tuple(range(r, n))

    if choice not in (SubdiagramSelector.AUTO, SubdiagramSelector.GAMMA):
        raise InvalidSubdiagramError(f"Seul Γ = {{α_{r}}} est défini en type {system.label}")
    return (r,)


def subdiagram_word(system: RootSystemDescriptor, r: int, selector: str = "auto", generator: str = "z0") -> WeylWord:
    """Mot w_Γ du sous-diagramme nommé."""
    path = subdiagram(system, r, selector, generator)
    if not path:
        return WeylWord(system, ())
    return projective_subdiagram_word(system, r, path)

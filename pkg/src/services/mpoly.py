"""
Polynômes multivariés à coefficients rationnels exacts dans une base de
coordonnées enregistrée, plus une variable équivariante (ε₀, notée ``e0`` ou
``t0``) placée dans le dernier emplacement des vecteurs d'exposants.

Grammaire textuelle (partagée avec la CLI et les fixtures) :
variables ``z1..z8`` (base ζ), ``t1..t8`` (base t de E6/E7, la dernière étant t),
``e0..e8`` (base ε, ``e0`` étant la variable équivariante), rationnels ``p/q``,
opérateurs ``+ - * ^`` et parenthèses.
"""
import logging
import re
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .errors import CatalogError, EquivariantVariableError, MixedSystemsError, PolynomialSyntaxError
from .exactalg import ExactScalar, dot, format_scalar, qq, rational_kernel, sparse_matrix
from .rootdata import (
    Coweight,
    RootSystemDescriptor,
    Weight,
    basis_weight,
    check_index,
    reflect_zeta,
)

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

_ALLOWED_CHARACTERS = re.compile(r"^[\sA-Za-z0-9+\-*/^()]*$")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_VARIABLE = re.compile(r"^([zte])(\d+)$")
_IMPLICIT_PRODUCT = re.compile(r"[0-9][A-Za-z]")
_TRANSFORMATIONS = standard_transformations + (convert_xor,)

_rings: Dict[Tuple[Tuple[str, int], str], PolyRing] = {}


def poly_ring(system: RootSystemDescriptor, basis: str) -> PolyRing:
    """Anneau ``QQ[x_1..x_rang, ε₀]`` d'une base, ordre gradué lexicographique."""
    key = (system.key, basis)
    if key not in _rings:
        data = system.basis(basis)
        _rings[key] = PolyRing(list(data.names) + [data.equivariant], QQ, grlex)
    return _rings[key]


class MultiPoly:
    """
    Polynôme dans une base enregistrée d'un système de racines.

    Immuable : toutes les opérations renvoient un nouvel objet.
    """

    __slots__ = ("system", "basis", "poly")

    def __init__(self, system: RootSystemDescriptor, basis: str, poly: PolyElement):
        self.system = system
        self.basis = basis
        self.poly = poly

    @property
    def ring(self) -> PolyRing:
        return self.poly.ring

    @property
    def nvars(self) -> int:
        return self.system.rank

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.system.key != self.system.key:
                raise MixedSystemsError(f"Systèmes différents : {self.system.label} et {other.system.label}")
            return other if other.basis == self.basis else other.to_basis(self.basis)
        return MultiPoly(self.system, self.basis, self.ring.ground_new(qq(other)))

    def __add__(self, other) -> "MultiPoly":
        return MultiPoly(self.system, self.basis, self.poly + self._coerce(other).poly)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        return MultiPoly(self.system, self.basis, self.poly - self._coerce(other).poly)

    def __rsub__(self, other) -> "MultiPoly":
        return MultiPoly(self.system, self.basis, self._coerce(other).poly - self.poly)

    def __mul__(self, other) -> "MultiPoly":
        return MultiPoly(self.system, self.basis, self.poly * self._coerce(other).poly)

    __rmul__ = __mul__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.system, self.basis, -self.poly)

    def __pow__(self, exponent: int) -> "MultiPoly":
        return MultiPoly(self.system, self.basis, self.poly ** int(exponent))

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly) and other.system.key != self.system.key:
            return False
        return self.poly == self._coerce(other).poly

    def __ne__(self, other) -> bool:
        return not self == other

    __hash__ = None

    def __repr__(self) -> str:
        return f"MultiPoly({self.system.label}, {self.basis}, {self.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    @property
    def is_zero(self) -> bool:
        return not self.poly

    def terms(self) -> List[Tuple[Monomial, ExactScalar]]:
        """Termes dans l'ordre gradué lexicographique décroissant."""
        return self.poly.terms(grlex)

    def degree(self) -> int:
        """Degré total (−1 pour le polynôme nul)."""
        return max((sum(m) for m in self.poly.keys()), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.poly.keys()}) <= 1

    def has_equivariant(self) -> bool:
        return any(m[-1] for m in self.poly.keys())

    def coefficient_of(self, monomial: Union[Sequence[int], str]) -> ExactScalar:
        return coefficient_of(self, monomial)

    def to_basis(self, basis: str) -> "MultiPoly":
        """Réécrit le polynôme dans une autre base enregistrée (substitution exacte)."""
        if basis == self.basis:
            return self
        target = poly_ring(self.system, basis)
        images = [linear_form(Weight(self.system, self.basis, tuple(_unit(self.nvars, i))), basis).poly
                  for i in range(self.nvars)]
        images.append(target.gens[-1])
        return MultiPoly(self.system, basis, compose(self.poly, images, target))

    def evaluate(self, values: Sequence) -> ExactScalar:
        """Évalue le polynôme en un point (rang + 1 valeurs, la dernière pour ε₀)."""
        point = [qq(v) for v in values]
        total = QQ.zero
        for monom, coeff in self.poly.items():
            term = coeff
            for value, exponent in zip(point, monom):
                if exponent:
                    term *= value ** exponent
            total += term
        return total

    def to_text(self) -> str:
        """Écriture dans la grammaire textuelle, termes en ordre gradué lexicographique."""
        if not self.poly:
            return "0"
        names = [str(s) for s in self.ring.symbols]
        pieces = []
        for monom, coeff in self.terms():
            factors = []
            for name, exponent in zip(names, monom):
                if exponent == 1:
                    factors.append(name)
                elif exponent > 1:
                    factors.append(f"{name}^{exponent}")
            magnitude = abs(coeff)
            if not factors:
                body = format_scalar(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = format_scalar(magnitude) + "*" + "*".join(factors)
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def _unit(rank: int, i: int) -> List[ExactScalar]:
    vec = [QQ.zero] * rank
    vec[i] = QQ.one
    return vec


def compose(poly: PolyElement, images: Sequence[PolyElement], target: PolyRing) -> PolyElement:
    """
    Substitution simultanée x_i ↦ images[i] dans l'anneau cible.

    Args:
        poly: Polynôme source
        images: Image de chaque générateur de l'anneau source
        target: Anneau d'arrivée

    Returns:
        Polynôme substitué
    """
    powers: Dict[Tuple[int, int], PolyElement] = {}

    def power(index: int, exponent: int) -> PolyElement:
        key = (index, exponent)
        if key not in powers:
            powers[key] = images[index] if exponent == 1 else power(index, exponent - 1) * images[index]
        return powers[key]

    result = target.zero
    for monom, coeff in poly.items():
        term = target.ground_new(coeff)
        for index, exponent in enumerate(monom):
            if exponent:
                term = term * power(index, exponent)
        result += term
    return result


def from_terms(system: RootSystemDescriptor, basis: str, terms: Dict[Monomial, object]) -> MultiPoly:
    ring = poly_ring(system, basis)
    return MultiPoly(system, basis, ring.from_dict({tuple(m): qq(c) for m, c in terms.items()}))


def constant(system: RootSystemDescriptor, value, basis: Optional[str] = None) -> MultiPoly:
    basis = basis or system.preferred_basis
    return MultiPoly(system, basis, poly_ring(system, basis).ground_new(qq(value)))


def zeta_form(system: RootSystemDescriptor, zeta_coords: Sequence[ExactScalar], basis: str,
              equivariant=None) -> PolyElement:
    """Forme linéaire de coordonnées ζ données, écrite dans ``basis`` (plus c·ε₀ éventuel)."""
    ring = poly_ring(system, basis)
    coords = system.basis(basis).from_zeta(zeta_coords)
    terms = {}
    for i, c in enumerate(coords):
        if c:
            monom = [0] * (system.rank + 1)
            monom[i] = 1
            terms[tuple(monom)] = c
    if equivariant:
        monom = [0] * system.rank + [1]
        terms[tuple(monom)] = qq(equivariant)
    return ring.from_dict(terms)


def linear_form(weight: Weight, basis: Optional[str] = None) -> MultiPoly:
    """Polynôme linéaire associé à un poids, dans la base demandée."""
    system = weight.system
    basis = basis or weight.basis
    return MultiPoly(system, basis, zeta_form(system, weight.zeta_coords(), basis))


def variable(system: RootSystemDescriptor, name: str, basis: Optional[str] = None) -> MultiPoly:
    """
    Polynôme associé à un identifiant (``z2``, ``e3``, ``t7``, ``e0``, ``t0``).

    Args:
        system: Système de racines
        name: Identifiant de variable
        basis: Base d'arrivée (par défaut : base préférée du système)

    Returns:
        Polynôme linéaire
    """
    basis = basis or system.preferred_basis
    if name in ("e0", "t0"):
        return equivariant_variable(system, basis)
    return linear_form(basis_weight(system, name), basis)


def equivariant_variable(system: RootSystemDescriptor, basis: Optional[str] = None) -> MultiPoly:
    basis = basis or system.preferred_basis
    ring = poly_ring(system, basis)
    return MultiPoly(system, basis, ring.gens[-1])


def variables(system: RootSystemDescriptor, names: Iterable[str], basis: Optional[str] = None) -> List[MultiPoly]:
    return [variable(system, name, basis) for name in names]


def _as_linear(item, basis: Optional[str]) -> MultiPoly:
    if isinstance(item, Weight):
        return linear_form(item, basis or item.system.preferred_basis)
    if basis is not None and item.basis != basis:
        return item.to_basis(basis)
    return item


def elementary_symmetric(vars: Sequence[Union[Weight, MultiPoly]], k: int, basis: Optional[str] = None) -> MultiPoly:
    """
    Polynôme symétrique élémentaire c_k des formes linéaires données.

    Args:
        vars: Poids ou polynômes linéaires (au moins un élément)
        k: Degré (c_0 = 1)
        basis: Base d'arrivée

    Returns:
        c_k(vars)
    """
    forms = [_as_linear(v, basis) for v in vars]
    if not forms:
        raise PolynomialSyntaxError("Liste de variables vide")
    one = constant(forms[0].system, 1, forms[0].basis)
    table = [one] + [one * 0 for _ in range(k)]
    for form in forms:
        for j in range(k, 0, -1):
            table[j] = table[j] + table[j - 1] * form
    return table[k]


def complete_symmetric(vars: Sequence[Union[Weight, MultiPoly]], k: int, basis: Optional[str] = None) -> MultiPoly:
    """Polynôme symétrique complet δ_k (somme de tous les monômes de degré k)."""
    forms = [_as_linear(v, basis) for v in vars]
    if not forms:
        raise PolynomialSyntaxError("Liste de variables vide")
    one = constant(forms[0].system, 1, forms[0].basis)
    table = [one] + [one * 0 for _ in range(k)]
    for form in forms:
        for j in range(1, k + 1):
            table[j] = table[j] + table[j - 1] * form
    return table[k]


def word_letters(word) -> Tuple[int, ...]:
    return tuple(getattr(word, "letters", word))


def act_on_zeta(system: RootSystemDescriptor, letters: Sequence[int], coords: Sequence[ExactScalar]):
    """w·x en coordonnées ζ : la lettre la plus à droite s'applique en premier."""
    result = tuple(coords)
    for j in reversed(letters):
        result = reflect_zeta(system, j, result)
    return result


def weyl_act(word, f: MultiPoly) -> MultiPoly:
    """
    Action d'un mot de Weyl sur un polynôme (morphisme d'anneaux, fixe ε₀).

    Args:
        word: ``WeylWord`` ou suite de lettres, lue de gauche à droite
        f: Polynôme

    Returns:
        w·f, dans la base de f
    """
    letters = word_letters(word)
    if not letters:
        return f
    system = f.system
    for j in letters:
        check_index(system, j)
    data = system.basis(f.basis)
    images = [zeta_form(system, act_on_zeta(system, letters, data.rows[i]), f.basis) for i in range(system.rank)]
    images.append(f.ring.gens[-1])
    return MultiPoly(system, f.basis, compose(f.poly, images, f.ring))


def equivariant_shift(f: MultiPoly, z: Coweight) -> MultiPoly:
    """
    Substitution Φ_z* : chaque variable x devient x + x(z)·ε₀.

    Raises:
        EquivariantVariableError: si f contient déjà ε₀
    """
    if f.has_equivariant():
        raise EquivariantVariableError("Le polynôme contient déjà la variable équivariante")
    if z.system.key != f.system.key:
        raise MixedSystemsError(f"Systèmes différents : {f.system.label} et {z.system.label}")
    system = f.system
    data = system.basis(f.basis)
    images = [zeta_form(system, data.rows[i], f.basis, equivariant=dot(data.rows[i], z.coords))
              for i in range(system.rank)]
    images.append(f.ring.gens[-1])
    return MultiPoly(system, f.basis, compose(f.poly, images, f.ring))


def parse_monomial(system: RootSystemDescriptor, text: str, basis: str) -> Monomial:
    """Vecteur d'exposants d'un monôme textuel (``t1*t3^2*t0``) dans ``basis``."""
    poly = parse_polynomial(text, system, basis)
    terms = poly.terms()
    if len(terms) != 1 or terms[0][1] != 1:
        raise PolynomialSyntaxError(f"'{text}' n'est pas un monôme de la base {basis}")
    return terms[0][0]


def coefficient_of(f: MultiPoly, monomial: Union[Sequence[int], str]) -> ExactScalar:
    """
    Coefficient exact d'un monôme (zéro s'il est absent).

    Args:
        f: Polynôme
        monomial: Vecteur d'exposants de longueur rang + 1, ou monôme textuel

    Returns:
        Coefficient rationnel
    """
    if isinstance(monomial, str):
        monomial = parse_monomial(f.system, monomial, f.basis)
    monomial = tuple(int(e) for e in monomial)
    if len(monomial) != f.system.rank + 1:
        raise PolynomialSyntaxError(f"Vecteur d'exposants de longueur {len(monomial)}, attendu {f.system.rank + 1}")
    return f.poly.get(monomial, QQ.zero)


def parse_polynomial(text: str, system: RootSystemDescriptor, basis: Optional[str] = None) -> MultiPoly:
    """
    Analyse un polynôme écrit dans la grammaire textuelle.

    Args:
        text: Texte du polynôme (lignes commençant par ``#`` ignorées)
        system: Système actif
        basis: Base d'arrivée (par défaut : base préférée)

    Returns:
        Polynôme exact

    Raises:
        PolynomialSyntaxError: caractère, variable ou construction invalide
    """
    basis = basis or system.preferred_basis
    body = " ".join(line for line in text.splitlines() if not line.strip().startswith("#")).strip()
    if not body:
        raise PolynomialSyntaxError("Polynôme vide")
    if not _ALLOWED_CHARACTERS.match(body):
        raise PolynomialSyntaxError("Caractère non autorisé dans le polynôme")
    if _IMPLICIT_PRODUCT.search(body):
        raise PolynomialSyntaxError("Produit implicite interdit : utiliser '*' entre coefficient et variable")

    names = sorted(set(_IDENTIFIER.findall(body)), key=lambda n: (n[0], int(n[1:]) if n[1:].isdigit() else 0))
    images = []
    for name in names:
        if not _VARIABLE.match(name):
            raise PolynomialSyntaxError(f"Identifiant invalide '{name}'")
        try:
            images.append(variable(system, name, basis).poly)
        except CatalogError:
            raise PolynomialSyntaxError(f"Variable '{name}' inconnue pour {system.label}")

    try:
        expr = parse_expr(body, local_dict={n: Symbol(n) for n in names},
                          transformations=_TRANSFORMATIONS, evaluate=True)
    except Exception as e:
        raise PolynomialSyntaxError(f"Texte de polynôme invalide : {e}")

    target = poly_ring(system, basis)
    if not names:
        try:
            return MultiPoly(system, basis, target.ground_new(QQ.from_sympy(expr)))
        except Exception:
            raise PolynomialSyntaxError(f"Constante invalide '{body}'")

    source = PolyRing(names, QQ, grlex)
    try:
        parsed = source.from_expr(expr)
    except Exception as e:
        raise PolynomialSyntaxError(f"Expression non polynomiale : {e}")
    return MultiPoly(system, basis, compose(parsed, images, target))


def monomials(nvars: int, degree: int) -> List[Monomial]:
    """Exposants de degré ``degree`` en ``nvars`` variables (sans ε₀), ordre déterministe."""
    result = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for index in combo:
            exps[index] += 1
        result.append(tuple(exps) + (0,))
    return result


def invariant_polynomials(system: RootSystemDescriptor, generators: Sequence[int], degree: int,
                          basis: str = "zeta") -> List[MultiPoly]:
    """
    Polynômes homogènes de degré donné fixés par les réflexions ``generators``.

    Noyau de l'empilement des (S_i − I) sur l'espace des monômes, en matrice creuse.

    Args:
        system: Système de racines
        generators: Indices des réflexions simples
        degree: Degré δ ≥ 0
        basis: Base de calcul

    Returns:
        Base rationnelle du sous-espace invariant
    """
    ring = poly_ring(system, basis)
    basis_monomials = monomials(system.rank, degree)
    column = {m: j for j, m in enumerate(basis_monomials)}
    entries: Dict[int, Dict[int, ExactScalar]] = {}
    row_of: Dict[Tuple[int, Monomial], int] = {}

    for g in generators:
        for j, monom in enumerate(basis_monomials):
            image = weyl_act((g,), MultiPoly(system, basis, ring.from_dict({monom: QQ.one}))).poly
            image = image - ring.from_dict({monom: QQ.one})
            for out, coeff in image.items():
                key = (g, out)
                if key not in row_of:
                    row_of[key] = len(row_of)
                entries.setdefault(row_of[key], {})[j] = coeff

    matrix = sparse_matrix(entries, (len(row_of), len(basis_monomials)))
    kernel = rational_kernel(matrix)
    logger.info(f"Invariants de degré {degree} pour {system.label} sous {list(generators)} : dimension {len(kernel)}")
    return [from_terms(system, basis, {basis_monomials[j]: c for j, c in enumerate(vec) if c}) for vec in kernel]


def invariant_quadratic(system: RootSystemDescriptor, basis: Optional[str] = None) -> MultiPoly:
    """
    Quadrique W-invariante non nulle, normalisée (premier coefficient non nul égal à 1).

    Args:
        system: Système de racines
        basis: Base d'écriture (par défaut : base préférée)

    Returns:
        Quadrique invariante
    """
    basis = basis or system.preferred_basis
    found = invariant_polynomials(system, range(1, system.rank + 1), 2, basis)
    if not found:
        raise CatalogError(f"Aucune quadrique invariante pour {system.label}")
    q = found[0]
    leading = q.terms()[0][1]
    return q * (QQ.one / leading)

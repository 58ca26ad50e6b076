"""
Classes de cohomologie entières, bases d'invariants sous les groupes de Weyl
résiduels et certificats de non-intégralité.

Un certificat associe à une orbite minimale G/P_r et à un copoids d·z une
classe entière f, un mot w (ou un sous-diagramme projectif) et la valeur
∫_{[bX_w]} κ(f) ; une valeur non entière prouve que κ n'est pas entier.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ, ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .bruhat import WeylWord
from .chevalley import CapMode, CapQuery, cap
from .errors import CatalogError, FixtureNotFoundError, InvalidClassError
from .exactalg import (
    ExactScalar,
    ExactVector,
    format_scalar,
    integer_saturation_basis,
    is_integer,
    rank,
    rational_kernel,
    scalar_from_dict,
    scalar_to_dict,
    sparse_matrix,
    to_matrix,
)
from .localization import localize, subdiagram_word
from .mpoly import (
    MultiPoly,
    complete_symmetric,
    compose,
    elementary_symmetric,
    from_terms,
    invariant_polynomials,
    linear_form,
    monomials,
    parse_polynomial,
    poly_ring,
    variables,
    weyl_act,
)
from .rootdata import (
    RootSystemDescriptor,
    catalog,
    check_index,
    coweight_class,
    in_coroot_lattice,
    residual_generators,
    zeta_weight,
)

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

# Polynômes de référence pour E7/P5 et E7/P6 : nom de fixture et mot associé
E7_FIXTURE_WITNESSES = {
    5: ("e7-p5", (4, 6, 5)),
    6: ("e7-p6", (4, 5, 6)),
}


@dataclass(frozen=True)
class ParabolicChoice:
    """Sous-groupe parabolique maximal P_r (J = Π ∖ {α_r})."""
    system: RootSystemDescriptor
    removed_root: int

    def __post_init__(self):
        check_index(self.system, self.removed_root)

    @property
    def residual_generators(self) -> List[int]:
        return residual_generators(self.system, self.removed_root)

    @property
    def label(self) -> str:
        return f"{self.system.label}/P{self.removed_root}"


# ---------------------------------------------------------------------------
# Présentations entières (types B et D)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegralPresentation:
    """
    Présentation de H*(G/T; Z) par les ε_i et les classes ϖ_j, modulo l'idéal I.

    Les relations vivent dans ``ZZ[e1..en, w1..w2n]`` ; ϖ_j est de poids j.
    """
    system: RootSystemDescriptor
    ring: PolyRing
    relations: Tuple[PolyElement, ...]

    @property
    def n(self) -> int:
        return self.system.rank

    def eps(self, i: int) -> PolyElement:
        return self.ring.gens[i - 1]

    def varpi(self, j: int) -> PolyElement:
        return self.ring.gens[self.n + j - 1]

    def weights(self) -> List[int]:
        return [1] * self.n + list(range(1, 2 * self.n + 1))

    def weighted_degrees(self, p: PolyElement) -> set:
        weights = self.weights()
        return {sum(w * e for w, e in zip(weights, monom)) for monom in p.keys()}

    def is_homogeneous(self) -> bool:
        return all(len(self.weighted_degrees(p)) <= 1 for p in self.relations)


def _integer_elementary(ring: PolyRing, gens: Sequence[PolyElement], k: int) -> PolyElement:
    table = [ring.one] + [ring.zero] * k
    for x in gens:
        for j in range(k, 0, -1):
            table[j] = table[j] + table[j - 1] * x
    return table[k]


def presentation(system: RootSystemDescriptor) -> IntegralPresentation:
    """
    Relations entières des types B_n et D_n.

    B_n : c_i(ε) − 2ϖ_i (i ≤ n), ϖ_j (n < j ≤ 2n), ϖ_{2k} + Σ_{j<2k} (−1)^j ϖ_j ϖ_{2k−j} (k ≤ n).
    D_n : c_i(ε) − 2ϖ_i (i < n), c_n(ε), ϖ_j (n ≤ j ≤ 2n − 2), relations quadratiques pour k < n.

    Raises:
        CatalogError: famille sans présentation
    """
    if system.family not in ("B", "D"):
        raise CatalogError(f"Pas de présentation entière enregistrée pour {system.label}")
    n = system.rank
    names = [f"e{i}" for i in range(1, n + 1)] + [f"w{j}" for j in range(1, 2 * n + 1)]
    ring = PolyRing(names, ZZ, grlex)
    eps = ring.gens[:n]
    w = lambda j: ring.gens[n + j - 1]

    relations = []
    if system.family == "B":
        relations += [_integer_elementary(ring, eps, i) - 2 * w(i) for i in range(1, n + 1)]
        relations += [w(j) for j in range(n + 1, 2 * n + 1)]
        top = n
    else:
        relations += [_integer_elementary(ring, eps, i) - 2 * w(i) for i in range(1, n)]
        relations.append(_integer_elementary(ring, eps, n))
        relations += [w(j) for j in range(n, 2 * n - 1)]
        top = n - 1
    for k in range(1, top + 1):
        relation = w(2 * k)
        for j in range(1, 2 * k):
            relation += (-1) ** j * w(j) * w(2 * k - j)
        relations.append(relation)
    return IntegralPresentation(system=system, ring=ring, relations=tuple(relations))


def _q_polynomials(P: IntegralPresentation, top: int) -> List[PolyElement]:
    """Q_0..Q_top entiers avec δ_j(ε) = 2·Q_j(ϖ) (récurrence de Newton)."""
    q = [P.ring.one]
    for j in range(1, top + 1):
        value = (-1) ** (j + 1) * P.varpi(j)
        for i in range(1, j):
            value += (-1) ** (i + 1) * 2 * P.varpi(i) * q[j - i]
        q.append(value)
    return q


@dataclass(frozen=True)
class MembershipProof:
    """
    f écrit comme polynôme à coefficients entiers en les ε_i et ϖ_j.

    ``expression`` vaut f après substitution ϖ_i ↦ ½c_i(ε) ; 2f = 2·expression
    est donc une combinaison entière de classes entières.
    """
    polynomial: MultiPoly
    presentation: IntegralPresentation
    route: str
    removed_root: int
    expression: PolyElement

    def replay(self) -> MultiPoly:
        """Substitue ϖ_i ↦ ½c_i(ε) (0 si i > n) et renvoie le polynôme en base ε."""
        system = self.presentation.system
        n = system.rank
        eps = variables(system, [f"e{i}" for i in range(1, n + 1)], "eps")
        images = [e.poly for e in eps]
        for j in range(1, 2 * n + 1):
            if j <= n:
                images.append((elementary_symmetric(eps, j, "eps") * QQ(1, 2)).poly)
            else:
                images.append(poly_ring(system, "eps").zero)
        return MultiPoly(system, "eps", compose(self.expression, images, poly_ring(system, "eps")))

    def verify(self) -> bool:
        return self.replay() == self.polynomial

    def to_text(self) -> str:
        return str(self.expression.as_expr()).replace("**", "^")


@dataclass(frozen=True)
class MembershipFailure:
    """Aucune expression trouvée par la voie des demi-δ (ce n'est pas une preuve de non-intégralité)."""
    polynomial: MultiPoly
    reason: str

    def __bool__(self) -> bool:
        return False


def _eta(system: RootSystemDescriptor) -> List[MultiPoly]:
    n = system.rank
    eps = variables(system, [f"e{i}" for i in range(1, n + 1)], "eps")
    return eps[:-1] + [-eps[-1]]


def _delta_route(P: IntegralPresentation, r: int, degree: int) -> PolyElement:
    """½δ_N(ε₁..ε_r) = Σ_{j=1}^{N} (−1)^{N−j} c_{N−j}(ε_{r+1}..ε_n) Q_j."""
    n = P.n
    q = _q_polynomials(P, degree)
    tail = [P.eps(i) for i in range(r + 1, n + 1)]
    expression = P.ring.zero
    for j in range(1, degree + 1):
        c = _integer_elementary(P.ring, tail, degree - j) if tail else (P.ring.one if degree == j else P.ring.zero)
        expression += (-1) ** (degree - j) * c * q[j]
    return expression


def _eta_route(P: IntegralPresentation, degree: int) -> PolyElement:
    """½δ_m(η) = Q_m + Σ_{k=1}^{m} (−1)^k ε_n^k · (1 si k = m, 2·Q_{m−k} sinon)."""
    q = _q_polynomials(P, degree)
    e_n = P.eps(P.n)
    expression = q[degree]
    for k in range(1, degree + 1):
        factor = P.ring.one if k == degree else 2 * q[degree - k]
        expression += (-1) ** k * e_n ** k * factor
    return expression


def verify_presentation_membership(f: MultiPoly, P: Optional[IntegralPresentation] = None
                                   ) -> Union[MembershipProof, MembershipFailure]:
    """
    Cherche une écriture entière de f en les ε_i et ϖ_j (voie des demi-δ).

    Args:
        f: Polynôme homogène
        P: Présentation (par défaut celle du système de f)

    Returns:
        ``MembershipProof`` rejouable, ou ``MembershipFailure`` si la voie échoue
    """
    P = P or presentation(f.system)
    system = f.system
    n = system.rank
    target = f.to_basis("eps")
    if not target.is_homogeneous() or target.is_zero:
        return MembershipFailure(target, "polynôme nul ou non homogène")
    degree = target.degree()
    eps = variables(system, [f"e{i}" for i in range(1, n + 1)], "eps")

    r = n - degree + 1
    if 1 <= r <= n and target == complete_symmetric(eps[:r], degree, "eps") * QQ(1, 2):
        proof = MembershipProof(target, P, "delta", r, _delta_route(P, r, degree))
    elif system.family == "D" and target == complete_symmetric(_eta(system), degree, "eps") * QQ(1, 2):
        proof = MembershipProof(target, P, "eta", n - 1, _eta_route(P, degree))
    else:
        logger.info(f"Aucune écriture par demi-δ pour un polynôme de degré {degree} sur {system.label}")
        return MembershipFailure(target, f"f n'est pas de la forme ½δ_{degree}(ε₁..ε_r) ni ½δ_{degree}(η)")

    if not proof.verify():
        return MembershipFailure(target, "la substitution ϖ ↦ ½c(ε) ne redonne pas f")
    logger.info(f"Preuve d'appartenance ({proof.route}) sur {system.label}, degré {degree}")
    return proof


# ---------------------------------------------------------------------------
# Classes entières étiquetées
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegralClass:
    """Polynôme accompagné de la justification de son intégralité."""
    polynomial: MultiPoly
    justification: str
    proof: Optional[MembershipProof] = None


def half_delta_class(system: RootSystemDescriptor, r: int) -> IntegralClass:
    """
    ½δ_{n−r+1}(ε₁..ε_r) pour B_n et D_n (r ≠ n−1), ½δ₃(η) pour D_n et r = n−1.

    Args:
        system: Système de type B ou D
        r: Racine retirée

    Returns:
        Classe étiquetée par sa preuve d'appartenance à la présentation

    Raises:
        InvalidClassError: famille hors B/D ou preuve introuvable
    """
    check_index(system, r)
    if system.family not in ("B", "D"):
        raise InvalidClassError(f"La classe ½δ n'est définie qu'en types B et D, pas {system.label}")
    n = system.rank
    eps = variables(system, [f"e{i}" for i in range(1, n + 1)], "eps")
    if system.family == "D" and r == n - 1:
        f = complete_symmetric(_eta(system), 3, "eps") * QQ(1, 2)
    else:
        f = complete_symmetric(eps[:r], n - r + 1, "eps") * QQ(1, 2)

    proof = verify_presentation_membership(f, presentation(system))
    if not proof:
        raise InvalidClassError(f"Classe ½δ sans preuve d'appartenance sur {system.label} (r = {r}) : {proof.reason}")
    return IntegralClass(f, f"demi-δ, présentation entière ({proof.route})", proof)


# ---------------------------------------------------------------------------
# Bases d'invariants
# ---------------------------------------------------------------------------

def _vector(poly: MultiPoly, column: Dict[Tuple[int, ...], int]) -> Dict[int, ExactScalar]:
    return {column[m]: c for m, c in poly.poly.items()}


def _to_polys(system: RootSystemDescriptor, basis_monomials, vectors: Sequence[Sequence]) -> List[MultiPoly]:
    return [from_terms(system, "zeta", {basis_monomials[j]: c for j, c in enumerate(vec) if c}) for vec in vectors]


def invariant_basis(system: RootSystemDescriptor, P: ParabolicChoice, degree: int) -> List[MultiPoly]:
    """
    Base entière des polynômes de degré δ fixés par W_r (en base ζ).

    Args:
        system: Système de racines
        P: Parabolique maximal
        degree: Degré δ ≥ 1

    Returns:
        Base saturée sur Z, ordre de Hermite
    """
    if degree < 1:
        raise ValueError(f"Degré invalide {degree} (attendu ≥ 1)")
    found = invariant_polynomials(system, P.residual_generators, degree, "zeta")
    basis_monomials = monomials(system.rank, degree)
    column = {m: j for j, m in enumerate(basis_monomials)}
    vectors = []
    for poly in found:
        entries = _vector(poly, column)
        vectors.append([entries.get(j, QQ.zero) for j in range(len(basis_monomials))])
    saturated = integer_saturation_basis(vectors)
    logger.info(f"Base d'invariants {P.label} en degré {degree} : dimension {len(saturated)}")
    return _to_polys(system, basis_monomials, saturated)


@dataclass
class IdealSlice:
    """Tranche de degré δ de I⁺, sous forme échelonnée réduite (lignes creuses)."""
    system: RootSystemDescriptor
    degree: int
    monomials: List[Tuple[int, ...]]
    column: Dict[Tuple[int, ...], int]
    rows: List[Dict[int, ExactScalar]] = field(default_factory=list)
    pivots: List[int] = field(default_factory=list)

    def reduce(self, vector: Dict[int, ExactScalar]) -> Dict[int, ExactScalar]:
        """Forme normale modulo la tranche."""
        result = dict(vector)
        for row, pivot in zip(self.rows, self.pivots):
            factor = result.get(pivot)
            if not factor:
                continue
            for j, c in row.items():
                value = result.get(j, QQ.zero) - factor * c
                if value:
                    result[j] = value
                else:
                    result.pop(j, None)
        return result

    def vector_of(self, poly: MultiPoly) -> Dict[int, ExactScalar]:
        return _vector(poly.to_basis("zeta"), self.column)

    def contains(self, poly: MultiPoly) -> bool:
        return not self.reduce(self.vector_of(poly))


def iplus_slice(system: RootSystemDescriptor, degree: int) -> IdealSlice:
    """
    Tranche de degré δ de l'idéal I⁺ engendré par les W-invariants de degré > 0.

    Elle est engendrée par p·m, p W-invariant de degré e ∈ 2..δ et m monôme de degré δ − e ;
    les invariants sont recalculés par noyau à chaque degré.
    """
    basis_monomials = monomials(system.rank, degree)
    column = {m: j for j, m in enumerate(basis_monomials)}
    all_generators = list(range(1, system.rank + 1))
    ring = poly_ring(system, "zeta")

    spanning = []
    for e in range(1, degree + 1):
        for p in invariant_polynomials(system, all_generators, e, "zeta"):
            for m in monomials(system.rank, degree - e):
                spanning.append(_vector(p * MultiPoly(system, "zeta", ring.from_dict({m: QQ.one})), column))

    slice_ = IdealSlice(system, degree, basis_monomials, column)
    if not spanning:
        return slice_
    matrix = sparse_matrix(dict(enumerate(spanning)), (len(spanning), len(basis_monomials)))
    reduced, pivots = matrix.convert_to(QQ).rref()
    dense = reduced.to_dense().to_list()
    for i, pivot in enumerate(pivots):
        slice_.rows.append({j: c for j, c in enumerate(dense[i]) if c})
        slice_.pivots.append(pivot)
    logger.info(f"Tranche de I⁺ en degré {degree} pour {system.label} : dimension {len(pivots)}")
    return slice_


def invariant_basis_mod_Iplus(system: RootSystemDescriptor, P: ParabolicChoice, degree: int) -> List[MultiPoly]:
    """
    Base des classes de degré δ invariantes par W_r modulo I⁺.

    Le sous-espace cherché est le noyau commun des (s_g − id) composés avec la
    projection sur le quotient par I⁺ ; on renvoie des représentants réduits
    modulo I⁺, saturés sur Z.

    Args:
        system: Système de racines
        P: Parabolique maximal
        degree: Degré δ ≥ 1

    Returns:
        Représentants (base ζ), un par classe de la base
    """
    if degree < 1:
        raise ValueError(f"Degré invalide {degree} (attendu ≥ 1)")
    ideal = iplus_slice(system, degree)
    ring = poly_ring(system, "zeta")
    size = len(ideal.monomials)

    entries: Dict[int, Dict[int, ExactScalar]] = {}
    offset = 0
    for g in P.residual_generators:
        for j, monom in enumerate(ideal.monomials):
            m = MultiPoly(system, "zeta", ring.from_dict({monom: QQ.one}))
            image = ideal.reduce(ideal.vector_of(weyl_act((g,), m) - m))
            for i, c in image.items():
                entries.setdefault(offset + i, {})[j] = c
        offset += size

    kernel = rational_kernel(sparse_matrix(entries, (offset, size)))
    remainders = []
    for vec in kernel:
        reduced = ideal.reduce({j: c for j, c in enumerate(vec) if c})
        if reduced:
            remainders.append([reduced.get(j, QQ.zero) for j in range(size)])
    if not remainders:
        logger.info(f"Aucune classe invariante modulo I⁺ pour {P.label} en degré {degree}")
        return []

    reduced_matrix, pivots = to_matrix(remainders, size).rref()
    independent = [row for row in reduced_matrix.to_dense().to_list()[:len(pivots)]]
    saturated = integer_saturation_basis(independent)
    logger.info(f"Base d'invariants modulo I⁺ {P.label} en degré {degree} : dimension {len(saturated)}")
    return _to_polys(system, ideal.monomials, saturated)


def span_contains(basis: Sequence[MultiPoly], f: MultiPoly, modulo: Optional[IdealSlice] = None) -> bool:
    """
    Indique si f appartient à l'espace engendré par ``basis`` (éventuellement modulo une tranche de I⁺).
    """
    system = f.system
    degree = f.degree()
    column = modulo.column if modulo else {m: j for j, m in enumerate(monomials(system.rank, degree))}
    reduce = modulo.reduce if modulo else (lambda v: v)

    def dense(poly: MultiPoly) -> ExactVector:
        vec = reduce(_vector(poly.to_basis("zeta"), column))
        return [vec.get(j, QQ.zero) for j in range(len(column))]

    rows = [dense(b) for b in basis]
    target = dense(f)
    if not any(target):
        return True
    if not rows:
        return False
    return rank(to_matrix(rows + [target], len(column))) == rank(to_matrix(rows, len(column)))


def is_invariant_mod_iplus(f: MultiPoly, P: ParabolicChoice) -> Dict[int, bool]:
    """
    Pour chaque générateur résiduel s, indique si s·f − f appartient à I⁺.

    Returns:
        Dictionnaire générateur → booléen
    """
    if not f.is_homogeneous() or f.is_zero:
        raise InvalidClassError("Le test d'invariance modulo I⁺ exige un polynôme homogène non nul")
    ideal = iplus_slice(f.system, f.degree())
    result = {}
    for g in P.residual_generators:
        result[g] = ideal.contains(weyl_act((g,), f) - f)
    return result


# ---------------------------------------------------------------------------
# Témoins et certificats
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """Classe entière et mot (ou sous-diagramme) dont l'intégrale sert de témoin."""
    integral_class: IntegralClass
    word: WeylWord
    subdiagram: Optional[str] = None

    @property
    def polynomial(self) -> MultiPoly:
        return self.integral_class.polynomial

    def evaluate(self, generator: str, d) -> ExactScalar:
        system = self.word.system
        z = coweight_class(system, generator, d)
        if self.subdiagram is not None and self.word.letters:
            return localize(system, self.word, self.polynomial, z)
        return cap(CapQuery(system, self.polynomial, self.word, z, CapMode.FIBERED))


@dataclass(frozen=True)
class NonIntegralityCertificate:
    """Témoin dont l'intégrale a un dénominateur > 1."""
    system: RootSystemDescriptor
    orbit_r: int
    generator: str
    d: int
    witness: Witness
    value: ExactScalar

    integral = False

    def replay(self) -> ExactScalar:
        return self.witness.evaluate(self.generator, self.d)

    def to_dict(self) -> Dict[str, object]:
        data = {
            "family": self.system.family,
            "rank": self.system.rank,
            "orbit_r": self.orbit_r,
            "coweight": {"generator": self.generator, "d": self.d},
        }
        if self.witness.subdiagram is not None:
            data["subdiagram"] = self.witness.subdiagram
        else:
            data["word"] = list(self.witness.word.letters)
        data["polynomial"] = self.witness.polynomial.to_text()
        data["justification"] = self.witness.integral_class.justification
        data["value"] = scalar_to_dict(self.value)
        data["integral"] = False
        return data


@dataclass(frozen=True)
class IntegralVerdict:
    """d·z appartient au réseau des coracines : κ est entier, tous les témoins le confirment."""
    system: RootSystemDescriptor
    orbit_r: int
    generator: str
    d: int
    values: Tuple[ExactScalar, ...]

    integral = True

    def to_dict(self) -> Dict[str, object]:
        return {
            "family": self.system.family,
            "rank": self.system.rank,
            "orbit_r": self.orbit_r,
            "coweight": {"generator": self.generator, "d": self.d},
            "witness_values": [format_scalar(v) for v in self.values],
            "integral": True,
        }


@dataclass(frozen=True)
class NoWitnessFound:
    """Classe non triviale, mais aucun témoin connu ne donne de valeur non entière."""
    system: RootSystemDescriptor
    orbit_r: int
    generator: str
    d: int
    values: Tuple[ExactScalar, ...]

    integral = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "family": self.system.family,
            "rank": self.system.rank,
            "orbit_r": self.orbit_r,
            "coweight": {"generator": self.generator, "d": self.d},
            "witness_values": [format_scalar(v) for v in self.values],
            "integral": None,
        }


CertificationResult = Union[NonIntegralityCertificate, IntegralVerdict, NoWitnessFound]


def _symmetric_class(system: RootSystemDescriptor, names: Sequence[str], k: int) -> IntegralClass:
    basis = system.preferred_basis
    f = elementary_symmetric(variables(system, names, basis), k, basis)
    return IntegralClass(f, f"c_{k}({', '.join(names)}), symétrique sous W_r en poids entiers")


def _fundamental_class(system: RootSystemDescriptor, r: int) -> IntegralClass:
    return IntegralClass(linear_form(zeta_weight(system, r), system.preferred_basis),
                         f"poids fondamental ζ_{r}, invariant par W_r")


def _word(system: RootSystemDescriptor, letters: Sequence[int]) -> WeylWord:
    return WeylWord(system, tuple(letters))


def _subdiagram_witness(system: RootSystemDescriptor, r: int, integral_class: IntegralClass, selector: str) -> Witness:
    word = subdiagram_word(system, r, selector)
    return Witness(integral_class, word, selector if word.letters else None)


def _fixture_class(system: RootSystemDescriptor, name: str, fixtures: Optional[Mapping[str, str]]) -> IntegralClass:
    if not fixtures or name not in fixtures:
        raise FixtureNotFoundError(f"Fixture '{name}' absente : nécessaire pour {system.label}")
    f = parse_polynomial(fixtures[name], system)
    return IntegralClass(f, f"polynôme de référence '{name}' (invariance modulo I⁺ vérifiée séparément)")


def family_witnesses(system: RootSystemDescriptor, r: int, generator: str = "z0",
                     fixtures: Optional[Mapping[str, str]] = None) -> List[Witness]:
    """
    Témoins candidats, dans l'ordre de l'analyse de cas de la famille.

    Args:
        system: Système de racines
        r: Racine retirée
        generator: Générateur du copoids
        fixtures: Textes des polynômes de référence (nécessaires pour E7, r ∈ {5, 6})

    Returns:
        Liste de témoins
    """
    check_index(system, r)
    n = system.rank
    empty = _word(system, ())
    family = system.family

    if family in ("A", "C"):
        names = [f"e{i}" for i in range(1, r + 1)]
        witnesses = [Witness(_symmetric_class(system, names, 1), empty)]
        if r >= 2:
            witnesses.append(Witness(_symmetric_class(system, names, 2), _word(system, (r,))))
        return witnesses

    if family == "B":
        return [_subdiagram_witness(system, r, half_delta_class(system, r), "Gamma")]

    if family == "D":
        if r == n - 1:
            if generator == "z0":
                return [Witness(_fundamental_class(system, n - 1), empty)]
            return [
                Witness(_fundamental_class(system, n - 1), empty),
                _subdiagram_witness(system, r, half_delta_class(system, r), "GammaDoublePrime"),
            ]
        f = half_delta_class(system, r)
        if r == n:
            witnesses = [Witness(f, empty)]
            if generator != "z0":
                witnesses += _d_extra_witnesses(system)
            return witnesses
        if generator == "z0":
            return [_subdiagram_witness(system, r, f, "GammaPrime")]
        return [
            _subdiagram_witness(system, r, f, "Gamma"),
            _subdiagram_witness(system, r, f, "GammaPrime"),
        ]

    if family == "E6":
        if r in (1, 2, 4, 5):
            return [Witness(_fundamental_class(system, r), empty)]
        if r == 3:
            return [Witness(_symmetric_class(system, ["t1", "t2", "t3"], 2), _word(system, (3,)))]
        return [Witness(_symmetric_class(system, [f"t{i}" for i in range(1, 7)], 3), _word(system, (3, 6)))]

    if r in (1, 3, 7):
        return [Witness(_fundamental_class(system, r), empty)]
    if r == 2:
        return [Witness(_symmetric_class(system, ["t1", "t2"], 2), _word(system, (2,)))]
    if r == 4:
        return [Witness(_symmetric_class(system, ["t1", "t2", "t3", "t4"], 2), _word(system, (4,)))]
    name, letters = E7_FIXTURE_WITNESSES[r]
    return [Witness(_fixture_class(system, name, fixtures), _word(system, letters))]


def _d_extra_witnesses(system: RootSystemDescriptor) -> List[Witness]:
    """
    Témoins supplémentaires pour D_n, r = n : ½c_k(ε) = ϖ_k sur les mots des chemins
    issus de α_n (α_n, α_{n−2}, α_{n−3}, …).
    """
    n = system.rank
    path = (n,) + tuple(range(n - 2, 0, -1))
    eps = variables(system, [f"e{i}" for i in range(1, n + 1)], "eps")
    witnesses = []
    for k in range(2, n):
        f = elementary_symmetric(eps, k, "eps") * QQ(1, 2)
        word = _word(system, tuple(reversed(path[:k - 1])))
        witnesses.append(Witness(IntegralClass(f, f"½c_{k}(ε) = ϖ_{k}, symétrique sous W_{n}"), word))
    return witnesses


def certify(system: RootSystemDescriptor, r: int, generator: str = "z0", d: int = 1,
            fixtures: Optional[Mapping[str, str]] = None) -> CertificationResult:
    """
    Rejoue l'analyse de cas de la famille pour l'orbite G/P_r et le copoids d·z.

    Args:
        system: Système de racines
        r: Racine retirée
        generator: Générateur du copoids (z0, ou z1 en type D)
        d: Multiplicateur entier
        fixtures: Textes des polynômes de référence (E7)

    Returns:
        Certificat de non-intégralité, verdict « entier », ou ``NoWitnessFound``

    Raises:
        InvalidClassError: un témoin non entier alors que d·z est dans le réseau des coracines
    """
    d = int(d)
    z = coweight_class(system, generator, d)
    witnesses = family_witnesses(system, r, generator, fixtures)

    if in_coroot_lattice(z):
        values = tuple(w.evaluate(generator, d) for w in witnesses)
        if not all(is_integer(v) for v in values):
            raise InvalidClassError(
                f"Témoin non entier pour {system.label}, r = {r}, {d}·{generator} dans le réseau des coracines"
            )
        logger.info(f"{system.label}, r = {r}, {d}·{generator} : entier ({len(values)} témoins vérifiés)")
        return IntegralVerdict(system, r, generator, d, values)

    values = []
    for witness in witnesses:
        value = witness.evaluate(generator, d)
        values.append(value)
        if not is_integer(value):
            logger.info(
                f"Certificat {system.label}, r = {r}, {d}·{generator} : mot {witness.word.to_text()}, "
                f"valeur {format_scalar(value)}"
            )
            return NonIntegralityCertificate(system, r, generator, d, witness, value)

    logger.warning(f"Aucun témoin non entier pour {system.label}, r = {r}, {d}·{generator}")
    return NoWitnessFound(system, r, generator, d, tuple(values))


def certificate_from_dict(data: Mapping[str, object]) -> NonIntegralityCertificate:
    """
    Reconstruit un certificat depuis sa forme JSON (la valeur est recalculée puis comparée).

    Raises:
        InvalidClassError: valeur enregistrée différente de la valeur recalculée
    """
    system = catalog(str(data["family"]), int(data["rank"]))
    r = int(data["orbit_r"])
    generator = str(data["coweight"]["generator"])
    d = int(data["coweight"]["d"])
    polynomial = parse_polynomial(str(data["polynomial"]), system)
    if data.get("subdiagram"):
        selector = str(data["subdiagram"])
        word = subdiagram_word(system, r, selector)
    else:
        selector = None
        word = _word(system, data.get("word", ()))
    witness = Witness(IntegralClass(polynomial, str(data.get("justification", ""))), word, selector)
    stored = scalar_from_dict(data["value"])
    value = witness.evaluate(generator, d)
    if value != stored:
        raise InvalidClassError(f"Valeur rejouée {format_scalar(value)} différente de {format_scalar(stored)}")
    return NonIntegralityCertificate(system, r, generator, d, witness, value)

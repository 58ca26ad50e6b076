"""
Catalogue des systèmes de racines : racines simples, matrice de Cartan,
bases de coordonnées (ζ, ε, t), générateurs de copoids et torsion du centre.

La base canonique est celle des poids fondamentaux ζ_i, duale des coracines
simples h_{α_j} : ζ_i(h_{α_j}) = δ_ij. Les bases ε et t sont enregistrées
comme changements de variables linéaires vers ζ.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from .errors import CatalogError, MixedSystemsError
from .exactalg import ExactScalar, dot, format_scalar, matrix_rows, qq, to_matrix

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

Vector = Tuple[ExactScalar, ...]

FAMILY_ALIASES = {
    "A": "A", "PU": "A",
    "B": "B", "SO-ODD": "B",
    "C": "C", "SP": "C",
    "D": "D", "SO-EVEN": "D",
    "E6": "E6", "E7": "E7",
}

MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True)
class BasisData:
    """Une base de coordonnées : expression de chaque variable libre dans la base ζ."""
    name: str
    prefix: str
    equivariant: str
    rows: Tuple[Vector, ...]
    inverse: Tuple[Vector, ...]
    aliases: Dict[str, Vector] = field(default_factory=dict)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(f"{self.prefix}{i + 1}" for i in range(len(self.rows)))

    def to_zeta(self, coords: Sequence[ExactScalar]) -> Vector:
        """Coordonnées ζ d'un poids donné dans cette base."""
        rank = len(self.rows)
        return tuple(sum((coords[i] * self.rows[i][k] for i in range(rank)), QQ.zero) for k in range(rank))

    def from_zeta(self, coords: Sequence[ExactScalar]) -> Vector:
        """Coordonnées dans cette base d'un poids donné dans la base ζ."""
        rank = len(self.rows)
        return tuple(sum((coords[i] * self.inverse[i][k] for i in range(rank)), QQ.zero) for k in range(rank))


@dataclass(frozen=True, eq=False)
class RootSystemDescriptor:
    """Instance d'une famille de groupes simples avec toutes ses conventions."""
    family: str
    rank: int
    group_name: str
    cartan: Tuple[Tuple[int, ...], ...]
    bases: Dict[str, BasisData]
    preferred_basis: str
    coweight_generators: Dict[str, Tuple[ExactScalar, ...]]
    generator_orders: Dict[str, int]
    torsion: Tuple[int, ...]

    @property
    def key(self) -> Tuple[str, int]:
        return (self.family, self.rank)

    @property
    def label(self) -> str:
        return self.family if self.family.startswith("E") else f"{self.family}{self.rank}"

    def basis(self, name: str) -> BasisData:
        try:
            return self.bases[name]
        except KeyError:
            raise CatalogError(f"Base inconnue '{name}' pour {self.label}")

    def simple_root(self, i: int) -> Vector:
        """Racine simple α_i en coordonnées ζ (ligne i de la matrice de Cartan)."""
        check_index(self, i)
        return tuple(QQ(a) for a in self.cartan[i - 1])

    def __repr__(self) -> str:
        return f"RootSystemDescriptor({self.label})"


@dataclass(frozen=True)
class Weight:
    """Élément de t* exprimé dans une base enregistrée."""
    system: RootSystemDescriptor
    basis: str
    coords: Vector

    def zeta_coords(self) -> Vector:
        return self.system.basis(self.basis).to_zeta(self.coords)


@dataclass(frozen=True)
class Coweight:
    """Élément de t exprimé dans la base des coracines simples h_{α_i}."""
    system: RootSystemDescriptor
    coords: Vector

    def scaled(self, factor) -> "Coweight":
        factor = qq(factor)
        return Coweight(self.system, tuple(factor * c for c in self.coords))

    def __add__(self, other: "Coweight") -> "Coweight":
        _check_same_system(self.system, other.system)
        return Coweight(self.system, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def to_text(self) -> str:
        parts = [f"{format_scalar(c)}*h{i + 1}" for i, c in enumerate(self.coords) if c]
        return " + ".join(parts) if parts else "0"


def _check_same_system(a: RootSystemDescriptor, b: RootSystemDescriptor) -> None:
    if a.key != b.key:
        raise MixedSystemsError(f"Systèmes différents : {a.label} et {b.label}")


def check_index(system: RootSystemDescriptor, i: int) -> None:
    if not 1 <= i <= system.rank:
        raise CatalogError(f"Indice de réflexion {i} hors de 1..{system.rank} pour {system.label}")


def _unit(rank: int, i: int, coeff=1) -> List[ExactScalar]:
    vec = [QQ.zero] * rank
    if 1 <= i <= rank:
        vec[i - 1] = qq(coeff)
    return vec


def _combo(rank: int, terms: Dict[int, object]) -> Vector:
    """Combinaison linéaire des ζ_i, indices à partir de 1."""
    vec = [QQ.zero] * rank
    for i, coeff in terms.items():
        if 1 <= i <= rank:
            vec[i - 1] += qq(coeff)
    return tuple(vec)


def _add(*vectors: Sequence[ExactScalar]) -> Vector:
    return tuple(sum(parts, QQ.zero) for parts in zip(*vectors))


def _neg(vec: Sequence[ExactScalar]) -> Vector:
    return tuple(-x for x in vec)


def _invert(rows: Sequence[Vector]) -> Tuple[Vector, ...]:
    inverse = to_matrix([list(r) for r in rows]).inv()
    return tuple(tuple(row) for row in matrix_rows(inverse))


def _make_basis(name: str, prefix: str, equivariant: str, rows: Sequence[Vector],
                aliases: Optional[Dict[str, Vector]] = None) -> BasisData:
    rows = tuple(tuple(r) for r in rows)
    return BasisData(name=name, prefix=prefix, equivariant=equivariant, rows=rows,
                     inverse=_invert(rows), aliases=dict(aliases or {}))


def _cartan_from_roots(roots: Sequence[Vector]) -> Tuple[Tuple[int, ...], ...]:
    # α_i = Σ_j α_i(h_j) ζ_j : les coordonnées ζ de α_i sont la ligne i
    return tuple(tuple(int(c.numerator) for c in root) for root in roots)


def _eps_type_a(n: int) -> Tuple[List[Vector], Dict[str, Vector]]:
    rows = [_combo(n, {i: 1, i - 1: -1}) for i in range(1, n + 1)]
    aliases = {f"e{n + 1}": _combo(n, {n: -1})}
    return rows, aliases


def _eps_types_bcd(family: str, n: int) -> List[Vector]:
    if family == "C":
        return [_combo(n, {i: 1, i - 1: -1}) for i in range(1, n + 1)]
    if family == "B":
        rows = [_combo(n, {i: 1, i - 1: -1}) for i in range(1, n)]
        rows.append(_combo(n, {n: 2, n - 1: -1}))
        return rows
    rows = [_combo(n, {i: 1, i - 1: -1}) for i in range(1, n - 1)]
    rows.append(_combo(n, {n - 1: 1, n: 1, n - 2: -1}))
    rows.append(_combo(n, {n: 1, n - 1: -1}))
    return rows


def _build_classical(family: str, n: int) -> RootSystemDescriptor:
    zeta = _make_basis("zeta", "z", "e0", [tuple(_unit(n, i)) for i in range(1, n + 1)])

    if family == "A":
        rows, aliases = _eps_type_a(n)
        eps_of = lambda k: rows[k - 1] if k <= n else aliases[f"e{n + 1}"]
    else:
        rows, aliases = _eps_types_bcd(family, n), {}
        eps_of = lambda k: rows[k - 1]
    eps = _make_basis("eps", "e", "e0", rows, aliases)

    roots = [_add(eps_of(i), _neg(eps_of(i + 1))) for i in range(1, n)]
    if family == "A":
        roots.append(_add(eps_of(n), _neg(eps_of(n + 1))))
    elif family == "B":
        roots.append(eps_of(n))
    elif family == "C":
        roots.append(_add(eps_of(n), eps_of(n)))
    else:
        roots.append(_add(eps_of(n - 1), eps_of(n)))

    if family == "A":
        generators = {"z0": tuple(QQ(i, n + 1) for i in range(1, n + 1))}
        orders = {"z0": n + 1}
        torsion = (n + 1,)
        group_name = f"PU({n + 1})"
    elif family == "C":
        generators = {"z0": tuple(QQ(i, 2) for i in range(1, n + 1))}
        orders = {"z0": 2}
        torsion = (2,)
        group_name = f"PSp({n})"
    elif family == "B":
        generators = {"z0": _combo(n, {n: QQ(1, 2)})}
        orders = {"z0": 2}
        torsion = (2,)
        group_name = f"SO({2 * n + 1})"
    else:
        z1 = [QQ(i, 2) for i in range(1, n - 1)] + [QQ(n - 2, 4), QQ(n, 4)]
        generators = {"z0": _combo(n, {n - 1: QQ(-1, 2), n: QQ(1, 2)}), "z1": tuple(z1)}
        if n % 2 == 0:
            orders, torsion = {"z0": 2, "z1": 2}, (2, 2)
        else:
            orders, torsion = {"z0": 2, "z1": 4}, (4,)
        group_name = f"PSO({2 * n})"

    return RootSystemDescriptor(
        family=family, rank=n, group_name=group_name,
        cartan=_cartan_from_roots(roots),
        bases={"zeta": zeta, "eps": eps},
        preferred_basis="eps",
        coweight_generators=generators,
        generator_orders=orders,
        torsion=torsion,
    )


def _build_exceptional(family: str) -> RootSystemDescriptor:
    if family == "E6":
        rank = 6
        rows = [
            _combo(6, {1: 1}),
            _combo(6, {2: 1, 1: -1}),
            _combo(6, {3: 1, 2: -1}),
            _combo(6, {4: 1, 3: -1, 6: 1}),
            _combo(6, {5: 1, 4: -1, 6: 1}),
            _combo(6, {6: 1, 5: -1}),
        ]
        t = _combo(6, {6: 1})
        branch = (4, 5, 6)
        generators = {"z0": _combo(6, {1: QQ(1, 3), 2: QQ(-1, 3), 4: QQ(1, 3), 5: QQ(-1, 3)})}
        orders, torsion = {"z0": 3}, (3,)
        group_name = "E6/Z3"
    else:
        rank = 7
        rows = [
            _combo(7, {1: 1}),
            _combo(7, {2: 1, 1: -1}),
            _combo(7, {3: 1, 2: -1}),
            _combo(7, {4: 1, 3: -1}),
            _combo(7, {5: 1, 4: -1, 7: 1}),
            _combo(7, {6: 1, 5: -1, 7: 1}),
            _combo(7, {7: 1, 6: -1}),
        ]
        t = _combo(7, {7: 1})
        branch = (5, 6, 7)
        generators = {"z0": _combo(7, {1: QQ(1, 2), 3: QQ(1, 2), 7: QQ(1, 2)})}
        orders, torsion = {"z0": 2}, (2,)
        group_name = "E7/Z2"

    zeta = _make_basis("zeta", "z", "e0", [tuple(_unit(rank, i)) for i in range(1, rank + 1)])
    tbasis = _make_basis("t", "t", "t0", rows, {f"t{rank + 1}": t})

    # σ_i échange t_i et t_{i+1} ; la dernière racine relie t au bout de la chaîne
    roots = [_add(rows[i - 1], _neg(rows[i])) for i in range(1, rank)]
    roots.append(_add(*(rows[k - 1] for k in branch), _neg(t)))

    return RootSystemDescriptor(
        family=family, rank=rank, group_name=group_name,
        cartan=_cartan_from_roots(roots),
        bases={"zeta": zeta, "t": tbasis},
        preferred_basis="t",
        coweight_generators=generators,
        generator_orders=orders,
        torsion=torsion,
    )


def normalize_family(family: str) -> str:
    key = str(family).strip().upper()
    if key not in FAMILY_ALIASES:
        raise CatalogError(f"Famille inconnue '{family}' (attendu : A, B, C, D, E6, E7)")
    return FAMILY_ALIASES[key]


@lru_cache(maxsize=None)
def _catalog(family: str, rank: Optional[int]) -> RootSystemDescriptor:
    if family in ("E6", "E7"):
        expected = int(family[1])
        if rank is not None and rank != expected:
            raise CatalogError(f"Le rang de {family} est {expected}, pas {rank}")
        system = _build_exceptional(family)
    else:
        if rank is None:
            raise CatalogError(f"Le rang est obligatoire pour la famille {family}")
        if rank < MIN_RANK[family]:
            raise CatalogError(f"Rang {rank} invalide pour la famille {family} (minimum {MIN_RANK[family]})")
        system = _build_classical(family, rank)
    logger.info(f"Catalogue construit : {system.label} ({system.group_name}), torsion {system.torsion}")
    return system


def catalog(family: str, rank: Optional[int] = None) -> RootSystemDescriptor:
    """
    Renvoie le descripteur d'un système de racines du catalogue.

    Args:
        family: A (PU), B (SO impair), C (Sp), D (SO pair), E6 ou E7
        rank: Rang (facultatif pour E6 et E7)

    Returns:
        Descripteur immuable, partagé entre appels

    Raises:
        CatalogError: famille inconnue ou rang invalide
    """
    family = normalize_family(family)
    if rank is None and family in ("E6", "E7"):
        rank = int(family[1])
    return _catalog(family, None if rank is None else int(rank))


def zeta_weight(system: RootSystemDescriptor, i: int) -> Weight:
    check_index(system, i)
    return Weight(system, "zeta", tuple(_unit(system.rank, i)))


def basis_weight(system: RootSystemDescriptor, name: str) -> Weight:
    """
    Poids associé à un identifiant de variable (``z3``, ``e2``, ``t7``…).

    Les alias (ε_{n+1} pour A_n, t pour E6/E7) sont renvoyés en base ζ.
    """
    for basis in system.bases.values():
        if name in basis.names:
            index = basis.names.index(name)
            return Weight(system, basis.name, tuple(_unit(system.rank, index + 1)))
        if name in basis.aliases:
            return Weight(system, "zeta", basis.aliases[name])
    raise CatalogError(f"Variable inconnue '{name}' pour {system.label}")


def simple_root_weight(system: RootSystemDescriptor, i: int) -> Weight:
    return Weight(system, "zeta", system.simple_root(i))


def coroot(system: RootSystemDescriptor, i: int) -> Coweight:
    check_index(system, i)
    return Coweight(system, tuple(_unit(system.rank, i)))


def zero_coweight(system: RootSystemDescriptor) -> Coweight:
    return Coweight(system, tuple(QQ.zero for _ in range(system.rank)))


def coweight_generator(system: RootSystemDescriptor, name: str = "z0") -> Coweight:
    if name not in system.coweight_generators:
        raise CatalogError(f"Générateur de copoids inconnu '{name}' pour {system.label}")
    return Coweight(system, system.coweight_generators[name])


def coweight_class(system: RootSystemDescriptor, generator: str = "z0", d=1) -> Coweight:
    """Copoids d·z pour un générateur nommé."""
    return coweight_generator(system, generator).scaled(d)


def reflect_zeta(system: RootSystemDescriptor, j: int, coords: Sequence[ExactScalar]) -> Vector:
    """s_j(x) = x − x(h_j)·α_j en coordonnées ζ."""
    check_index(system, j)
    value = coords[j - 1]
    if not value:
        return tuple(coords)
    root = system.cartan[j - 1]
    return tuple(c - value * a for c, a in zip(coords, root))


def reflect(j: int, x: Weight) -> Weight:
    """
    Réflexion simple s_j appliquée à un poids.

    Args:
        j: Indice de la réflexion (1..rang)
        x: Poids dans une base quelconque

    Returns:
        Poids réfléchi, dans la même base que l'entrée
    """
    reflected = reflect_zeta(x.system, j, x.zeta_coords())
    return Weight(x.system, x.basis, x.system.basis(x.basis).from_zeta(reflected))


def reflect_coweight(j: int, h: Coweight) -> Coweight:
    """s_j(h) = h − α_j(h)·h_{α_j}."""
    system = h.system
    check_index(system, j)
    value = sum((a * c for a, c in zip(system.cartan[j - 1], h.coords)), QQ.zero)
    coords = list(h.coords)
    coords[j - 1] -= value
    return Coweight(system, tuple(coords))


def pair_with_coroot(x: Weight, h: Coweight) -> ExactScalar:
    """Accouplement ⟨x, h⟩, indépendant de la base de x."""
    _check_same_system(x.system, h.system)
    return dot(x.zeta_coords(), h.coords)


def root_pairing(system: RootSystemDescriptor, i: int, h: Coweight) -> ExactScalar:
    """α_i(h)."""
    return dot(system.simple_root(i), h.coords)


def in_coroot_lattice(h: Coweight) -> bool:
    return all(int(c.denominator) == 1 for c in h.coords)


def coweight_order(h: Coweight) -> int:
    """Plus petit m ≥ 1 tel que m·h appartienne au réseau des coracines."""
    return lcm(*[int(c.denominator) for c in h.coords])


def residual_generators(system: RootSystemDescriptor, r: int) -> List[int]:
    """Générateurs du groupe de Weyl résiduel W_r : toutes les réflexions sauf s_r."""
    check_index(system, r)
    return [i for i in range(1, system.rank + 1) if i != r]


def commute(system: RootSystemDescriptor, i: int, j: int) -> bool:
    return i != j and system.cartan[i - 1][j - 1] == 0


def adjacent(system: RootSystemDescriptor, i: int, j: int) -> bool:
    return i != j and system.cartan[i - 1][j - 1] != 0


def braid_order(system: RootSystemDescriptor, i: int, j: int) -> int:
    """Ordre m(i, j) de s_i s_j lu sur la matrice de Cartan."""
    if i == j:
        return 1
    product = system.cartan[i - 1][j - 1] * system.cartan[j - 1][i - 1]
    return {0: 2, 1: 3, 2: 4, 3: 6}[product]


def weight_table(system: RootSystemDescriptor, z: Coweight) -> Dict[str, ExactScalar]:
    """
    Évaluations des variables de toutes les bases enregistrées en z.

    Args:
        system: Système de racines
        z: Copoids

    Returns:
        Dictionnaire nom de variable → valeur exacte
    """
    table = {}
    for basis in system.bases.values():
        for index, name in enumerate(basis.names):
            table[name] = dot(basis.rows[index], z.coords)
        for name, vec in basis.aliases.items():
            table[name] = dot(vec, z.coords)
    return table


def describe(system: RootSystemDescriptor) -> Dict[str, object]:
    """Description JSON d'un descripteur (sous-commande ``rootinfo``)."""
    return {
        "family": system.family,
        "rank": system.rank,
        "group": system.group_name,
        "cartan": [list(row) for row in system.cartan],
        "bases": {
            name: {
                "variables": list(basis.names),
                "to_zeta": [[format_scalar(c) for c in row] for row in basis.rows],
                "aliases": {alias: [format_scalar(c) for c in vec] for alias, vec in basis.aliases.items()},
            }
            for name, basis in system.bases.items()
        },
        "coweight_generators": {
            name: [format_scalar(c) for c in coords] for name, coords in system.coweight_generators.items()
        },
        "generator_orders": dict(system.generator_orders),
        "torsion": list(system.torsion),
    }

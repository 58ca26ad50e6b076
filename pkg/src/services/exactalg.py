"""
Noyau d'arithmétique exacte.

Rationnels en précision arbitraire (domaine ``QQ`` de sympy), matrices
rationnelles et entières (``DomainMatrix``), noyaux sur Q, formes normales
de Hermite et de Smith sur Z. Aucune valeur flottante n'intervient.
"""
import logging
from dataclasses import dataclass
from math import lcm
from typing import Dict, List, Sequence, Union

from sympy import Rational
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from .errors import NotIndependentError

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

ExactScalar = QQ.dtype
ExactVector = List[ExactScalar]
ExactMatrix = DomainMatrix

ScalarLike = Union[int, str, Rational, ExactScalar]


def qq(value: ScalarLike) -> ExactScalar:
    """
    Convertit une valeur (entier, texte ``p/q``, rationnel sympy) en élément de QQ.

    Args:
        value: Valeur à convertir

    Returns:
        Rationnel exact en forme réduite
    """
    if isinstance(value, str):
        return QQ.from_sympy(Rational(value.strip()))
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    return QQ.convert(value)


def is_integer(value: ExactScalar) -> bool:
    """Indique si le rationnel est entier."""
    return int(value.denominator) == 1


def format_scalar(value: ExactScalar) -> str:
    """Écrit un rationnel sous la forme ``p`` ou ``p/q``."""
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def scalar_to_dict(value: ExactScalar) -> Dict[str, int]:
    """Représentation JSON ``{num, den}`` d'un rationnel."""
    return {"num": int(value.numerator), "den": int(value.denominator)}


def scalar_from_dict(data: Dict[str, int]) -> ExactScalar:
    return QQ(int(data["num"]), int(data["den"]))


def to_matrix(rows: Sequence[Sequence[ScalarLike]], ncols: int = None, domain=QQ) -> DomainMatrix:
    """
    Construit une matrice dense sur ``domain`` à partir d'une liste de lignes.

    Args:
        rows: Lignes de la matrice
        ncols: Nombre de colonnes (obligatoire si ``rows`` est vide)
        domain: Domaine des coefficients (QQ ou ZZ)

    Returns:
        Matrice ``DomainMatrix``
    """
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if domain == QQ:
        converted = [[qq(v) for v in row] for row in rows]
    else:
        converted = [[domain(int(v)) for v in row] for row in rows]
    return DomainMatrix(converted, (nrows, ncols), domain)


def sparse_matrix(entries: Dict[int, Dict[int, ExactScalar]], shape) -> DomainMatrix:
    """Matrice creuse sur QQ (dictionnaire de dictionnaires, sans zéros)."""
    cleaned = {i: {j: v for j, v in row.items() if v} for i, row in entries.items()}
    cleaned = {i: row for i, row in cleaned.items() if row}
    return DomainMatrix(cleaned, shape, QQ)


def matrix_rows(matrix: DomainMatrix) -> List[List]:
    """Lignes d'une matrice sous forme de listes."""
    return matrix.to_dense().to_list()


def rank(matrix: DomainMatrix) -> int:
    """Rang sur Q."""
    if matrix.shape[0] == 0 or matrix.shape[1] == 0:
        return 0
    _, pivots = matrix.convert_to(QQ).rref()
    return len(pivots)


def rational_kernel(matrix: DomainMatrix) -> List[ExactVector]:
    """
    Base du noyau {x : A·x = 0} sur les rationnels.

    La base est normalisée par la forme échelonnée réduite : chaque vecteur vaut 1
    sur sa colonne libre et 0 sur les autres colonnes libres.

    Args:
        matrix: Matrice A (dense ou creuse)

    Returns:
        Liste de vecteurs (vide si A est injective)
    """
    nrows, ncols = matrix.shape
    if nrows == 0:
        return [[QQ.one if i == j else QQ.zero for i in range(ncols)] for j in range(ncols)]

    reduced, pivots = matrix.convert_to(QQ).rref()
    pivot_set = set(pivots)
    rows = matrix_rows(reduced)

    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [QQ.zero] * ncols
        vector[free] = QQ.one
        for i, pivot in enumerate(pivots):
            vector[pivot] = -rows[i][free]
        basis.append(vector)

    logger.debug(f"Noyau rationnel : {ncols} colonnes, rang {len(pivots)}, dimension {len(basis)}")
    return basis


@dataclass(frozen=True)
class SmithDecomposition:
    """Décomposition U·A·V = D avec U, V unimodulaires et D diagonale (d₁ | d₂ | …)."""
    U: DomainMatrix
    D: DomainMatrix
    V: DomainMatrix

    @property
    def invariant_factors(self) -> List[int]:
        rows = matrix_rows(self.D)
        return [int(rows[i][i]) for i in range(min(self.D.shape))]


def _identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _add_row(m: List[List[int]], target: int, source: int, factor: int) -> None:
    row_t, row_s = m[target], m[source]
    for k in range(len(row_t)):
        row_t[k] += factor * row_s[k]


def _add_column(m: List[List[int]], target: int, source: int, factor: int) -> None:
    for row in m:
        row[target] += factor * row[source]


def _swap_rows(m: List[List[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_columns(m: List[List[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(matrix: Union[DomainMatrix, Sequence[Sequence[int]]]) -> SmithDecomposition:
    """
    Forme normale de Smith avec matrices de passage.

    Élimination par pivot de plus petite valeur absolue non nulle ; les
    opérations de lignes sont répercutées sur U, celles de colonnes sur V.

    Args:
        matrix: Matrice entière

    Returns:
        Décomposition ``SmithDecomposition`` telle que U·A·V = D
    """
    if isinstance(matrix, DomainMatrix):
        nrows, ncols = matrix.shape
        a = [[int(x) for x in row] for row in matrix_rows(matrix)]
    else:
        a = [[int(x) for x in row] for row in matrix]
        nrows = len(a)
        ncols = len(a[0]) if a else 0

    u = _identity(nrows)
    v = _identity(ncols)

    for t in range(min(nrows, ncols)):
        candidates = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not candidates:
            break
        _, i0, j0 = min(candidates)
        _swap_rows(a, t, i0)
        _swap_rows(u, t, i0)
        _swap_columns(a, t, j0)
        _swap_columns(v, t, j0)

        while True:
            pivot = a[t][t]
            for i in range(t + 1, nrows):
                q = a[i][t] // pivot
                if q:
                    _add_row(a, i, t, -q)
                    _add_row(u, i, t, -q)
            for j in range(t + 1, ncols):
                q = a[t][j] // pivot
                if q:
                    _add_column(a, j, t, -q)
                    _add_column(v, j, t, -q)

            leftovers = [(abs(a[i][t]), i, None) for i in range(t + 1, nrows) if a[i][t]]
            leftovers += [(abs(a[t][j]), None, j) for j in range(t + 1, ncols) if a[t][j]]
            if leftovers:
                # un reste plus petit que le pivot devient le nouveau pivot
                _, i1, j1 = min(leftovers, key=lambda item: item[0])
                if i1 is not None:
                    _swap_rows(a, t, i1)
                    _swap_rows(u, t, i1)
                else:
                    _swap_columns(a, t, j1)
                    _swap_columns(v, t, j1)
                continue

            offender = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                             if a[i][j] % pivot), None)
            if offender is None:
                break
            _add_row(a, t, offender[0], 1)
            _add_row(u, t, offender[0], 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SmithDecomposition(
        U=to_matrix(u, nrows, ZZ),
        D=to_matrix(a, ncols, ZZ),
        V=to_matrix(v, ncols, ZZ),
    )


def hermite_basis(vectors: Sequence[Sequence[int]]) -> List[List[int]]:
    """
    Base de Hermite (déterministe) du réseau engendré par des vecteurs entiers.

    Args:
        vectors: Générateurs du réseau

    Returns:
        Base du même réseau, vecteurs nuls retirés
    """
    if not vectors:
        return []
    dim = len(vectors[0])
    columns = [[int(vec[i]) for vec in vectors] for i in range(dim)]
    reduced = hermite_normal_form(to_matrix(columns, len(vectors), ZZ))
    rows = matrix_rows(reduced)
    return [[int(rows[i][j]) for i in range(dim)] for j in range(reduced.shape[1])]


def clear_denominators(vector: Sequence[ExactScalar]) -> List[int]:
    """Multiplie un vecteur rationnel par le ppcm de ses dénominateurs."""
    common = lcm(*[int(x.denominator) for x in vector]) if vector else 1
    return [int((x * common).numerator) for x in vector]


def integer_saturation_basis(vectors: Sequence[Sequence[ScalarLike]]) -> List[List[int]]:
    """
    Base sur Z de span_Q(L) ∩ Zⁿ.

    Les dénominateurs sont éliminés, puis la forme de Smith U·B·V = D donne le
    saturé comme le Z-module engendré par les k premières lignes de V⁻¹.

    Args:
        vectors: Famille L de vecteurs rationnels indépendants

    Returns:
        Base entière réduite par Hermite

    Raises:
        NotIndependentError: si la famille est liée
    """
    if not vectors:
        return []
    converted = [[qq(x) for x in vec] for vec in vectors]
    k = len(converted)
    if rank(to_matrix(converted)) < k:
        raise NotIndependentError("Les vecteurs ne sont pas indépendants (not independent)")

    integral = [clear_denominators(vec) for vec in converted]
    decomposition = smith_normal_form(integral)
    v_inverse = decomposition.V.convert_to(QQ).inv()
    rows = matrix_rows(v_inverse)
    saturated = [[int(x) for x in rows[i]] for i in range(k)]
    return hermite_basis(saturated)


def dot(u: Sequence[ExactScalar], v: Sequence[ExactScalar]) -> ExactScalar:
    return sum((a * b for a, b in zip(u, v)), QQ.zero)

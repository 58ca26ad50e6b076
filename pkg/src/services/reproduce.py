"""
Table de reproduction : chaque intégrale de référence est recalculée et comparée à
sa forme close.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from sympy.polys.domains import QQ

from .bruhat import WeylWord
from .chevalley import CapMode, CapQuery, cap
from .errors import FixtureNotFoundError, SchubertError
from .exactalg import ExactScalar, format_scalar, qq
from .integrality import E7_FIXTURE_WITNESSES, half_delta_class
from .localization import localize, subdiagram_word
from .mpoly import elementary_symmetric, linear_form, parse_polynomial, variables
from .rootdata import catalog, coweight_class, zeta_weight

# Configuration du logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

SCOPES = ("A", "C", "B", "D", "E6", "E7")

RANKS = {
    "A": range(2, 7),
    "C": range(2, 7),
    "B": range(2, 6),
    "D": range(4, 7),
}

# ζ_i(z0) pour E6 et E7
E6_WEIGHT_VALUES = (QQ(1, 3), QQ(-1, 3), QQ(0), QQ(1, 3), QQ(-1, 3), QQ(0))
E7_WEIGHT_VALUES = (QQ(1, 2), QQ(0), QQ(1, 2), QQ(0), QQ(0), QQ(0), QQ(1, 2))


@dataclass(frozen=True)
class ReproductionLine:
    """Une ligne de la table, transportable vers un processus de travail."""
    query_id: str
    family: str
    rank: int
    r: int
    description: str
    formula: str
    polynomial: str
    basis: str
    generator: str
    d: int
    expected: str
    word: tuple = ()
    subdiagram: Optional[str] = None


@dataclass(frozen=True)
class LineResult:
    entry: ReproductionLine
    computed: Optional[str]
    error: Optional[str] = None

    @property
    def expected(self) -> ExactScalar:
        return qq(self.entry.expected)

    @property
    def passed(self) -> bool:
        return self.error is None and self.computed is not None and qq(self.computed) == self.expected

    def to_dict(self) -> Dict[str, object]:
        return {
            "id": self.entry.query_id,
            "query": self.entry.description,
            "formula": self.entry.formula,
            "expected": self.entry.expected,
            "computed": self.computed,
            "status": "PASS" if self.passed else "FAIL",
            "error": self.error,
        }


@dataclass
class ReproductionReport:
    scope: str
    d: int
    lines: List[LineResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)

    @property
    def failures(self) -> List[LineResult]:
        return [line for line in self.lines if not line.passed]

    def to_dict(self) -> Dict[str, object]:
        return {
            "scope": self.scope,
            "d": self.d,
            "passed": self.passed,
            "total": len(self.lines),
            "failed": len(self.failures),
            "lines": [line.to_dict() for line in self.lines],
        }

    def to_text(self) -> str:
        rows = [f"Reproduction {self.scope} (d = {self.d}) : {len(self.lines) - len(self.failures)}/{len(self.lines)} PASS"]
        for line in self.lines:
            status = "PASS" if line.passed else "FAIL"
            computed = line.computed if line.computed is not None else f"erreur : {line.error}"
            rows.append(f"{status}  {line.entry.query_id:<22} {line.entry.description:<40} "
                        f"attendu {line.entry.expected:<8} calculé {computed}")
        return "\n".join(rows)


def _fmt(value) -> str:
    return format_scalar(qq(value))


def _grassmann_lines(family: str, d: int) -> List[ReproductionLine]:
    lines = []
    for n in RANKS[family]:
        system = catalog(family, n)
        denominator = n + 1 if family == "A" else 2
        for r in range(1, n + 1):
            names = [f"e{i}" for i in range(1, r + 1)]
            eps = variables(system, names, "eps")
            lines.append(ReproductionLine(
                query_id=f"{family}{n}-r{r}-c1", family=family, rank=n, r=r,
                description=f"∫ bX_e κ(c1(e1..e{r}))", formula=f"-dr/{'(n+1)' if family == 'A' else '2'}",
                polynomial=elementary_symmetric(eps, 1, "eps").to_text(), basis="eps", generator="z0", d=d,
                expected=_fmt(QQ(-d * r, denominator)),
            ))
            if r >= 2:
                lines.append(ReproductionLine(
                    query_id=f"{family}{n}-r{r}-c2", family=family, rank=n, r=r,
                    description=f"∫ bX_({r}) κ(c2(e1..e{r}))", formula=f"d(r-1)/{'(n+1)' if family == 'A' else '2'}",
                    polynomial=elementary_symmetric(eps, 2, "eps").to_text(), basis="eps", generator="z0", d=d,
                    expected=_fmt(QQ(d * (r - 1), denominator)), word=(r,),
                ))
    return lines


def _orthogonal_odd_lines(d: int) -> List[ReproductionLine]:
    lines = []
    for n in RANKS["B"]:
        system = catalog("B", n)
        for r in range(1, n + 1):
            f = half_delta_class(system, r).polynomial
            lines.append(ReproductionLine(
                query_id=f"B{n}-r{r}-Gamma", family="B", rank=n, r=r,
                description=f"∫ bX_Γ κ(½δ_{n - r + 1}(e1..e{r}))", formula="(-1)^(n-r+1) d/2",
                polynomial=f.to_text(), basis="eps", generator="z0", d=d,
                expected=_fmt(QQ((-1) ** (n - r + 1) * d, 2)), subdiagram="Gamma",
            ))
    return lines


def _orthogonal_even_lines(d: int) -> List[ReproductionLine]:
    lines = []
    for n in RANKS["D"]:
        system = catalog("D", n)
        zeta = lambda i: linear_form(zeta_weight(system, i), "eps").to_text()

        def line(r, tag, description, formula, polynomial, generator, expected, selector=None):
            return ReproductionLine(
                query_id=f"D{n}-r{r}-{generator}-{tag}", family="D", rank=n, r=r,
                description=description, formula=formula, polynomial=polynomial, basis="eps",
                generator=generator, d=d, expected=_fmt(expected), subdiagram=selector,
            )

        for r in range(1, n + 1):
            if r == n - 1:
                lines.append(line(r, "zeta", f"∫ bX_e κ(ζ{r})", "d/2", zeta(r), "z0", QQ(d, 2)))
                lines.append(line(r, "zeta", f"∫ bX_e κ(ζ{r})", "-d(n-2)/4", zeta(r), "z1", QQ(-d * (n - 2), 4)))
                g = half_delta_class(system, r).polynomial.to_text()
                lines.append(line(r, "Gamma2", "∫ bX_Γ″ κ(½δ3(η))", "d/2 - d(n-2)/2", g, "z1",
                                  QQ(d, 2) - QQ(d * (n - 2), 2), "GammaDoublePrime"))
                continue
            f = half_delta_class(system, r).polynomial.to_text()
            if r == n:
                lines.append(line(r, "zeta", f"∫ bX_e κ(ζ{n})", "-d/2", f, "z0", QQ(-d, 2)))
                lines.append(line(r, "zeta", f"∫ bX_e κ(ζ{n})", "-dn/4", f, "z1", QQ(-d * n, 4)))
                continue
            sign = (-1) ** (n - r + 1)
            lines.append(line(r, "Gamma1", f"∫ bX_Γ′ κ(½δ_{n - r + 1})", "(-1)^(n-r) d/2", f, "z0",
                              QQ(-sign * d, 2), "GammaPrime"))
            lines.append(line(r, "Gamma", f"∫ bX_Γ κ(½δ_{n - r + 1})", "(-1)^(n-r+1) dn/4", f, "z1",
                              QQ(sign * d * n, 4), "Gamma"))
            lines.append(line(r, "Gamma1", f"∫ bX_Γ′ κ(½δ_{n - r + 1})", "(-1)^(n-r+1) (dn/4 - d/2)", f, "z1",
                              sign * (QQ(d * n, 4) - QQ(d, 2)), "GammaPrime"))
    return lines


def _weight_lines(family: str, values: Sequence[ExactScalar], d: int) -> List[ReproductionLine]:
    system = catalog(family)
    lines = []
    for i, value in enumerate(values, start=1):
        lines.append(ReproductionLine(
            query_id=f"{family}-r{i}-zeta", family=family, rank=system.rank, r=i,
            description=f"∫ bX_e κ(ζ{i})", formula="-d·ζ_i(z0)",
            polynomial=f"z{i}", basis="zeta", generator="z0", d=d, expected=_fmt(-d * value),
        ))
    return lines


def _exceptional_lines(family: str, d: int, fixtures: Optional[Mapping[str, str]]) -> List[ReproductionLine]:
    rank = int(family[1])

    def line(r, tag, description, formula, polynomial, expected, word, basis="t"):
        return ReproductionLine(
            query_id=f"{family}-r{r}-{tag}", family=family, rank=rank, r=r, description=description,
            formula=formula, polynomial=polynomial, basis=basis, generator="z0", d=d,
            expected=_fmt(expected), word=tuple(word),
        )

    if family == "E6":
        lines = _weight_lines("E6", E6_WEIGHT_VALUES, d)
        lines.append(line(3, "c2", "∫ bX_(3) κ(c2(t1,t2,t3))", "-d/3", "t1*t2 + t1*t3 + t2*t3", QQ(-d, 3), (3,)))
        c3 = elementary_symmetric(variables(catalog("E6"), [f"t{i}" for i in range(1, 7)], "t"), 3, "t").to_text()
        lines.append(line(6, "c3", "∫ bX_(3,6) κ(c3(t1..t6))", "2d/3", c3, QQ(2 * d, 3), (3, 6)))
        return lines

    lines = _weight_lines("E7", E7_WEIGHT_VALUES, d)
    lines.append(line(2, "c2", "∫ bX_(2) κ(t1·t2)", "d/2", "t1*t2", QQ(d, 2), (2,)))
    lines.append(line(4, "c2", "∫ bX_(4) κ(c2(t1..t4))", "d/2",
                      "t1*t2 + t1*t3 + t1*t4 + t2*t3 + t2*t4 + t3*t4", QQ(d, 2), (4,)))
    expected = {5: QQ(-d, 2), 6: QQ(3 * d, 2)}
    for r, (name, word) in E7_FIXTURE_WITNESSES.items():
        if not fixtures or name not in fixtures:
            raise FixtureNotFoundError(f"Fixture '{name}' absente : nécessaire pour la reproduction E7")
        lines.append(line(r, name, f"∫ bX_{word} κ({name})", "-d/2" if r == 5 else "3d/2",
                          fixtures[name], expected[r], word, basis="t"))
    return lines


def build_lines(scope: str, d: int = 1, fixtures: Optional[Mapping[str, str]] = None) -> List[ReproductionLine]:
    """
    Lignes de la table pour une portée.

    Args:
        scope: A, C, B, D, E6, E7 ou all
        d: Multiplicateur du copoids
        fixtures: Textes des polynômes de référence (nécessaires pour E7)

    Returns:
        Lignes de la table, dans un ordre déterministe
    """
    scope = scope if scope == "all" else scope.upper()
    if scope != "all" and scope not in SCOPES:
        raise ValueError(f"Portée inconnue '{scope}' (attendu : {', '.join(SCOPES)}, all)")
    scopes = SCOPES if scope == "all" else (scope,)
    lines = []
    for item in scopes:
        if item in ("A", "C"):
            lines += _grassmann_lines(item, d)
        elif item == "B":
            lines += _orthogonal_odd_lines(d)
        elif item == "D":
            lines += _orthogonal_even_lines(d)
        else:
            lines += _exceptional_lines(item, d, fixtures)
    return lines


def run_line(entry: ReproductionLine) -> LineResult:
    """Calcule une ligne (fonction de module, utilisable dans un pool de processus)."""
    try:
        system = catalog(entry.family, entry.rank)
        f = parse_polynomial(entry.polynomial, system, entry.basis)
        z = coweight_class(system, entry.generator, entry.d)
        if entry.subdiagram is not None:
            word = subdiagram_word(system, entry.r, entry.subdiagram, entry.generator)
        else:
            word = WeylWord(system, entry.word)
        if entry.subdiagram is not None and word.letters:
            value = localize(system, word, f, z)
        else:
            value = cap(CapQuery(system, f, word, z, CapMode.FIBERED))
        return LineResult(entry, format_scalar(value))
    except SchubertError as e:
        logger.error(f"Ligne {entry.query_id} en échec : {e}")
        return LineResult(entry, None, str(e))


def reproduce(scope: str = "all", d: int = 1, fixtures: Optional[Mapping[str, str]] = None,
              workers: int = 1) -> ReproductionReport:
    """
    Recalcule la table d'une portée et compare chaque ligne à sa forme close.

    Args:
        scope: A, C, B, D, E6, E7 ou all
        d: Multiplicateur du copoids
        fixtures: Textes des polynômes de référence
        workers: Nombre de processus (1 : calcul séquentiel)

    Returns:
        Rapport ligne à ligne
    """
    entries = build_lines(scope, d, fixtures)
    logger.info(f"Reproduction {scope} (d = {d}) : {len(entries)} lignes, {workers} processus")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(run_line, entries))
    else:
        results = [run_line(entry) for entry in entries]

    report = ReproductionReport(scope=scope, d=d, lines=results)
    for line in report.failures:
        logger.warning(f"FAIL {line.entry.query_id} : attendu {line.entry.expected}, calculé {line.computed}")
    logger.info(f"Reproduction {scope} : {len(results) - len(report.failures)}/{len(results)} PASS")
    return report

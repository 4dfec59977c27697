"""
分类命题的机器验证

每条命题给出 (Δ, n, γ_1 范围, 附加假设, 结论)。验证时对所有维数 k <= n 做完整普查，
逐个检查满足假设的多重集是否满足结论；任何一个反例即判失败。
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence

from census.search import Budget, CensusEngine, CensusKey
from codes.canonical import canonical_key
from codes.matrix import GeneratorMatrix, from_multiset, parse_matrix, to_multiset
from pg.geometry import Subspace
from pg.multiset import PointMultiset, gamma1, point_distribution, project, spectrum
from pg.structure import StructureKind, classify_structure

logger = logging.getLogger(__name__)

Predicate = Callable[[PointMultiset], bool]


class UnknownClaimError(KeyError):
    """目录中没有该命题"""


class VerdictStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    BUDGET = "budget-exceeded"


@dataclass(frozen=True)
class Verdict:
    claim_id: str
    status: VerdictStatus
    checked: int
    counterexample: Optional[GeneratorMatrix] = None
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status is VerdictStatus.PASS

    def to_json(self) -> dict:
        return {
            "claim": self.claim_id,
            "status": self.status.value,
            "checked": self.checked,
            "message": self.message,
        }


@dataclass(frozen=True)
class Claim:
    claim_id: str
    delta: int
    n: int
    conclusion: Predicate
    description: str
    gamma_min: int = 1
    gamma_max: Optional[int] = None
    hypothesis: Optional[Predicate] = None
    # 对满足假设的全部多重集整体检查（唯一性等）
    collective: Optional[Callable[[List[PointMultiset]], bool]] = None
    q: int = 2


# ----------------------------------------------------------------------
# 谓词工具（二元）
# ----------------------------------------------------------------------
def _mults(m: PointMultiset) -> Dict[int, int]:
    return m.as_dict()


def _lam(m: PointMultiset, i: int) -> int:
    return point_distribution(m)[i]


def _is_simplex(m: PointMultiset, mult: int, dim: int) -> bool:
    tag = classify_structure(m)
    return tag.kind is StructureKind.SIMPLEX_MULTIPLE and tag.multiplier == mult and tag.dim == dim


def _is_affine_or_point(m: PointMultiset) -> bool:
    tag = classify_structure(m)
    return tag.kind is StructureKind.AFFINE_MULTIPLE or (
        tag.kind is StructureKind.SIMPLEX_MULTIPLE and tag.dim == 1)


def _is_base(m: PointMultiset, size: int) -> bool:
    tag = classify_structure(m)
    return tag.kind is StructureKind.PROJECTIVE_BASE and tag.size == size


def _minus(m: PointMultiset, counts: Dict[int, int]) -> Optional[PointMultiset]:
    """𝓜 - Σ counts[P]·χ_P；出现负重数返回 None"""
    d = _mults(m)
    for i, c in counts.items():
        d[i] = d.get(i, 0) - c
        if d[i] < 0:
            return None
    return PointMultiset.from_counts(m.q, m.k, d)


def _subspace_points(vectors, m: PointMultiset) -> List[int]:
    return [int(i) for i in Subspace.span(vectors, m.q, m.k).points()]


def _lines(m: PointMultiset) -> List[List[int]]:
    """支撑中任意两点张成的全部直线（点编号）"""
    coords = m.support_coords()
    seen, out = set(), []
    for a, b in itertools.combinations(range(len(coords)), 2):
        pts = tuple(sorted(_subspace_points([coords[a], coords[b]], m)))
        if pts not in seen:
            seen.add(pts)
            out.append(list(pts))
    return out


def _planes_in_support(m: PointMultiset) -> List[List[int]]:
    coords = m.support_coords()
    support = set(_mults(m))
    seen, out = set(), []
    for a, b, c in itertools.combinations(range(len(coords)), 3):
        s = Subspace.span([coords[a], coords[b], coords[c]], m.q, m.k)
        if s.dim != 3:
            continue
        pts = tuple(sorted(int(i) for i in s.points()))
        if pts not in seen and support.issuperset(pts):
            seen.add(pts)
            out.append(list(pts))
    return out


def _mult_on(m: PointMultiset, points: Sequence[int]) -> int:
    d = _mults(m)
    return sum(d.get(i, 0) for i in points)


# ----------------------------------------------------------------------
# 各命题的结论
# ----------------------------------------------------------------------
def _line_plus_double_point(m: PointMultiset) -> bool:
    for i, c in m.items:
        if c >= 2:
            rest = _minus(m, {i: 2})
            if rest is not None and _is_simplex(rest, 1, 2):
                return True
    return False


def _two_disjoint_lines(m: PointMultiset) -> bool:
    if gamma1(m) != 1:
        return False
    support = set(_mults(m))
    for line in _lines(m):
        if support.issuperset(line):
            rest = support.difference(line)
            if len(rest) == 3:
                other = PointMultiset.from_counts(m.q, m.k, {i: 1 for i in rest})
                if classify_structure(other).kind is StructureKind.SIMPLEX_MULTIPLE:
                    return True
    return False


def _contains_line(m: PointMultiset) -> bool:
    support = set(_mults(m))
    return any(support.issuperset(line) for line in _lines(m))


def _plane_plus_point4(m: PointMultiset) -> bool:
    for i, c in m.items:
        if c >= 4:
            rest = _minus(m, {i: 4})
            if rest is not None and _is_simplex(rest, 1, 3):
                return True
    return False


def _plane_plus_double_line(m: PointMultiset) -> bool:
    for line in _lines(m):
        rest = _minus(m, {i: 2 for i in line})
        if rest is not None and _is_simplex(rest, 1, 3):
            return True
    return False


def _base5_with_triple_point(m: PointMultiset) -> bool:
    """𝓜(C) = 3，其余点重数 1 且恰好铺满 C 与一个 B_5 各点的连线"""
    triples = [i for i, c in m.items if c == 3]
    if len(triples) != 1 or any(c not in (1, 3) for _, c in m.items):
        return False
    c_vec = m.support_coords()[list(m.support).index(triples[0])]
    image = project(m, c_vec)
    if any(c != 2 for _, c in image.items) or len(image.items) != 5:
        return False
    halved = PointMultiset.from_counts(image.q, image.k, {i: 1 for i, _ in image.items})
    return _is_base(halved, 5)


def _all_even(m: PointMultiset) -> bool:
    return all(c % 2 == 0 for _, c in m.items)


def _twice_base5(m: PointMultiset) -> bool:
    if not _all_even(m):
        return False
    halved = PointMultiset.from_counts(m.q, m.k, {i: c // 2 for i, c in m.items})
    return _is_base(halved, 5)


def _lambda_bounds_16(m: PointMultiset) -> bool:
    l2, l3 = _lam(m, 2), _lam(m, 3)
    return l3 <= 4 and l2 + 3 * l3 <= 12 and (l3 == 4 or l3 <= 2)


def _lambda_triples_16(m: PointMultiset) -> bool:
    return point_distribution(m).vector(3) in {(7, 3, 1), (6, 2, 2), (9, 2, 1)}


def _card17_special(m: PointMultiset) -> bool:
    return _lam(m, 2) > 0 or m.k >= 6 or _lam(m, 3) == 1


def _card17_lambda2_zero(m: PointMultiset) -> bool:
    l3 = _lam(m, 3)
    if l3 not in (1, 2):
        return False
    coords = m.support_coords()
    triples = [coords[j] for j, (_, c) in enumerate(m.items) if c == 3]
    for a, b in itertools.combinations(triples, 2):
        if _mult_on(m, _subspace_points([a, b], m)) != 6:
            return False
    return l3 == 1 or m.k >= 6


def _has_line_123(m: PointMultiset) -> bool:
    d = _mults(m)
    for line in _lines(m):
        if sorted(d.get(i, 0) for i in line) == [1, 2, 3]:
            return True
    return False


# 唯一的带 (1,2,3) 直线的基数 17 多重集
CARD17_LINE123_MATRIX = """
2 5 17
1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0
0 0 0 1 1 1 1 0 1 1 0 0 0 0 0 1 1
0 0 0 0 1 1 1 1 0 0 1 0 1 0 1 0 1
0 0 0 0 0 0 0 0 0 0 0 1 1 0 0 1 1
0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1
"""


def _card17_line123_invariants(m: PointMultiset) -> bool:
    a = spectrum(m)
    return (m.k == 5 and point_distribution(m).vector(3) == (9, 1, 2)
            and (a[5], a[9], a[13]) == (9, 19, 3))


def _card17_line123_unique(found: List[PointMultiset]) -> bool:
    reference = canonical_key(_reference_multiset())
    return len(found) == 1 and canonical_key(found[0]) == reference


def _reference_multiset() -> PointMultiset:
    return to_multiset(parse_matrix(CARD17_LINE123_MATRIX))


def _empty(m: PointMultiset) -> bool:
    """下界命题：任何满足假设的多重集都是反例"""
    return False


def _build_catalog() -> Dict[str, Claim]:
    claims = [
        Claim("2div-n2", 2, 2, lambda m: _is_simplex(m, 2, 1), "2·χ_P"),
        Claim("2div-n3", 2, 3, lambda m: _is_simplex(m, 1, 2), "χ_L"),
        Claim("2div-n4", 2, 4, lambda m: _all_even(m) or classify_structure(m).kind is StructureKind.AFFINE_MULTIPLE,
              "2·χ_P1 + 2·χ_P2 或 χ_(E\\L)"),
        Claim("2div-n5", 2, 5, lambda m: _line_plus_double_point(m) or _is_base(m, 5), "χ_L + 2·χ_P 或 χ_B5"),
        Claim("2div-n6", 2, 6, lambda m: gamma1(m) >= 2 or _is_base(m, 6) or _two_disjoint_lines(m),
              "含重点, 或 χ_B6, 或两条不交直线"),
        Claim("2div-n7", 2, 7, lambda m: gamma1(m) >= 2 or _contains_line(m) or _is_base(m, 7),
              "含重点, 或含直线, 或 χ_B7"),
        Claim("4div-n4", 4, 4, lambda m: _is_simplex(m, 4, 1), "4·χ_P"),
        Claim("4div-n6", 4, 6, lambda m: _is_simplex(m, 2, 2), "2·χ_L"),
        Claim("4div-n7", 4, 7, lambda m: _is_simplex(m, 1, 3), "χ_E"),
        Claim("4div-n8", 4, 8, _is_affine_or_point, "8·χ_P 或仿射子空间的倍数"),
        Claim("4div-n10", 4, 10, lambda m: gamma1(m) >= 4 or _twice_base5(m), "含 4 重点或 2·χ_B5"),
        Claim("4div-n10-even", 4, 10, lambda m: all(c in (2, 4, 6) for _, c in m.items), "重数属于 {0,2,4,6}"),
        Claim("4div-n11", 4, 11, _plane_plus_point4, "χ_E + 4·χ_P"),
        Claim("4div-n12", 4, 12, lambda m: gamma1(m) >= 4 or _all_even(m), "含 4 重点或全部重数为偶数"),
        Claim("4div-n13", 4, 13, lambda m: _plane_plus_double_line(m) or _base5_with_triple_point(m),
              "χ_E + 2·χ_L 或 B_5 与三重点 C 的连线"),
        Claim("4div-n15", 4, 15, lambda m: gamma1(m) >= 4 or gamma1(m) == 1 or bool(_planes_in_support(m)),
              "含 4 重点, 或射影, 或 𝓜 >= χ_E"),
        Claim("4div-n16-lambda", 4, 16, _lambda_bounds_16, "λ_3 <= 4, λ_2 + 3λ_3 <= 12, λ_3 < 4 时 λ_3 <= 2",
              gamma_max=3),
        Claim("4div-n16-gamma3", 4, 16, _lambda_triples_16, "(λ_1,λ_2,λ_3) ∈ {(7,3,1),(6,2,2),(9,2,1)}",
              gamma_min=3, gamma_max=3, hypothesis=lambda m: _lam(m, 2) >= 2),
        Claim("4div-n17-special", 4, 17, _card17_special, "存在 2 重点, 或 k >= 6, 或 λ_3 = 1",
              gamma_min=2, gamma_max=3),
        Claim("4div-n17-lambda2-zero", 4, 17, _card17_lambda2_zero,
              "λ_3 ∈ {1,2}, 两个 3 重点所在直线重数为 6, λ_3 = 2 时 k >= 6",
              gamma_min=3, gamma_max=3, hypothesis=lambda m: _lam(m, 2) == 0),
        Claim("4div-n17-line123-unique", 4, 17, _card17_line123_invariants,
              "k = 5, λ = (9,1,2), (a_5,a_9,a_13) = (9,19,3), 且在等价意义下唯一",
              gamma_min=2, gamma_max=3, hypothesis=_has_line_123, collective=_card17_line123_unique),
        Claim("8div-n8", 8, 8, lambda m: _is_simplex(m, 8, 1), "8·χ_P"),
        Claim("8div-n12", 8, 12, lambda m: _is_simplex(m, 4, 2), "4·χ_L"),
        Claim("8div-n14", 8, 14, lambda m: _is_simplex(m, 2, 3), "2·χ_E"),
        Claim("8div-n15", 8, 15, lambda m: _is_simplex(m, 1, 4), "χ_S"),
        Claim("8div-n16", 8, 16, _is_affine_or_point, "16·χ_P 或仿射子空间的倍数"),
    ]
    for n in (20, 24, 26, 27, 35, 39, 41):
        claims.append(Claim(f"8div-n{n}-gamma-ge-4", 8, n, _empty, "γ_1 >= 4", gamma_max=3))
    for n in (22, 23, 37):
        claims.append(Claim(f"8div-n{n}-gamma-ge-8", 8, n, _empty, "γ_1 >= 8", gamma_max=7))
    return {c.claim_id: c for c in claims}


CATALOG: Dict[str, Claim] = _build_catalog()


def get_claim(claim_id: str) -> Claim:
    try:
        return CATALOG[claim_id]
    except KeyError:
        raise UnknownClaimError(f"未知命题: {claim_id}") from None


def verify_claim(claim_id: str, budget: Optional[Budget] = None, threads: Optional[int] = None,
                 store=None) -> Verdict:
    """穷举满足假设的全部多重集并检查结论"""
    claim = get_claim(claim_id)
    engine = CensusEngine(budget, threads, store)
    matching: List[PointMultiset] = []
    checked = 0
    for k in range(1, claim.n + 1):
        record = engine.enumerate(CensusKey(claim.q, claim.delta, claim.n, k, claim.gamma_max))
        for m in record.multisets():
            if gamma1(m) < claim.gamma_min:
                continue
            if claim.hypothesis is not None and not claim.hypothesis(m):
                continue
            checked += 1
            matching.append(m)
            if not claim.conclusion(m):
                logger.info(f"命题 {claim_id} 不成立: k={k} 的反例")
                return Verdict(claim_id, VerdictStatus.FAIL, checked, from_multiset(m),
                               f"反例 k={k}, γ_1={gamma1(m)}")
        if record.partial:
            return Verdict(claim_id, VerdictStatus.BUDGET, checked,
                           message=f"预算耗尽于 k={k}: {record.limits}")
    if claim.collective is not None and not claim.collective(matching):
        return Verdict(claim_id, VerdictStatus.FAIL, checked,
                       from_multiset(matching[0]) if matching else None, "整体条件不成立")
    logger.info(f"命题 {claim_id} 成立: 检查了 {checked} 个等价类")
    return Verdict(claim_id, VerdictStatus.PASS, checked, message=claim.description)

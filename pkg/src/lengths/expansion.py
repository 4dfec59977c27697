"""
S_q(r)-进制展开与长度可行性

s_q(r, i) = q^i · [r-i+1]_q，n = Σ e_i·s_q(r, i)，其中 e_0..e_(r-1) ∈ {0..q-1}，
首系数 e_r ∈ ℤ；q^r-可整除多重集的基数 n 可实现当且仅当 e_r >= 0。
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from pg.geometry import gauss

logger = logging.getLogger(__name__)


class ExpansionError(ArithmeticError):
    """展开系数回代后不等于 n"""


@dataclass(frozen=True)
class BaseSequence:
    q: int
    r: int
    s: Tuple[int, ...]


def base_sequence(q: int, r: int) -> BaseSequence:
    if r < 0:
        raise ValueError(f"r 必须 >= 0: r={r}")
    return BaseSequence(q, r, tuple(q ** i * gauss(r - i + 1, q) for i in range(r + 1)))


@dataclass(frozen=True)
class Expansion:
    n: int
    q: int
    r: int
    digits: Tuple[int, ...]  # e_0 .. e_(r-1)
    leading: int             # e_r

    @property
    def feasible(self) -> bool:
        return self.leading >= 0

    @property
    def coefficients(self) -> Tuple[int, ...]:
        return self.digits + (self.leading,)

    def value(self) -> int:
        return sum(e * s for e, s in zip(self.coefficients, base_sequence(self.q, self.r).s))

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "q": self.q,
            "r": self.r,
            "digits": list(self.coefficients),
            "leading": self.leading,
            "feasible": self.feasible,
        }


def sqr_adic_expansion(n: int, q: int, r: int) -> Expansion:
    """逐位剥离：s_q(r,i)/q^i ≡ 1 (mod q)，故 e_i 为当前余量模 q"""
    if r < 0:
        raise ValueError(f"r 必须 >= 0: r={r}")
    rest = n
    digits: List[int] = []
    for i in range(r):
        e = rest % q
        digits.append(e)
        rest = (rest - e * gauss(r - i + 1, q)) // q
    expansion = Expansion(n, q, r, tuple(digits), rest)
    if expansion.value() != n:
        raise ExpansionError(f"展开回代失败: n={n}, q={q}, r={r}, 系数={expansion.coefficients}")
    return expansion


def is_length_feasible(n: int, q: int, r: int) -> bool:
    """是否存在基数为 n 的 q^r-可整除多重集"""
    return sqr_adic_expansion(n, q, r).feasible


def infeasible_lengths(q: int, r: int, upto: int) -> List[int]:
    return [n for n in range(1, upto + 1) if not is_length_feasible(n, q, r)]


def characteristic(q: int) -> int:
    return next(d for d in range(2, q + 1) if q % d == 0)


def ward_reduce(q: int, delta: int) -> Tuple[int, int]:
    """Δ = p^e · d，gcd(p, d) = 1；返回 (p^e, d)"""
    if delta < 1:
        raise ValueError(f"Δ 必须 >= 1: {delta}")
    p = characteristic(q)
    power = 1
    d = delta
    while d % p == 0:
        d //= p
        power *= p
    return power, d


def power_exponent(q: int, p_power: int) -> Tuple[int, int]:
    """把 p^e 写成 q^r·p^s（0 <= s < log_p q）"""
    r = 0
    rest = p_power
    while rest % q == 0 and rest > 1:
        rest //= q
        r += 1
    return r, rest

"""
有限域 F_q 运算（q 为不超过 16 的素数幂）

元素统一用下标 0..q-1 表示：
  - 素数 q：下标即剩余类本身
  - 非素数 q：下标 0 为零元，下标 i >= 1 表示 α^(i-1)，α 为本原元
F_4 由 x^2+x+1 生成，下标 (0,1,2,3) 对应 (0,1,a,a^2)，且 a^2 = a+1。
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class FieldError(ValueError):
    """有限域参数或运算错误"""


# 首一本原多项式的低次系数（x^e 系数省略），从常数项开始
_PRIMITIVE_POLYNOMIALS = {
    4: (1, 1),          # x^2 + x + 1
    8: (1, 1, 0),       # x^3 + x + 1
    9: (2, 1),          # x^2 + x + 2
    16: (1, 1, 0, 0),   # x^4 + x + 1
}

_SYMBOLS = "0123456789abcdefg"
_SYMBOLS_F4 = "01ab"


def _factor_prime_power(q: int) -> Tuple[int, int]:
    if q < 2:
        raise FieldError(f"域的阶必须 >= 2: q={q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise FieldError(f"q={q} 不是素数幂")
    return p, e


@dataclass(frozen=True)
class FieldSpec:
    """F_q 的完整运算表，构造后不可变"""
    q: int
    p: int
    e: int
    add_table: np.ndarray = field(repr=False, compare=False)
    mul_table: np.ndarray = field(repr=False, compare=False)
    neg_table: np.ndarray = field(repr=False, compare=False)
    inv_table: np.ndarray = field(repr=False, compare=False)
    vectors: np.ndarray = field(repr=False, compare=False)  # 元素在素域上的坐标, shape (q, e)

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)


def _build_prime(q: int) -> FieldSpec:
    r = np.arange(q)
    add_table = (r[:, None] + r[None, :]) % q
    mul_table = (r[:, None] * r[None, :]) % q
    neg_table = (-r) % q
    inv_table = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv_table[a] = pow(a, q - 2, q)
    vectors = r.reshape(q, 1)
    return FieldSpec(q, q, 1, add_table.astype(np.int64), mul_table.astype(np.int64),
                     neg_table.astype(np.int64), inv_table, vectors.astype(np.int64))


def _build_extension(q: int, p: int, e: int) -> FieldSpec:
    low = _PRIMITIVE_POLYNOMIALS.get(q)
    if low is None:
        raise FieldError(f"未配置 F_{q} 的本原多项式")

    def times_x(coeffs: List[int]) -> List[int]:
        top = coeffs[-1]
        shifted = [0] + coeffs[:-1]
        return [(c - top * m) % p for c, m in zip(shifted, low)]

    # 依次生成 α^0, α^1, ..., α^(q-2) 的多项式系数
    powers = []
    current = [1] + [0] * (e - 1)
    for _ in range(q - 1):
        powers.append(tuple(current))
        current = times_x(current)
    if len(set(powers)) != q - 1 or tuple(current) != powers[0]:
        raise FieldError(f"F_{q} 的多项式不是本原多项式")

    vectors = np.zeros((q, e), dtype=np.int64)
    index_of = {tuple([0] * e): 0}
    for i, coeffs in enumerate(powers, start=1):
        vectors[i] = coeffs
        index_of[coeffs] = i

    add_table = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            s = tuple(int(x) for x in (vectors[a] + vectors[b]) % p)
            add_table[a, b] = index_of[s]

    mul_table = np.zeros((q, q), dtype=np.int64)
    for a in range(1, q):
        for b in range(1, q):
            mul_table[a, b] = 1 + ((a - 1) + (b - 1)) % (q - 1)

    neg_table = np.array([index_of[tuple(int(x) for x in (-vectors[a]) % p)] for a in range(q)],
                         dtype=np.int64)
    inv_table = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv_table[a] = 1 + (-(a - 1)) % (q - 1)
    return FieldSpec(q, p, e, add_table, mul_table, neg_table, inv_table, vectors)


@lru_cache(maxsize=None)
def get_field(q: int) -> FieldSpec:
    """获取 F_q 的运算表（缓存）"""
    p, e = _factor_prime_power(q)
    if q > 16:
        raise FieldError(f"仅支持 q <= 16: q={q}")
    spec = _build_prime(q) if e == 1 else _build_extension(q, p, e)
    logger.debug(f"构建有限域 F_{q} (p={p}, e={e})")
    return spec


def _check(a: int, f: FieldSpec) -> int:
    if not 0 <= a < f.q:
        raise FieldError(f"元素 {a} 不属于 F_{f.q}")
    return a


def add(a: int, b: int, f: FieldSpec) -> int:
    return int(f.add_table[_check(a, f), _check(b, f)])


def sub(a: int, b: int, f: FieldSpec) -> int:
    return int(f.add_table[_check(a, f), f.neg_table[_check(b, f)]])


def neg(a: int, f: FieldSpec) -> int:
    return int(f.neg_table[_check(a, f)])


def mul(a: int, b: int, f: FieldSpec) -> int:
    return int(f.mul_table[_check(a, f), _check(b, f)])


def inv(a: int, f: FieldSpec) -> int:
    if _check(a, f) == 0:
        raise FieldError("零元没有乘法逆元")
    return int(f.inv_table[a])


def power(a: int, n: int, f: FieldSpec) -> int:
    """a^n，n 可为负（此时 a 必须非零）"""
    if n < 0:
        return power(inv(a, f), -n, f)
    if _check(a, f) == 0:
        return 1 if n == 0 else 0
    if f.is_prime:
        return pow(a, n, f.q)
    return 1 + ((a - 1) * n) % (f.q - 1)


def frobenius(a: int, j: int, f: FieldSpec) -> int:
    """Frobenius 自同构的 j 次幂: a -> a^(p^j)，0 <= j < e"""
    if not 0 <= j < f.e:
        raise FieldError(f"Frobenius 指数需满足 0 <= j < {f.e}: j={j}")
    return power(a, f.p ** j, f)


def frobenius_table(j: int, f: FieldSpec) -> np.ndarray:
    """逐元素的 Frobenius 映射表"""
    return np.array([frobenius(a, j % f.e, f) for a in f.elements], dtype=np.int64)


def to_vector(a: int, f: FieldSpec) -> Tuple[int, ...]:
    """元素在素域 F_p 上的坐标（多项式基 1, x, ..., x^(e-1)）"""
    return tuple(int(x) for x in f.vectors[_check(a, f)])


def from_vector(coords, f: FieldSpec) -> int:
    target = tuple(int(c) % f.p for c in coords)
    for a in f.elements:
        if to_vector(a, f) == target:
            return a
    raise FieldError(f"坐标 {coords} 不对应 F_{f.q} 的元素")


def symbol(a: int, f: FieldSpec) -> str:
    """文本格式中的元素符号"""
    _check(a, f)
    return _SYMBOLS_F4[a] if f.q == 4 else _SYMBOLS[a]


def parse_symbol(s: str, f: FieldSpec) -> int:
    alphabet = _SYMBOLS_F4 if f.q == 4 else _SYMBOLS[:f.q]
    idx = alphabet.find(s.lower())
    if idx < 0:
        raise FieldError(f"无法识别 F_{f.q} 的元素符号: {s!r}")
    return idx

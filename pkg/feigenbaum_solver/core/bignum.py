#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
多精度数值内核

提供任意精度实数的精度约定，以及其他模块依赖的多项式内核:
Chebyshev 多项式的取值与导数、带半首项的级数求和（Clenshaw 递推）、
精确二项式系数、十进制打印与稳定位数比较。

所有数值都是 mpmath 的 mpf，每个 Precision 对应一个私有的 mpmath
上下文，因此不同精度的求解互不干扰。
"""

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Union

import mpmath

from feigenbaum_solver.core.exceptions import DomainError

# 类型标注用：各上下文的 mpf 都派生自同一个基类
BigReal = mpmath.mpf

DEFAULT_GUARD_DIGITS = 20
MIN_TARGET_DIGITS = 10
MIN_GUARD_DIGITS = 10

_DECIMAL_PATTERN = re.compile(r'^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$')


@lru_cache(maxsize=None)
def _context_for(dps: int) -> mpmath.MPContext:
    """按十进制位数缓存 mpmath 上下文（创建后不再修改）"""
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


@dataclass(frozen=True)
class Precision:
    """
    精度约定

    属性:
        target_digits: 要求的稳定十进制位数
        guard_digits: 额外的保护位数（默认 20）

    示例:
        >>> precision = Precision(target_digits=30)
        >>> precision.working_digits
        50
        >>> x = precision.real("0.5")
    """
    target_digits: int
    guard_digits: int = DEFAULT_GUARD_DIGITS

    def __post_init__(self):
        if self.target_digits < MIN_TARGET_DIGITS:
            raise DomainError(
                f"target_digits 至少为 {MIN_TARGET_DIGITS}，当前: {self.target_digits}"
            )
        if self.guard_digits < MIN_GUARD_DIGITS:
            raise DomainError(
                f"guard_digits 至少为 {MIN_GUARD_DIGITS}，当前: {self.guard_digits}"
            )

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @classmethod
    def from_working_digits(cls, working_digits: int) -> 'Precision':
        """
        由工作位数反推精度（读取检查点时使用）

        working_digits >= 20 时得到的 Precision 的工作位数与输入完全相同。
        """
        guard = max(MIN_GUARD_DIGITS, min(DEFAULT_GUARD_DIGITS, working_digits - MIN_TARGET_DIGITS))
        target = max(MIN_TARGET_DIGITS, working_digits - guard)
        return cls(target_digits=target, guard_digits=guard)

    def context(self) -> mpmath.MPContext:
        return _context_for(self.working_digits)

    def real(self, value: Union[str, int, float, BigReal]) -> BigReal:
        """把字符串或数值转换成本精度下的 BigReal"""
        if isinstance(value, str):
            return parse_real(value, self)
        return self.context().mpf(value)

    def tolerance(self, margin: int) -> BigReal:
        """返回 10^-(working_digits - margin)"""
        ctx = self.context()
        return ctx.mpf(10) ** (-(self.working_digits - margin))


def context_of(value: BigReal) -> mpmath.MPContext:
    """取出数值所属的 mpmath 上下文"""
    return getattr(value, 'context', mpmath.mp)


def parse_real(text: str, precision: Union[Precision, mpmath.MPContext]) -> BigReal:
    """
    解析十进制字符串

    支持符号、可省略的整数部分、小数部分和 "e±k" 指数。

    参数:
        text: 十进制字符串，如 "-0.70039", ".5", "1e-20"
        precision: Precision 或 mpmath 上下文

    返回:
        BigReal: 该精度下最接近的值

    异常:
        DomainError: 字符串不是合法的十进制数
    """
    ctx = precision.context() if isinstance(precision, Precision) else precision
    cleaned = text.strip().replace('−', '-')
    if not _DECIMAL_PATTERN.match(cleaned):
        raise DomainError(f"无法解析的十进制数: {text!r}")
    sign = ''
    if cleaned[0] in '+-':
        sign, cleaned = cleaned[0], cleaned[1:]
    if cleaned.startswith('.'):
        cleaned = '0' + cleaned
    return ctx.mpf(sign + cleaned)


def format_truncated(value: BigReal, digits: int) -> str:
    """
    以定点形式打印 value，保留 digits 位有效数字并向零截断

    先按 value 自身的工作精度正确舍入，再截断到 digits 位，
    因此 digits 等于工作精度时打印结果可以原样读回。

    示例:
        >>> format_truncated(mp.mpf("-2.857129"), 5)
        '-2.8571'
    """
    ctx = context_of(value)
    if not value:
        return "0"
    full = max(digits, ctx.dps)
    text = ctx.nstr(
        value, full,
        strip_zeros=False,
        min_fixed=-ctx.inf,
        max_fixed=ctx.inf
    )
    return _truncate_significant(text, digits)


def _truncate_significant(text: str, digits: int) -> str:
    point = text.find('.')
    kept: List[str] = []
    count = 0
    seen_nonzero = False
    for position, ch in enumerate(text):
        if ch.isdigit():
            if ch != '0':
                seen_nonzero = True
            if seen_nonzero:
                count += 1
                if count > digits:
                    if point < 0 or position < point:
                        # 截断点落在整数部分，补零保持数量级
                        end = point if point >= 0 else len(text)
                        kept.extend('0' * (end - position))
                    break
        kept.append(ch)
    result = ''.join(kept)
    if result.endswith('.'):
        result = result[:-1]
    return result


def significant_digit_count(text: str) -> int:
    """统计十进制字符串中的有效数字个数（去掉符号、小数点与前导零）"""
    digits = ''.join(ch for ch in text if ch.isdigit()).lstrip('0')
    return len(digits)


def common_prefix_digits(a: BigReal, b: BigReal, digits: int = None) -> str:
    """
    两个数在工作精度下打印后共同的十进制前缀（向零截断）

    参数:
        a, b: 待比较的值
        digits: 打印位数，默认取两者工作精度中较小者

    返回:
        str: 共同前缀；符号或首位有效数字不同时返回空字符串。
             前缀必须完整包含整数部分，跨越 10 的幂边界（如 0.999 与 1.000）
             时同样返回空字符串。

    示例:
        >>> common_prefix_digits(mpf("0.1234567"), mpf("0.1234999"))
        '0.1234'
    """
    if digits is None:
        digits = min(context_of(a).dps, context_of(b).dps)
    text_a = format_truncated(a, digits)
    text_b = format_truncated(b, digits)
    if text_a == text_b:
        return text_a

    length = 0
    for ch_a, ch_b in zip(text_a, text_b):
        if ch_a != ch_b:
            break
        length += 1
    prefix = text_a[:length]

    # 整数部分必须完整
    if '.' not in prefix:
        return ""
    if prefix.endswith('.'):
        prefix = prefix[:-1]
    if significant_digit_count(prefix) == 0:
        return ""
    return prefix


def cheb_t(n: int, u: BigReal) -> BigReal:
    """
    第一类 Chebyshev 多项式 T_n(u)

    使用三项递推 T_{n+1} = 2u T_n - T_{n-1}，对 |u| > 1 同样有效
    （未收敛的迭代中会出现这种参数）。
    """
    ctx = context_of(u)
    previous, current = ctx.one, ctx.mpf(u)
    if n == 0:
        return previous
    two_u = 2 * current
    for _ in range(n - 1):
        previous, current = current, two_u * current - previous
    return current


def cheb_t_values(n_max: int, u: BigReal) -> List[BigReal]:
    """一次递推返回 T_0(u) ... T_{n_max}(u)"""
    ctx = context_of(u)
    values = [ctx.one]
    if n_max == 0:
        return values
    u = ctx.mpf(u)
    values.append(u)
    two_u = 2 * u
    for _ in range(n_max - 1):
        values.append(two_u * values[-1] - values[-2])
    return values


def cheb_t_prime(n: int, u: BigReal) -> BigReal:
    """
    T_n'(u) = n U_{n-1}(u)，U 为第二类 Chebyshev 多项式

    参数:
        n: 阶数，n >= 1（T_0' 由调用方按 0 处理）
        u: 自变量
    """
    if n < 1:
        raise DomainError(f"cheb_t_prime 要求 n >= 1，当前: {n}")
    ctx = context_of(u)
    previous, current = ctx.one, 2 * ctx.mpf(u)
    if n == 1:
        return ctx.one
    two_u = current
    for _ in range(n - 2):
        previous, current = current, two_u * current - previous
    return n * current


def cheb_sum_halved(
    coeffs: Sequence[BigReal],
    u: BigReal,
    derivative: bool = False
) -> BigReal:
    """
    偶数阶 Chebyshev 级数求和

    coeffs 依次为 t_0, t_2, ..., t_{2N-2}。利用 T_{2k}(u) = T_k(2u^2 - 1)
    把偶数阶级数化为 w = 2u^2 - 1 上的普通级数，再用 Clenshaw 递推求和。

    参数:
        coeffs: 偶数下标系数
        u: 自变量
        derivative: False 时返回 Σ' t_n T_n(u)（n=0 项减半）；
                    True 时返回 Σ_{n>=2} t_n T_n'(u)

    返回:
        BigReal: 级数值或导数值
    """
    ctx = context_of(u)
    u = ctx.mpf(u)
    size = len(coeffs)
    if size == 0:
        return ctx.zero
    w = 2 * u * u - 1
    two_w = 2 * w

    if not derivative:
        b1 = b2 = ctx.zero
        for k in range(size - 1, 0, -1):
            b1, b2 = coeffs[k] + two_w * b1 - b2, b1
        return coeffs[0] / 2 + w * b1 - b2

    # d/du T_k(w) = 4u * k U_{k-1}(w)，对 U 级数做 Clenshaw
    b1 = b2 = ctx.zero
    for j in range(size - 2, -1, -1):
        b1, b2 = (j + 1) * coeffs[j + 1] + two_w * b1 - b2, b1
    return 4 * u * b1


def binomial_exact(a: int, b: int) -> int:
    """
    精确二项式系数 C(a, b)

    异常:
        DomainError: b > a 或参数为负
    """
    if a < 0 or b < 0 or b > a:
        raise DomainError(f"二项式系数参数越界: C({a}, {b})")
    return math.comb(a, b)


def cheb_monomial_coefficient(s: int, m: int) -> int:
    """
    T_s(u) 中 u^m 的精确整数系数

    等于 2^m (-1)^((s-m)/2) s/(s+m) C((s+m)/2, m)，s+m 为奇数时为 0。
    s = m = 0 时返回 1。
    """
    if m > s or (s + m) % 2:
        return 0
    if s == 0:
        return 1
    numerator = (1 << m) * s * binomial_exact((s + m) // 2, m)
    value = numerator // (s + m)
    return -value if ((s - m) // 2) % 2 else value


__all__ = [
    'BigReal',
    'Precision',
    'DEFAULT_GUARD_DIGITS',
    'context_of',
    'parse_real',
    'format_truncated',
    'significant_digit_count',
    'common_prefix_digits',
    'cheb_t',
    'cheb_t_values',
    'cheb_t_prime',
    'cheb_sum_halved',
    'binomial_exact',
    'cheb_monomial_coefficient',
]

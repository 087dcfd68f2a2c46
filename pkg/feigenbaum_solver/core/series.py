#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Chebyshev 级数模型

g(x) = Σ' t_n T_n(x^d)，只保留偶数下标系数，d = z/2。
包括求值、两个求和规则、Chebyshev 到 Taylor 系数的换算，
以及阶数 N 与 N+4 之间的稳定位数比较。
"""

from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from feigenbaum_solver.core.bignum import (
    BigReal,
    Precision,
    cheb_monomial_coefficient,
    cheb_sum_halved,
    common_prefix_digits,
    format_truncated,
)
from feigenbaum_solver.core.exceptions import DomainError
from feigenbaum_solver.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class FeigenbaumSeries:
    """
    截断的偶数 Chebyshev 级数

    属性:
        z: Taylor 展开的首项指数（偶数，>= 2）
        t: 系数 t_0, t_2, ..., t_{2N-2}
        precision: 精度约定

    派生属性:
        d: z/2
        order_n: 保留的系数个数 N

    示例:
        >>> series = FeigenbaumSeries.from_coefficients(2, ["2"], Precision(30))
        >>> eval_g(series, series.precision.real("0.3"))
        mpf('1.0')
    """
    z: int
    t: Tuple[BigReal, ...]
    precision: Precision

    def __post_init__(self):
        if self.z < 2 or self.z % 2:
            raise DomainError(f"z 必须是 >= 2 的偶数，当前: {self.z}")
        if not self.t:
            raise DomainError("级数至少需要一个系数 t_0")
        ctx = self.precision.context()
        object.__setattr__(self, 't', tuple(ctx.mpf(value) for value in self.t))

    @property
    def d(self) -> int:
        return self.z // 2

    @property
    def order_n(self) -> int:
        return len(self.t)

    @property
    def indices(self) -> List[int]:
        """系数对应的偶数下标 0, 2, 4, ..."""
        return [2 * k for k in range(self.order_n)]

    def coefficient(self, index: int) -> BigReal:
        """按偶数下标取系数，超出截断阶数时为 0"""
        if index % 2:
            raise DomainError(f"只存在偶数下标的系数，当前: {index}")
        column = index // 2
        if column >= self.order_n:
            return self.precision.context().zero
        return self.t[column]

    @classmethod
    def from_coefficients(
        cls,
        z: int,
        values: Iterable[Union[str, int, BigReal]],
        precision: Precision
    ) -> 'FeigenbaumSeries':
        return cls(z=z, t=tuple(precision.real(v) for v in values), precision=precision)

    def with_coefficients(self, values: Sequence[BigReal]) -> 'FeigenbaumSeries':
        return replace(self, t=tuple(values))


@dataclass(frozen=True)
class TaylorEntry:
    """一个 Taylor 系数 b_n 及其稳定位数"""
    exponent: int
    value: BigReal
    stable_digits: str


@dataclass
class TaylorTable:
    """
    Taylor 系数表 b_n（n 为 z 的正整数倍）

    属性:
        z: 首项指数
        entries: 各指数的系数
        constant: 常数项，即 g(0)；收敛解上等于 1
        truncated: 最大指数超出了截断级数能表示的范围
    """
    z: int
    entries: List[TaylorEntry] = field(default_factory=list)
    constant: Optional[BigReal] = None
    truncated: bool = False

    def get(self, exponent: int) -> Optional[TaylorEntry]:
        for entry in self.entries:
            if entry.exponent == exponent:
                return entry
        return None

    @property
    def exponents(self) -> List[int]:
        return [entry.exponent for entry in self.entries]


@dataclass
class DigitReport:
    """
    两个阶数之间的稳定位数

    属性:
        orders: 比较的两个阶数 (N, N+4)
        coefficients: (下标, t_n 的稳定前缀)
        lambda_digits: lambda 的稳定前缀
        inverse_lambda_digits: 1/lambda 的稳定前缀
    """
    orders: Tuple[int, int]
    coefficients: List[Tuple[int, str]]
    lambda_digits: str
    inverse_lambda_digits: str

    def coefficient_digits(self, index: int) -> Optional[str]:
        for key, digits in self.coefficients:
            if key == index:
                return digits
        return None


def eval_g(series: FeigenbaumSeries, x: BigReal) -> BigReal:
    """g(x) = Σ' t_n T_n(x^d)"""
    ctx = series.precision.context()
    return cheb_sum_halved(series.t, ctx.mpf(x) ** series.d)


def g_derivative(series: FeigenbaumSeries, x: BigReal) -> BigReal:
    """
    g'(x) = d x^{d-1} Σ_{n>=2} t_n T_n'(x^d)
    """
    ctx = series.precision.context()
    x = ctx.mpf(x)
    inner = cheb_sum_halved(series.t, x ** series.d, derivative=True)
    return series.d * x ** (series.d - 1) * inner


def lambda_of(series: FeigenbaumSeries) -> BigReal:
    """
    由 g(1) = -lambda 得到 lambda = -Σ' t_n（T_n(1) = 1）
    """
    return -(series.t[0] / 2 + sum(series.t[1:], series.precision.context().zero))


def g0_defect(series: FeigenbaumSeries) -> BigReal:
    """
    g(0) - 1 = Σ' (-1)^{n/2} t_n - 1，解上为 0
    """
    ctx = series.precision.context()
    total = series.t[0] / 2
    for column in range(1, series.order_n):
        if column % 2:
            total -= series.t[column]
        else:
            total += series.t[column]
    return total - ctx.one


def taylor_from_cheb(series: FeigenbaumSeries, max_exponent: int) -> TaylorTable:
    """
    Chebyshev 系数换算为 Taylor 系数

    b_n = 2^m Σ'_{s>=m} t_s s/(s+m) (-1)^{(s-m)/2} C((s+m)/2, m)，m = n/d。
    只报告 z 的倍数处的系数；m 为奇数时系数恒为 0。整数因子精确计算，
    每项只有一次舍入。

    参数:
        series: Chebyshev 级数
        max_exponent: 最大指数，必须是 z 的倍数

    返回:
        TaylorTable: 各 b_n 与 g(0)；max_exponent 超过 2(N-1)d 时 truncated 为 True

    异常:
        DomainError: max_exponent 不是 z 的倍数
    """
    if max_exponent < 0 or max_exponent % series.z:
        raise DomainError(f"max_exponent 必须是 z={series.z} 的非负倍数，当前: {max_exponent}")

    ctx = series.precision.context()
    digits = series.precision.working_digits
    top_index = 2 * (series.order_n - 1)
    truncated = max_exponent > top_index * series.d
    if truncated:
        logger.warning(
            f"Taylor 换算被截断: max_exponent={max_exponent} 超过 "
            f"2(N-1)d={top_index * series.d}"
        )

    entries = []
    for exponent in range(series.z, max_exponent + 1, series.z):
        m = exponent // series.d
        total = ctx.zero
        for s in range(m, top_index + 1, 2):
            total += series.t[s // 2] * cheb_monomial_coefficient(s, m)
        entries.append(TaylorEntry(
            exponent=exponent,
            value=total,
            stable_digits=format_truncated(total, digits)
        ))

    return TaylorTable(
        z=series.z,
        entries=entries,
        constant=g0_defect(series) + 1,
        truncated=truncated
    )


def stable_taylor(table_a: TaylorTable, table_b: TaylorTable) -> TaylorTable:
    """
    两个阶数的 Taylor 表逐项取稳定前缀

    参数:
        table_a: 阶数 N 的表
        table_b: 阶数 N+4 的表

    返回:
        TaylorTable: 值取自 table_b，stable_digits 为共同前缀；
                     没有任何稳定位的指数被丢弃

    异常:
        DomainError: 两表的 z 不同
    """
    if table_a.z != table_b.z:
        raise DomainError(f"Taylor 表的 z 不一致: {table_a.z} != {table_b.z}")

    entries = []
    for entry_b in table_b.entries:
        entry_a = table_a.get(entry_b.exponent)
        if entry_a is None:
            continue
        prefix = common_prefix_digits(entry_a.value, entry_b.value)
        if not prefix:
            continue
        entries.append(TaylorEntry(entry_b.exponent, entry_b.value, prefix))

    return TaylorTable(
        z=table_b.z,
        entries=entries,
        constant=table_b.constant,
        truncated=table_a.truncated or table_b.truncated
    )


def pad_order(series: FeigenbaumSeries, new_n: int) -> FeigenbaumSeries:
    """补零系数把截断阶数扩大到 new_n，原有系数保持不变"""
    if new_n <= series.order_n:
        raise DomainError(f"new_n 必须大于当前阶数 {series.order_n}，当前: {new_n}")
    zero = series.precision.context().zero
    return series.with_coefficients(series.t + (zero,) * (new_n - series.order_n))


def digit_report(series_a: FeigenbaumSeries, series_b: FeigenbaumSeries) -> DigitReport:
    """
    比较阶数 N 与 N+4 的解，给出 t_n、lambda、1/lambda 的稳定前缀
    """
    if series_a.z != series_b.z:
        raise DomainError(f"级数的 z 不一致: {series_a.z} != {series_b.z}")

    coefficients = []
    for column in range(min(series_a.order_n, series_b.order_n)):
        prefix = common_prefix_digits(series_a.t[column], series_b.t[column])
        coefficients.append((2 * column, prefix))

    lambda_a, lambda_b = lambda_of(series_a), lambda_of(series_b)
    return DigitReport(
        orders=(series_a.order_n, series_b.order_n),
        coefficients=coefficients,
        lambda_digits=common_prefix_digits(lambda_a, lambda_b),
        inverse_lambda_digits=common_prefix_digits(1 / lambda_a, 1 / lambda_b)
    )


def functional_equation_defect(series: FeigenbaumSeries, samples: int = 100) -> BigReal:
    """
    在 [0,1] 上均匀取点，返回 max |lambda g(x) + g(g(lambda x))|

    用于检验收敛解在配置点之外是否也满足函数方程。
    """
    if samples < 2:
        raise DomainError(f"samples 至少为 2，当前: {samples}")
    ctx = series.precision.context()
    lam = lambda_of(series)
    worst = ctx.zero
    for i in range(samples):
        x = ctx.mpf(i) / (samples - 1)
        value = abs(lam * eval_g(series, x) + eval_g(series, eval_g(series, lam * x)))
        if value > worst:
            worst = value
    return worst


__all__ = [
    'FeigenbaumSeries',
    'TaylorEntry',
    'TaylorTable',
    'DigitReport',
    'eval_g',
    'g_derivative',
    'lambda_of',
    'g0_defect',
    'taylor_from_cheb',
    'stable_taylor',
    'pad_order',
    'digit_report',
    'functional_equation_defect',
]

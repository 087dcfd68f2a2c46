#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
参考数据

data/ 目录保存已发表的系数表（检查点格式的 .cheb 文件、
"<指数> <值>" 格式的 .taylor 文件）以及常数索引 constants.txt。
数据以十进制字符串保存，按调用方的精度解析。

compare 把计算结果与参考值逐项比较前导位数；self_check 不运行求解器，
只用参考数据自身检查三条求和关系，确认数据录入无误。
"""

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from feigenbaum_solver.core.bignum import (
    BigReal,
    Precision,
    cheb_monomial_coefficient,
    format_truncated,
    significant_digit_count,
)
from feigenbaum_solver.core.exceptions import (
    CheckpointFormatError,
    DomainError,
    ReferenceNotFoundError,
)
from feigenbaum_solver.core.series import (
    FeigenbaumSeries,
    TaylorTable,
    g0_defect,
    lambda_of,
    taylor_from_cheb,
)
from feigenbaum_solver.core.solver import SolveReport
from feigenbaum_solver.utils.logger import get_logger
# table_io 导入 core.series，这里只能按模块导入
from feigenbaum_solver.utils import table_io

logger = get_logger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / 'data'
CONSTANTS_FILE = 'constants.txt'

# self_check 的容差倍数
CHECK_SLACK = 100


@dataclass(frozen=True)
class ReferenceEntry:
    """
    一个 (z, branch) 的参考数据

    属性:
        z: 首项指数
        branch: principal 或 extra
        d: z/2
        feigenbaum_constant: 1/lambda（extra 分支带负号）
        t_table: (偶数下标, 十进制字符串)
        b_table: (z 的倍数, 十进制字符串)
    """
    z: int
    branch: str
    d: int
    feigenbaum_constant: str
    t_table: Tuple[Tuple[int, str], ...]
    b_table: Tuple[Tuple[int, str], ...]

    @property
    def key(self) -> Tuple[int, str]:
        return (self.z, self.branch)

    def t_value(self, index: int) -> Optional[str]:
        return dict(self.t_table).get(index)

    def b_value(self, exponent: int) -> Optional[str]:
        return dict(self.b_table).get(exponent)


class ReferenceLibrary:
    """
    参考数据目录的只读视图

    首次访问时读取 constants.txt，各条目的系数表按需加载并缓存。
    """

    def __init__(self, data_dir: Optional[Union[str, Path]] = None):
        self.data_dir = Path(data_dir) if data_dir else DATA_DIR
        self._constants: Optional[Dict[Tuple[int, str], Tuple[int, str]]] = None
        self._entries: Dict[Tuple[int, str], ReferenceEntry] = {}

    def _load_constants(self) -> Dict[Tuple[int, str], Tuple[int, str]]:
        if self._constants is not None:
            return self._constants

        path = self.data_dir / CONSTANTS_FILE
        constants: Dict[Tuple[int, str], Tuple[int, str]] = {}
        for number, raw in enumerate(path.read_text(encoding='utf-8').splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            parts = line.split()
            if len(parts) != 4:
                raise CheckpointFormatError(path, number, f"应为 '<z> <branch> <d> <F>'，实际: {line!r}")
            z, branch, d, value = parts
            constants[(int(z), branch)] = (int(d), value)

        self._constants = constants
        logger.debug(f"加载参考常数 {len(constants)} 条: {path}")
        return constants

    def available(self) -> List[Tuple[int, str]]:
        return sorted(self._load_constants())

    def lookup(self, z: int, branch: str = "principal") -> ReferenceEntry:
        """
        取出 (z, branch) 的参考数据

        异常:
            ReferenceNotFoundError: 没有该 (z, branch)
        """
        key = (z, branch)
        if key in self._entries:
            return self._entries[key]

        constants = self._load_constants()
        if key not in constants:
            raise ReferenceNotFoundError(
                f"没有 z={z} branch={branch} 的参考数据，可选: {self.available()}"
            )
        d, constant = constants[key]

        stem = f"z{z}_{branch}"
        cheb_path = self.data_dir / f"{stem}.cheb"
        header, t_rows = table_io.parse_checkpoint_text(cheb_path.read_text(encoding='utf-8'), cheb_path)
        if header['z'] != z or header['d'] != d:
            raise CheckpointFormatError(cheb_path, 1, f"头部 z/d 与常数索引不一致: {header}")

        taylor_path = self.data_dir / f"{stem}.taylor"
        b_rows = table_io.read_table(taylor_path)
        for exponent, _ in b_rows:
            if exponent <= 0 or exponent % z:
                raise CheckpointFormatError(taylor_path, 1, f"指数 {exponent} 不是 z={z} 的正整数倍")

        entry = ReferenceEntry(
            z=z,
            branch=branch,
            d=d,
            feigenbaum_constant=constant,
            t_table=tuple(t_rows),
            b_table=tuple(b_rows)
        )
        self._entries[key] = entry
        return entry


@lru_cache(maxsize=1)
def default_library() -> ReferenceLibrary:
    return ReferenceLibrary()


def lookup(z: int, branch: str = "principal") -> ReferenceEntry:
    return default_library().lookup(z, branch)


def available() -> List[Tuple[int, str]]:
    """支持的 (z, branch) 列表"""
    return default_library().available()


def reference_series(entry: ReferenceEntry, precision: Precision) -> FeigenbaumSeries:
    """把参考 t 表解析成给定精度下的级数"""
    return FeigenbaumSeries.from_coefficients(
        entry.z, [value for _, value in entry.t_table], precision
    )


# ==================== 比较 ====================

def matching_digits(computed: str, reference: str) -> int:
    """
    两个十进制字符串共同前导部分的有效数字个数

    符号不同或整数部分长度不同时返回 0。参考值是计算值的前缀时，
    返回参考值的全部有效位数。
    """
    a = computed.strip().replace('−', '-')
    b = reference.strip().replace('−', '-')
    if a.startswith('-') != b.startswith('-'):
        return 0
    a, b = a.lstrip('+-'), b.lstrip('+-')
    if _integer_length(a) != _integer_length(b):
        return 0
    length = 0
    for ch_a, ch_b in zip(a, b):
        if ch_a != ch_b:
            break
        length += 1
    return significant_digit_count(a[:length])


def _integer_length(text: str) -> int:
    point = text.find('.')
    return len(text) if point < 0 else point


@dataclass
class CoefficientMatch:
    """
    单个量的比较结果

    属性:
        kind: "F"（常数）、"t" 或 "b"
        key: 下标或指数，常数为 None
        computed: 计算得到的稳定位
        reference: 参考值
        matched: 共同的有效位数
    """
    kind: str
    key: Optional[int]
    computed: str
    reference: str
    matched: int

    @property
    def reference_digits(self) -> int:
        return significant_digit_count(self.reference)

    @property
    def sign_mismatch(self) -> bool:
        return self.computed.strip().startswith('-') != self.reference.strip().startswith('-')

    @property
    def label(self) -> str:
        return "F" if self.key is None else f"{self.kind}_{self.key}"


@dataclass
class ComparisonReport:
    """compare 的结果"""
    z: int
    branch: str
    matches: List[CoefficientMatch] = field(default_factory=list)

    @property
    def minimum(self) -> Optional[int]:
        return min((m.matched for m in self.matches), default=None)

    @property
    def worst(self) -> Optional[CoefficientMatch]:
        return min(self.matches, key=lambda m: m.matched, default=None)

    @property
    def sign_mismatches(self) -> List[CoefficientMatch]:
        return [m for m in self.matches if m.sign_mismatch]

    def get(self, kind: str, key: Optional[int] = None) -> Optional[CoefficientMatch]:
        for match in self.matches:
            if match.kind == kind and match.key == key:
                return match
        return None


def _computed_strings(
    computed: Union[SolveReport, FeigenbaumSeries, TaylorTable],
    entry: ReferenceEntry
) -> Tuple[Optional[str], List[Tuple[int, str]], List[Tuple[int, str]]]:
    """取出 (常数, t 表, b 表) 的计算值字符串"""
    if isinstance(computed, SolveReport):
        t_rows = [(index, digits) for index, digits in computed.digits.coefficients if digits]
        b_rows = [(e.exponent, e.stable_digits) for e in computed.taylor.entries]
        return computed.feigenbaum_constant, t_rows, b_rows

    if isinstance(computed, FeigenbaumSeries):
        digits = computed.precision.working_digits
        t_rows = [(i, format_truncated(v, digits)) for i, v in zip(computed.indices, computed.t)]
        limit = (computed.order_n - 1) * computed.z
        max_exponent = max([e for e, _ in entry.b_table if e <= limit] + [0])
        table = taylor_from_cheb(computed, max_exponent)
        b_rows = [(e.exponent, e.stable_digits) for e in table.entries]
        constant = format_truncated(1 / lambda_of(computed), digits)
        return constant, t_rows, b_rows

    if isinstance(computed, TaylorTable):
        return None, [], [(e.exponent, e.stable_digits) for e in computed.entries]

    raise DomainError(f"无法比较的类型: {type(computed).__name__}")


def compare(
    computed: Union[SolveReport, FeigenbaumSeries, TaylorTable],
    entry: ReferenceEntry
) -> ComparisonReport:
    """
    逐项比较计算结果与参考数据

    参数:
        computed: SolveReport（比较稳定位）、FeigenbaumSeries（按工作精度打印）
                  或 TaylorTable（只比较 b_n）
        entry: 参考数据

    返回:
        ComparisonReport: 每个共同的量一条记录，含共同有效位数

    异常:
        DomainError: z 不一致
    """
    z = computed.spec.z if isinstance(computed, SolveReport) else computed.z
    if z != entry.z:
        raise DomainError(f"计算结果的 z={z} 与参考数据 z={entry.z} 不一致")

    constant, t_rows, b_rows = _computed_strings(computed, entry)
    report = ComparisonReport(z=entry.z, branch=entry.branch)

    if constant:
        report.matches.append(CoefficientMatch(
            "F", None, constant, entry.feigenbaum_constant,
            matching_digits(constant, entry.feigenbaum_constant)
        ))

    for kind, rows, reference in (("t", t_rows, entry.t_table), ("b", b_rows, entry.b_table)):
        computed_map = dict(rows)
        for key, ref_value in reference:
            value = computed_map.get(key)
            if value is None:
                continue
            report.matches.append(CoefficientMatch(
                kind, key, value, ref_value, matching_digits(value, ref_value)
            ))

    return report


# ==================== 数据自检 ====================

@dataclass
class SelfCheckReport:
    """
    参考数据自洽检查的结果

    属性:
        constant_ok: -Σ' t_n 取倒数与常数一致
        normalization_ok: Σ' (-1)^{n/2} t_n = 1
        taylor_ok: 由 t 表换算出的 b_n 与 b 表一致
        failures: 失败项的描述
    """
    z: int
    branch: str
    constant_ok: bool = True
    normalization_ok: bool = True
    taylor_ok: bool = True
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.constant_ok and self.normalization_ok and self.taylor_ok


def _ulp(text: str, precision: Precision) -> BigReal:
    """十进制字符串最后一位的单位"""
    point = text.find('.')
    fraction = 0 if point < 0 else len(text) - point - 1
    return precision.context().mpf(10) ** (-fraction)


def self_check(entry: ReferenceEntry, precision: Optional[Precision] = None) -> SelfCheckReport:
    """
    不运行求解器，检查参考数据的三条关系

    1. -(t_0/2 + t_2 + ...) 的倒数与常数一致
    2. t_0/2 - t_2 + t_4 - ... = 1
    3. 由 t 表换算的 b_n 与 b 表一致

    容差为 100 倍的 max(参考值末位单位, t 表末位误差的传播)。

    参数:
        entry: 参考数据
        precision: 计算精度，默认比表中最长的数多 20 位
    """
    if precision is None:
        longest = max(len(value) for _, value in entry.t_table)
        precision = Precision.from_working_digits(longest + 20)
    ctx = precision.context()
    series = reference_series(entry, precision)
    t_ulps = [_ulp(value, precision) for _, value in entry.t_table]
    # 表外系数按最后一个系数的量级估计
    tail = abs(series.t[-1]) + t_ulps[-1]
    sum_ulp = t_ulps[0] / 2 + sum(t_ulps[1:], ctx.zero) + 2 * tail

    report = SelfCheckReport(z=entry.z, branch=entry.branch)

    # 1. 常数
    inverse_lambda = 1 / lambda_of(series)
    reference = precision.real(entry.feigenbaum_constant)
    allowed = CHECK_SLACK * max(_ulp(entry.feigenbaum_constant, precision), inverse_lambda ** 2 * sum_ulp)
    error = abs(inverse_lambda - reference)
    if error > allowed:
        report.constant_ok = False
        report.failures.append(
            f"F: 由 t 表得到 {format_truncated(inverse_lambda, 30)}，"
            f"参考值 {entry.feigenbaum_constant}"
        )

    # 2. g(0) = 1
    defect = abs(g0_defect(series))
    if defect > CHECK_SLACK * sum_ulp:
        report.normalization_ok = False
        report.failures.append(f"g(0)-1 = {format_truncated(defect, 5)}")

    # 3. Taylor 表
    top_index = 2 * (series.order_n - 1)
    limit = top_index * series.d
    exponents = [e for e, _ in entry.b_table if e <= limit]
    if exponents:
        table = taylor_from_cheb(series, max(exponents))
        for exponent, ref_value in entry.b_table:
            if exponent > limit:
                continue
            m = exponent // series.d
            propagated = sum(
                (t_ulps[s // 2] * abs(cheb_monomial_coefficient(s, m)) for s in range(m, top_index + 1, 2)),
                ctx.zero
            )
            propagated += sum(
                (tail * abs(cheb_monomial_coefficient(s, m)) for s in (top_index + 2, top_index + 4)),
                ctx.zero
            )
            allowed = CHECK_SLACK * max(_ulp(ref_value, precision), propagated)
            computed = table.get(exponent).value
            if abs(computed - precision.real(ref_value)) > allowed:
                report.taylor_ok = False
                report.failures.append(
                    f"b_{exponent}: 由 t 表得到 {format_truncated(computed, 25)}，参考值 {ref_value}"
                )

    if report.failures:
        logger.warning(f"参考数据自检失败 z={entry.z} {entry.branch}: {report.failures}")
    return report


__all__ = [
    'ReferenceEntry',
    'ReferenceLibrary',
    'CoefficientMatch',
    'ComparisonReport',
    'SelfCheckReport',
    'lookup',
    'available',
    'reference_series',
    'matching_digits',
    'compare',
    'self_check',
]

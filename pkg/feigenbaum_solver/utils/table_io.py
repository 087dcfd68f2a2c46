#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结果文件格式

- 检查点: 首行 "z=<z> d=<d> N=<N> digits=<p>"，之后每行 "<下标> <十进制值>"
- Taylor 表: 每行 "<指数> <稳定位>"
- 采样数据: 每行 "x g(x)"
- 常数文件: 一行 "F = <1/lambda 稳定位>"

wrapped 模式按每行最多 90 列折行，续行以 7 个空格缩进；读取时自动拼接。
"""

import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from feigenbaum_solver.core.bignum import Precision, format_truncated
from feigenbaum_solver.core.exceptions import CheckpointFormatError, DomainError
from feigenbaum_solver.core.series import (
    DigitReport,
    FeigenbaumSeries,
    TaylorTable,
    eval_g,
)

PathLike = Union[str, Path]

FORMAT_PLAIN = "plain"
FORMAT_WRAPPED = "wrapped"
WRAP_WIDTH = 90
CONTINUATION_INDENT = " " * 7

_HEADER_PATTERN = re.compile(r'^z=(\d+)\s+d=(\d+)\s+N=(\d+)\s+digits=(\d+)$')
_VALUE_PATTERN = re.compile(r'^[+-]?(\d+\.?\d*|\.\d+)$')


def wrap_line(key: Union[int, str], value: str) -> List[str]:
    """
    按 90 列折行输出一个 "键 值" 对

    每个物理行（含键和续行缩进）都不超过 90 列。
    正数前补一个空格，使符号位对齐。续行以 7 个空格开头。
    """
    text = value if value.startswith('-') else ' ' + value
    head = f"{key:>3} "
    first_width = WRAP_WIDTH - len(head)
    rest_width = WRAP_WIDTH - len(CONTINUATION_INDENT)
    lines = [head + text[:first_width]]
    lines.extend(
        CONTINUATION_INDENT + text[i:i + rest_width]
        for i in range(first_width, len(text), rest_width)
    )
    return lines


def _format_rows(rows: Iterable[Tuple[int, str]], fmt: str) -> List[str]:
    if fmt not in (FORMAT_PLAIN, FORMAT_WRAPPED):
        raise DomainError(f"不支持的输出格式: {fmt}")
    lines: List[str] = []
    for key, value in rows:
        if fmt == FORMAT_WRAPPED:
            lines.extend(wrap_line(key, value))
        else:
            lines.append(f"{key} {value}")
    return lines


def _logical_lines(text: str) -> List[Tuple[int, str]]:
    """
    拼接续行，返回 (起始行号, 内容)；跳过空行和 # 注释
    """
    merged: List[Tuple[int, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith('#'):
            continue
        if raw.startswith(CONTINUATION_INDENT) and merged:
            start, content = merged[-1]
            merged[-1] = (start, content + raw.strip())
            continue
        merged.append((number, raw.strip()))
    return merged


def _split_pair(path: PathLike, number: int, line: str) -> Tuple[int, str]:
    parts = line.split()
    if len(parts) != 2:
        raise CheckpointFormatError(path, number, f"应为 '<整数> <十进制值>'，实际: {line!r}")
    key, value = parts
    value = value.replace('−', '-')
    try:
        key_int = int(key)
    except ValueError:
        raise CheckpointFormatError(path, number, f"非法的下标: {key!r}")
    if not _VALUE_PATTERN.match(value):
        raise CheckpointFormatError(path, number, f"非法的十进制值: {value!r}")
    return key_int, value


# ==================== 检查点 ====================

def format_checkpoint(series: FeigenbaumSeries, fmt: str = FORMAT_PLAIN) -> str:
    """
    把级数序列化为检查点文本

    系数按工作精度正确舍入后打印，读回后再次写出得到相同的文本。
    """
    digits = series.precision.working_digits
    header = f"z={series.z} d={series.d} N={series.order_n} digits={digits}"
    rows = [(index, format_truncated(value, digits)) for index, value in zip(series.indices, series.t)]
    return "\n".join([header] + _format_rows(rows, fmt)) + "\n"


def parse_checkpoint_text(
    text: str,
    path: PathLike = "<string>"
) -> Tuple[Dict[str, int], List[Tuple[int, str]]]:
    """
    解析检查点文本，返回头部字段和 (下标, 十进制字符串) 列表

    异常:
        CheckpointFormatError: 头部缺失、行格式错误、下标不连续或数量与 N 不符
    """
    lines = _logical_lines(text)
    if not lines:
        raise CheckpointFormatError(path, 1, "文件为空")

    header_number, header_line = lines[0]
    match = _HEADER_PATTERN.match(header_line)
    if not match:
        raise CheckpointFormatError(
            path, header_number, f"头部应为 'z=<z> d=<d> N=<N> digits=<p>'，实际: {header_line!r}"
        )
    z, d, order_n, digits = (int(group) for group in match.groups())
    if z < 2 or z % 2 or d * 2 != z:
        raise CheckpointFormatError(path, header_number, f"z={z} 与 d={d} 不一致")

    rows: List[Tuple[int, str]] = []
    for number, line in lines[1:]:
        index, value = _split_pair(path, number, line)
        expected = 2 * len(rows)
        if index != expected:
            raise CheckpointFormatError(path, number, f"下标应为 {expected}，实际: {index}")
        rows.append((index, value))

    if len(rows) != order_n:
        last_number = lines[-1][0]
        raise CheckpointFormatError(path, last_number, f"头部声明 N={order_n}，实际 {len(rows)} 个系数")

    header = {'z': z, 'd': d, 'N': order_n, 'digits': digits}
    return header, rows


def read_checkpoint(path: PathLike, precision: Optional[Precision] = None) -> FeigenbaumSeries:
    """
    读取检查点文件

    参数:
        path: 文件路径
        precision: 解析精度，默认由头部 digits 推出

    返回:
        FeigenbaumSeries: 检查点中的级数

    异常:
        OSError: 文件无法读取
        CheckpointFormatError: 文件格式错误
    """
    text = Path(path).read_text(encoding='utf-8')
    header, rows = parse_checkpoint_text(text, path)
    if precision is None:
        precision = Precision.from_working_digits(header['digits'])
    return FeigenbaumSeries.from_coefficients(header['z'], [value for _, value in rows], precision)


def write_checkpoint(series: FeigenbaumSeries, path: PathLike, fmt: str = FORMAT_PLAIN) -> Path:
    return write_text(path, format_checkpoint(series, fmt))


# ==================== 系数表 ====================

def format_t_table(report: DigitReport, fmt: str = FORMAT_PLAIN) -> str:
    """t_n 的稳定位表，没有稳定位的系数不输出"""
    rows = [(index, digits) for index, digits in report.coefficients if digits]
    return "\n".join(_format_rows(rows, fmt)) + ("\n" if rows else "")


def format_taylor_table(table: TaylorTable, fmt: str = FORMAT_PLAIN) -> str:
    """b_n 表，每行 "<指数> <稳定位>"；值为 0 的系数不输出"""
    rows = [
        (entry.exponent, entry.stable_digits)
        for entry in table.entries
        if entry.value and entry.stable_digits and entry.stable_digits != "0"
    ]
    return "\n".join(_format_rows(rows, fmt)) + ("\n" if rows else "")


def parse_table_text(text: str, path: PathLike = "<string>") -> List[Tuple[int, str]]:
    """解析 "<整数> <十进制值>" 行，支持 wrapped 续行"""
    return [_split_pair(path, number, line) for number, line in _logical_lines(text)]


def read_table(path: PathLike) -> List[Tuple[int, str]]:
    return parse_table_text(Path(path).read_text(encoding='utf-8'), path)


def format_constant(constant: str) -> str:
    return f"F = {constant}\n"


# ==================== 采样数据 ====================

def _short_decimal(value, digits: int = 20) -> str:
    ctx = value.context
    text = ctx.nstr(value, digits)
    if text.endswith('.0'):
        text = text[:-2]
    return text


def format_samples(series: FeigenbaumSeries, count: int) -> str:
    """
    在 [0,1] 上均匀取 count 个点，输出 "x g(x)" 行

    异常:
        DomainError: count < 2
    """
    if count < 2:
        raise DomainError(f"采样点数至少为 2，当前: {count}")
    ctx = series.precision.context()
    lines = []
    for i in range(count):
        x = ctx.mpf(i) / (count - 1)
        lines.append(f"{_short_decimal(x)} {_short_decimal(eval_g(series, x))}")
    return "\n".join(lines) + "\n"


def write_text(path: PathLike, text: str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding='utf-8')
    return target


__all__ = [
    'FORMAT_PLAIN',
    'FORMAT_WRAPPED',
    'WRAP_WIDTH',
    'wrap_line',
    'format_checkpoint',
    'parse_checkpoint_text',
    'read_checkpoint',
    'write_checkpoint',
    'format_t_table',
    'format_taylor_table',
    'parse_table_text',
    'read_table',
    'format_constant',
    'format_samples',
    'write_text',
]

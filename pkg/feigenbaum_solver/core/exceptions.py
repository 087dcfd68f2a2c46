#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义模块

求解器各层抛出的异常类型。CLI 根据异常类型映射退出码。
"""

from typing import Any, Dict, List, Optional, Sequence


class FeigenbaumError(Exception):
    """所有求解相关异常的基类"""


class DomainError(FeigenbaumError, ValueError):
    """参数不满足前置条件（奇数 z、维度不匹配、b > a 等）"""


class SingularSystemError(FeigenbaumError):
    """
    线性方程组在工作精度下奇异

    属性:
        column: 主元过小的列号
        pivot: 该列找到的最大主元
    """

    def __init__(self, column: int, pivot: Any = None):
        self.column = column
        self.pivot = pivot
        super().__init__(f"线性方程组奇异: 第 {column} 列主元过小 ({pivot})")


class ConvergenceError(FeigenbaumError):
    """
    Newton 迭代未收敛

    属性:
        series: 最后一次迭代的级数
        history: 每轮迭代的范数记录
    """

    def __init__(
        self,
        message: str,
        series: Any = None,
        history: Optional[List[Dict[str, Any]]] = None
    ):
        self.series = series
        self.history = history or []
        super().__init__(message)


class DivergenceError(ConvergenceError):
    """残差范数连续增长，迭代被中止"""


class StagnationError(FeigenbaumError):
    """
    阶数连续增大但稳定位数不再增加

    属性:
        orders: 已计算的截断阶数
        digit_counts: 每次增阶后 1/lambda 的稳定位数
    """

    def __init__(self, orders: Sequence[int], digit_counts: Sequence[int]):
        self.orders = list(orders)
        self.digit_counts = list(digit_counts)
        super().__init__(
            f"稳定位数停滞 (阶数 {self.orders[-4:]}, 稳定位数 {self.digit_counts[-4:]})，"
            f"请提高工作精度 (--digits 或 FEIGENBAUM_GUARD_DIGITS)"
        )


class ReferenceNotFoundError(FeigenbaumError, KeyError):
    """参考数据中没有对应的 (z, branch)"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "参考数据不存在"


class CheckpointFormatError(FeigenbaumError):
    """
    检查点文件解析失败

    属性:
        path: 文件路径
        line_number: 出错行号（从 1 开始）
    """

    def __init__(self, path: Any, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"{path}:{line_number}: {reason}")


__all__ = [
    'FeigenbaumError',
    'DomainError',
    'SingularSystemError',
    'ConvergenceError',
    'DivergenceError',
    'StagnationError',
    'ReferenceNotFoundError',
    'CheckpointFormatError',
]

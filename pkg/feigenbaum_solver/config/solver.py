#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
求解器配置模块
提供精度、阶数延拓和日志的默认配置
"""

import os
from typing import Dict, Optional
from dataclasses import dataclass
from dotenv import load_dotenv

from feigenbaum_solver.core.bignum import Precision

load_dotenv()


@dataclass
class SolverConfig:
    """
    求解器配置类

    属性:
        target_digits: 要求的稳定位数
        guard_digits: 保护位数
        initial_order: 初始截断阶数 N
        max_order: 最大截断阶数
        order_step: 每次增加的阶数
        max_iterations: 每一阶的最大 Newton 迭代次数
        divergence_window: 残差连续增长多少次视为发散
        stagnation_limit: 稳定位数连续多少次不增长视为停滞
        log_level: 日志级别
        log_file: 日志文件路径

    示例:
        >>> config = SolverConfig.from_env()
        >>> print(config.target_digits)
        30
    """
    target_digits: int = 30
    guard_digits: int = 20
    initial_order: int = 12
    max_order: int = 200
    order_step: int = 4
    max_iterations: int = 50
    divergence_window: int = 5
    stagnation_limit: int = 3
    log_level: str = "INFO"
    log_file: Optional[str] = "logs/feigenbaum.log"

    @classmethod
    def from_env(cls) -> 'SolverConfig':
        """
        从环境变量创建求解器配置

        可选的环境变量:
            - FEIGENBAUM_DIGITS: 稳定位数（默认: 30）
            - FEIGENBAUM_GUARD_DIGITS: 保护位数（默认: 20）
            - FEIGENBAUM_INITIAL_ORDER: 初始阶数（默认: 12）
            - FEIGENBAUM_MAX_ORDER: 最大阶数（默认: 200）
            - FEIGENBAUM_ORDER_STEP: 每次增加的阶数（默认: 4）
            - FEIGENBAUM_MAX_ITERATIONS: Newton 最大迭代次数（默认: 50）
            - LOG_LEVEL: 日志级别（默认: INFO）
            - LOG_FILE: 日志文件（默认: logs/feigenbaum.log，空字符串表示不写文件）

        返回:
            SolverConfig: 求解器配置对象

        异常:
            ValueError: 数值型环境变量无法解析时抛出
        """
        try:
            return cls(
                target_digits=int(os.getenv('FEIGENBAUM_DIGITS', '30')),
                guard_digits=int(os.getenv('FEIGENBAUM_GUARD_DIGITS', '20')),
                initial_order=int(os.getenv('FEIGENBAUM_INITIAL_ORDER', '12')),
                max_order=int(os.getenv('FEIGENBAUM_MAX_ORDER', '200')),
                order_step=int(os.getenv('FEIGENBAUM_ORDER_STEP', '4')),
                max_iterations=int(os.getenv('FEIGENBAUM_MAX_ITERATIONS', '50')),
                log_level=os.getenv('LOG_LEVEL', 'INFO'),
                log_file=os.getenv('LOG_FILE', 'logs/feigenbaum.log') or None
            )
        except ValueError as e:
            raise ValueError(f"求解器环境变量格式错误: {e}")

    @classmethod
    def from_dict(cls, config_dict: Dict) -> 'SolverConfig':
        """
        从字典创建求解器配置，缺失的键取默认值

        示例:
            >>> config = SolverConfig.from_dict({'target_digits': 40, 'max_order': 120})
        """
        defaults = cls()
        return cls(**{
            name: config_dict.get(name, getattr(defaults, name))
            for name in defaults.to_dict()
        })

    def to_dict(self) -> Dict:
        return {
            'target_digits': self.target_digits,
            'guard_digits': self.guard_digits,
            'initial_order': self.initial_order,
            'max_order': self.max_order,
            'order_step': self.order_step,
            'max_iterations': self.max_iterations,
            'divergence_window': self.divergence_window,
            'stagnation_limit': self.stagnation_limit,
            'log_level': self.log_level,
            'log_file': self.log_file,
        }

    def validate(self) -> bool:
        """
        验证配置的有效性

        返回:
            bool: 配置是否有效
        """
        if self.target_digits < 10 or self.guard_digits < 10:
            return False

        if self.initial_order < 8 or self.max_order < self.initial_order + self.order_step:
            return False

        if self.order_step < 1 or self.max_iterations < 1:
            return False

        if self.divergence_window < 1 or self.stagnation_limit < 1:
            return False

        if self.log_level.upper() not in ('TRACE', 'DEBUG', 'INFO', 'SUCCESS', 'WARNING', 'ERROR', 'CRITICAL'):
            return False

        return True

    def precision(self) -> Precision:
        return Precision(target_digits=self.target_digits, guard_digits=self.guard_digits)

    def __repr__(self) -> str:
        return (
            f"SolverConfig(target_digits={self.target_digits}, guard_digits={self.guard_digits}, "
            f"orders={self.initial_order}..{self.max_order} step {self.order_step}, "
            f"max_iterations={self.max_iterations}, log_level='{self.log_level}')"
        )


def get_solver_config(
    config_dict: Optional[Dict] = None
) -> SolverConfig:
    """
    获取求解器配置（便捷函数）

    参数:
        config_dict: 可选的配置字典。如果提供，使用字典创建配置；
                     否则从环境变量加载

    返回:
        SolverConfig: 求解器配置对象

    异常:
        ValueError: 当配置无效时抛出
    """
    if config_dict:
        config = SolverConfig.from_dict(config_dict)
    else:
        config = SolverConfig.from_env()

    if not config.validate():
        raise ValueError(f"求解器配置无效: {config!r}")

    return config


__all__ = [
    'SolverConfig',
    'get_solver_config'
]

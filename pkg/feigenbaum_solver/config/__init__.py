"""
配置模块
包含求解器配置和命令行运行配置

快速开始:
    >>> from feigenbaum_solver.config import get_solver_config
    >>>
    >>> # 从环境变量加载配置
    >>> config = get_solver_config()
    >>> precision = config.precision()
"""

from .solver import (
    SolverConfig,
    get_solver_config
)

from .run import (
    RunConfig,
    SUPPORTED_Z,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_SOLVER,
    EXIT_MISMATCH,
    EXIT_IO
)

__all__ = [
    # 求解器配置
    'SolverConfig',
    'get_solver_config',

    # 运行配置
    'RunConfig',
    'SUPPORTED_Z',
    'EXIT_OK',
    'EXIT_USAGE',
    'EXIT_SOLVER',
    'EXIT_MISMATCH',
    'EXIT_IO',
]

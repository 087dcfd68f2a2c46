"""
核心模块

包含求解器的核心组件:
1. bignum - 多精度数值内核（Chebyshev 多项式、级数求和、稳定位比较）
2. series - 偶数 Chebyshev 级数、求和规则、Taylor 系数换算
3. solver - 配置法残差、解析 Jacobian、Newton 迭代与阶数延拓
4. refdata - 参考数据与比较
5. exceptions - 异常类型

快速开始:
    >>> from feigenbaum_solver.core import BranchSpec, Precision, solve_with_continuation
    >>>
    >>> spec = BranchSpec.create(z=2)
    >>> report = solve_with_continuation(spec, Precision(target_digits=30))
    >>> print(report.feigenbaum_constant)
"""

from .exceptions import (
    FeigenbaumError,
    DomainError,
    SingularSystemError,
    ConvergenceError,
    DivergenceError,
    StagnationError,
    ReferenceNotFoundError,
    CheckpointFormatError,
)
from .bignum import Precision, format_truncated, common_prefix_digits
from .series import (
    FeigenbaumSeries,
    TaylorTable,
    DigitReport,
    eval_g,
    lambda_of,
    g0_defect,
    taylor_from_cheb,
    stable_taylor,
    pad_order,
)
from .solver import (
    BranchSpec,
    CollocationGrid,
    NewtonSystem,
    SolveReport,
    make_grid,
    newton_solve,
    seed_series,
    solve_with_continuation,
)
from .refdata import ReferenceEntry, lookup, available, compare, self_check

__all__ = [
    'FeigenbaumError',
    'DomainError',
    'SingularSystemError',
    'ConvergenceError',
    'DivergenceError',
    'StagnationError',
    'ReferenceNotFoundError',
    'CheckpointFormatError',
    'Precision',
    'format_truncated',
    'common_prefix_digits',
    'FeigenbaumSeries',
    'TaylorTable',
    'DigitReport',
    'eval_g',
    'lambda_of',
    'g0_defect',
    'taylor_from_cheb',
    'stable_taylor',
    'pad_order',
    'BranchSpec',
    'CollocationGrid',
    'NewtonSystem',
    'SolveReport',
    'make_grid',
    'newton_solve',
    'seed_series',
    'solve_with_continuation',
    'ReferenceEntry',
    'lookup',
    'available',
    'compare',
    'self_check',
]

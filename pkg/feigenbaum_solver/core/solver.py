#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Chebyshev 配置法 Newton 求解器

流程:
1. make_grid 生成 N-1 个配置点
2. assemble 在每个配置点写入残差和解析 Jacobian 行，第 0 行为 g(0)=1 约束
3. linear_solve 用部分主元 Gauss 消元求修正量
4. newton_solve 迭代直到残差、约束偏差和步长都低于容差
5. solve_with_continuation 逐步把 N 增加 4，比较相邻阶数的稳定位数

lambda 不作为未知量，每次求值都由 lambda = -Σ' t_n 重新计算。
"""

import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from feigenbaum_solver.core.bignum import (
    BigReal,
    Precision,
    cheb_sum_halved,
    cheb_t_values,
    format_truncated,
    significant_digit_count,
)
from feigenbaum_solver.core.exceptions import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    SingularSystemError,
    StagnationError,
)
from feigenbaum_solver.core.series import (
    DigitReport,
    FeigenbaumSeries,
    TaylorTable,
    digit_report,
    eval_g,
    g0_defect,
    g_derivative,
    lambda_of,
    pad_order,
    stable_taylor,
    taylor_from_cheb,
)
from feigenbaum_solver.utils.logger import (
    get_logger,
    log_newton_iteration,
    log_order_result,
    log_performance,
)

logger = get_logger(__name__)

BRANCH_PRINCIPAL = "principal"
BRANCH_EXTRA = "extra"

# z=2 主分支的 Taylor 首项 b_2（截取 6 位有效数字）
PRINCIPAL_LEADING_TAYLOR: Dict[int, str] = {
    2: "-1.52763",
}

# z >= 4 主分支的前 6 个 Chebyshev 系数（截取 6 位有效数字）
# 1 + b_z x^z 在这些 z 上离解太远，例如 z=14 时 t_0 = 0.275，而解为 0.0210
PRINCIPAL_CHEBYSHEV: Dict[int, Tuple[Tuple[int, str], ...]] = {
    4: ((0, "0.325981"), (2, "-0.800208"), (4, "0.0418898"),
        (6, "0.00438949"), (8, "-0.000690103"), (10, "0.0000144814")),
    6: ((0, "0.210213"), (2, "-0.850616"), (4, "0.0562816"),
        (6, "0.00993505"), (8, "-0.00208555"), (10, "0.0000266728")),
    8: ((0, "0.138128"), (2, "-0.884230"), (4, "0.0665209"),
        (6, "0.0160708"), (8, "-0.00389079"), (10, "-0.00000975519")),
    10: ((0, "0.0878449"), (2, "-0.909301"), (4, "0.0745880"),
         (6, "0.0223065"), (8, "-0.00591629"), (10, "-0.000116667")),
    12: ((0, "0.0503152"), (2, "-0.929202"), (4, "0.0813215"),
         (6, "0.0284367"), (8, "-0.00805828"), (10, "-0.000297824")),
    14: ((0, "0.0210003"), (2, "-0.945643"), (4, "0.0871460"),
         (6, "0.0343732"), (8, "-0.0102571"), (10, "-0.000548744")),
}

# z=2 第二个解（g(1) > 0）的前 6 个 Chebyshev 系数（截取 6 位有效数字）
EXTRA_Z2_CHEBYSHEV: Tuple[Tuple[int, str], ...] = (
    (0, "0.695239"),
    (2, "-0.294192"),
    (4, "0.330280"),
    (6, "-0.0315368"),
    (8, "-0.00287148"),
    (10, "0.000736990"),
)

MIN_GRID_ORDER = 4
MIN_INITIAL_ORDER = 8
MAX_DAMPING_HALVINGS = 8


# ==================== 数据类型 ====================

@dataclass(frozen=True)
class CollocationGrid:
    """
    配置点 x_j = cos(jπ/(2N))^{1/d}，j = 1..N-1，严格递减且都在 (0,1) 内
    """
    order_n: int
    d: int
    abscissae: Tuple[BigReal, ...]


@dataclass
class NewtonSystem:
    """
    加边的 Newton 线性方程组

    属性:
        matrix: N×N 矩阵，第 0 行为约束行 (1/2, -1, 1, -1, ...)
        rhs: 右端项，第 0 个为 1 - Σ'(-1)^{n/2} t_n，其余为 -f(x_j)
        precision: 精度约定
        residual_norm: 组装时的 max_j |f(x_j)|
        defect: 组装时的 g(0) - 1
        residual_check: linear_solve 后 ||AΔt - rhs|| 是否在容差内
    """
    matrix: List[List[BigReal]]
    rhs: List[BigReal]
    precision: Precision
    residual_norm: Optional[BigReal] = None
    defect: Optional[BigReal] = None
    residual_check: Optional[bool] = None
    solve_residual: Optional[BigReal] = None

    def __post_init__(self):
        size = len(self.rhs)
        if len(self.matrix) != size or any(len(row) != size for row in self.matrix):
            raise DomainError(f"方程组维度不匹配: 矩阵 {len(self.matrix)} 行, 右端 {size} 项")
        ctx = self.precision.context()
        self.matrix = [[ctx.mpf(value) for value in row] for row in self.matrix]
        self.rhs = [ctx.mpf(value) for value in self.rhs]

    @property
    def size(self) -> int:
        return len(self.rhs)


@dataclass(frozen=True)
class BranchSpec:
    """
    解的分支

    属性:
        z: 首项指数
        branch: principal 或 extra（extra 只存在于 z=2）
        seed: 初值来源，(下标, 十进制字符串)
        seed_kind: "taylor" 表示 seed 为 Taylor 首项 b_z（z=2 主分支）；
                   "chebyshev" 表示 seed 直接是 Chebyshev 系数
    """
    z: int
    branch: str
    seed: Tuple[Tuple[int, str], ...]
    seed_kind: str

    @classmethod
    def create(cls, z: int, branch: str = BRANCH_PRINCIPAL) -> 'BranchSpec':
        """
        按 (z, branch) 建立分支描述

        异常:
            DomainError: z 为奇数或 < 2，分支未知，或没有该 z 的初值
        """
        if z < 2 or z % 2:
            raise DomainError(f"z 必须是 >= 2 的偶数，当前: {z}")
        if branch == BRANCH_EXTRA:
            if z != 2:
                raise DomainError(f"extra 分支只存在于 z=2，当前: z={z}")
            return cls(z=z, branch=branch, seed=EXTRA_Z2_CHEBYSHEV, seed_kind="chebyshev")
        if branch == BRANCH_PRINCIPAL:
            if z in PRINCIPAL_CHEBYSHEV:
                return cls(z=z, branch=branch, seed=PRINCIPAL_CHEBYSHEV[z], seed_kind="chebyshev")
            if z not in PRINCIPAL_LEADING_TAYLOR:
                supported = sorted(set(PRINCIPAL_LEADING_TAYLOR) | set(PRINCIPAL_CHEBYSHEV))
                raise DomainError(f"没有 z={z} 的初值，支持的 z: {supported}")
            return cls(z=z, branch=branch, seed=((z, PRINCIPAL_LEADING_TAYLOR[z]),), seed_kind="taylor")
        raise DomainError(f"未知的分支: {branch!r}（可选 principal / extra）")

    @property
    def label(self) -> str:
        return f"z={self.z} branch={self.branch}"


@dataclass
class NewtonOutcome:
    """一次 Newton 求解的结果"""
    series: FeigenbaumSeries
    iterations: int
    history: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def residual_norm(self) -> Optional[BigReal]:
        return self.history[-1]['residual_norm'] if self.history else None


@dataclass
class OrderSnapshot:
    """某一截断阶数的收敛解"""
    order_n: int
    series: FeigenbaumSeries
    lambda_value: BigReal
    iterations: int
    residual_norm: Optional[BigReal]
    inverse_lambda_digits: Optional[str] = None

    @property
    def inverse_lambda(self) -> BigReal:
        return 1 / self.lambda_value


@dataclass
class SolveReport:
    """
    阶数延拓的结果

    属性:
        spec: 分支
        series: 最高阶的收敛解
        snapshots: 各阶数的解
        digits: 最后两阶之间的 DigitReport
        taylor: 最后两阶之间稳定的 Taylor 表
        feigenbaum_constant: 1/lambda 的稳定位
        target_reached: 稳定位数是否达到 target_digits
    """
    spec: BranchSpec
    series: FeigenbaumSeries
    snapshots: List[OrderSnapshot]
    digits: DigitReport
    taylor: TaylorTable
    feigenbaum_constant: str
    target_reached: bool

    @property
    def lambdas(self) -> List[Tuple[int, BigReal]]:
        return [(snap.order_n, snap.lambda_value) for snap in self.snapshots]

    @property
    def iteration_counts(self) -> List[int]:
        return [snap.iterations for snap in self.snapshots]

    @property
    def residual_norms(self) -> List[Optional[BigReal]]:
        return [snap.residual_norm for snap in self.snapshots]

    @property
    def stable_digit_count(self) -> int:
        return significant_digit_count(self.feigenbaum_constant)


# ==================== 残差与 Jacobian ====================

def make_grid(order_n: int, d: int, precision: Precision) -> CollocationGrid:
    """
    生成配置点

    在 u = x^d 上取 Chebyshev 角的正半部分 u_j = cos(jπ/(2N))，j = 1..N-1，
    再取 x_j = u_j^{1/d}。这样 2u_j^2 - 1 = cos(jπ/N)，正好落在 T_{2n}(u)
    的 Chebyshev 点上；d=1 时即 x_j = cos(jπ/(2N))。
    g 是偶函数，若取 cos(jπ/N) 会出现 ±x 成对的重复行。

    若 d > 1 仍在 x 上取 cos(jπ/(2N))，小 x_j 处 x_j^z 趋于 0，
    这些行都接近 g(0)=1 约束行，方程组的条件数随 N·d 指数增长。

    异常:
        DomainError: order_n < 4 或 d < 1
    """
    if order_n < MIN_GRID_ORDER:
        raise DomainError(f"order_n 至少为 {MIN_GRID_ORDER}，当前: {order_n}")
    if d < 1:
        raise DomainError(f"d 必须为正整数，当前: {d}")
    ctx = precision.context()
    step = ctx.pi / (2 * order_n)
    powers = [ctx.cos(j * step) for j in range(1, order_n)]
    if d == 1:
        abscissae = tuple(powers)
    else:
        abscissae = tuple(ctx.root(u, d) for u in powers)
    return CollocationGrid(order_n=order_n, d=d, abscissae=abscissae)


def residual(series: FeigenbaumSeries, x: BigReal) -> BigReal:
    """
    f(x) = g(g(λx)) + λ g(x)

    内层 g(λx) = Σ' t_n T_n(λ^d x^d)，外层在 g(λx)^d 处求和。
    """
    ctx = series.precision.context()
    d = series.d
    lam = lambda_of(series)
    u0 = ctx.mpf(x) ** d
    inner = cheb_sum_halved(series.t, lam ** d * u0)
    return cheb_sum_halved(series.t, inner ** d) + lam * cheb_sum_halved(series.t, u0)


def _even_values(n_columns: int, u: BigReal) -> List[BigReal]:
    """T_0(u), T_2(u), ..., T_{2n-2}(u)"""
    return cheb_t_values(2 * (n_columns - 1), u)[::2]


def jac_row(series: FeigenbaumSeries, x: BigReal) -> List[BigReal]:
    """
    残差 f(x) 对 t_0, t_2, ..., t_{2N-2} 的解析偏导数

    记 ε_0 = 2、其余 ε = 1，u0 = x^d，u1 = λ^d x^d，G = g(λx)，u2 = G^d:
        ∂λ/∂t_k    = -1/ε_k
        ∂G/∂t_k    = (T_k(u1) - u0 d λ^{d-1} S'(u1)) / ε_k
        ∂f_a/∂t_k  = T_k(u2)/ε_k + d G^{d-1} S'(u2) ∂G/∂t_k
        ∂f_b/∂t_k  = -g(x)/ε_k + λ T_k(u0)/ε_k
    其中 S'(u) = Σ_{n>=2} t_n T_n'(u)。u0 d λ^{d-1} S'(u1) = x g'(λx)，
    d G^{d-1} S'(u2) = g'(G)。
    """
    ctx = series.precision.context()
    d = series.d
    n_columns = series.order_n
    lam = lambda_of(series)

    x = ctx.mpf(x)
    u0 = x ** d
    u1 = lam ** d * u0
    inner = cheb_sum_halved(series.t, u1)
    u2 = inner ** d
    g_x = cheb_sum_halved(series.t, u0)

    inner_chain = x * g_derivative(series, lam * x)
    outer_chain = g_derivative(series, inner)

    t_u0 = _even_values(n_columns, u0)
    t_u1 = _even_values(n_columns, u1)
    t_u2 = _even_values(n_columns, u2)

    row = []
    for column in range(n_columns):
        scale = ctx.mpf(1) / 2 if column == 0 else ctx.one
        d_inner = scale * (t_u1[column] - inner_chain)
        d_outer = scale * t_u2[column] + outer_chain * d_inner
        d_scaled = scale * (lam * t_u0[column] - g_x)
        row.append(d_outer + d_scaled)
    return row


def assemble(series: FeigenbaumSeries, grid: CollocationGrid) -> NewtonSystem:
    """
    组装加边 Newton 方程组

    参数:
        series: 当前迭代值
        grid: 配置点，grid.order_n 必须等于 series.order_n

    返回:
        NewtonSystem: 第 0 行为 g(0)=1 约束，第 j 行为 x_j 处的 Jacobian 行

    异常:
        DomainError: 配置点数量与级数阶数不匹配
    """
    if grid.order_n != series.order_n or grid.d != series.d:
        raise DomainError(
            f"配置点 (N={grid.order_n}, d={grid.d}) 与级数 "
            f"(N={series.order_n}, d={series.d}) 不匹配"
        )
    ctx = series.precision.context()

    constraint = [ctx.mpf(1) / 2] + [
        -ctx.one if column % 2 else ctx.one for column in range(1, series.order_n)
    ]
    defect = g0_defect(series)
    matrix = [constraint]
    rhs = [-defect]

    worst = ctx.zero
    for x in grid.abscissae:
        value = residual(series, x)
        worst = max(worst, abs(value))
        matrix.append(jac_row(series, x))
        rhs.append(-value)

    return NewtonSystem(
        matrix=matrix,
        rhs=rhs,
        precision=series.precision,
        residual_norm=worst,
        defect=defect
    )


def linear_solve(system: NewtonSystem) -> List[BigReal]:
    """
    部分主元 Gauss 消元

    主元绝对值低于 10^-(working_digits-5)·max(1, max|A|) 视为奇异。
    求解后检查 ||AΔt - rhs||∞ <= 10^-(working_digits-10)·||rhs||∞，
    结果记录在 system.residual_check。

    返回:
        List[BigReal]: Δt

    异常:
        SingularSystemError: 某一列找不到足够大的主元
    """
    ctx = system.precision.context()
    size = system.size
    a = [list(row) for row in system.matrix]
    b = list(system.rhs)

    scale = max([ctx.one] + [abs(value) for row in a for value in row])
    threshold = system.precision.tolerance(5) * scale

    for column in range(size):
        pivot_row = max(range(column, size), key=lambda r: abs(a[r][column]))
        pivot = a[pivot_row][column]
        if abs(pivot) < threshold:
            raise SingularSystemError(column, format_truncated(pivot, 5))
        if pivot_row != column:
            a[column], a[pivot_row] = a[pivot_row], a[column]
            b[column], b[pivot_row] = b[pivot_row], b[column]
        for r in range(column + 1, size):
            factor = a[r][column] / pivot
            if not factor:
                continue
            row_r, row_c = a[r], a[column]
            for k in range(column, size):
                row_r[k] -= factor * row_c[k]
            b[r] -= factor * b[column]

    solution = [ctx.zero] * size
    for r in range(size - 1, -1, -1):
        total = b[r]
        row = a[r]
        for k in range(r + 1, size):
            total -= row[k] * solution[k]
        solution[r] = total / row[r]

    worst = ctx.zero
    for row, target in zip(system.matrix, system.rhs):
        worst = max(worst, abs(ctx.fsum(value * s for value, s in zip(row, solution)) - target))
    rhs_norm = max([abs(value) for value in system.rhs] + [ctx.zero])
    system.solve_residual = worst
    system.residual_check = worst <= system.precision.tolerance(10) * rhs_norm
    if not system.residual_check:
        logger.warning(f"线性方程组残差偏大: {format_truncated(worst, 5)}")
    return solution


# ==================== Newton 迭代 ====================

def _merit(series: FeigenbaumSeries, grid: CollocationGrid) -> BigReal:
    ctx = series.precision.context()
    worst = abs(g0_defect(series))
    for x in grid.abscissae:
        worst = max(worst, abs(residual(series, x)))
    return ctx.mpf(worst)


def newton_iterate(
    seed: FeigenbaumSeries,
    grid: CollocationGrid,
    tol: BigReal,
    max_iter: int = 50,
    divergence_window: int = 5
) -> NewtonOutcome:
    """
    Newton 迭代，返回收敛解和每轮的范数记录

    收敛条件: max_j |f_j|、|g(0)-1| 与上一步 ||Δt||∞ 都不超过 tol。
    残差已低于 tol 而步长停在舍入噪声水平（不再减小）时同样视为收敛。
    整步使残差增大超过 2 倍时把步长减半，最多 8 次。

    参数:
        seed: 初值
        grid: 配置点
        tol: 容差，> 0
        max_iter: 最大迭代次数
        divergence_window: 残差连续增长多少次视为发散

    返回:
        NewtonOutcome: 收敛解、修正次数和范数记录

    异常:
        DomainError: tol <= 0
        DivergenceError: 残差连续 divergence_window 次增长
        ConvergenceError: 达到 max_iter 仍未收敛
        SingularSystemError: Jacobian 奇异
    """
    if not tol > 0:
        raise DomainError(f"tol 必须为正，当前: {tol}")

    ctx = seed.precision.context()
    series = seed
    history: List[Dict[str, Any]] = []
    last_step: Optional[BigReal] = None
    previous_step: Optional[BigReal] = None
    previous_merit: Optional[BigReal] = None
    increases = 0

    for iteration in range(max_iter + 1):
        system = assemble(series, grid)
        merit = max(system.residual_norm, abs(system.defect))
        history.append({
            'iteration': iteration,
            'residual_norm': system.residual_norm,
            'defect': system.defect,
            'step_norm': last_step,
        })

        if merit <= tol:
            if last_step is None or last_step <= tol:
                return NewtonOutcome(series=series, iterations=iteration, history=history)
            if previous_step is not None and last_step >= previous_step:
                logger.debug(f"步长停在舍入水平 {format_truncated(last_step, 5)}，视为收敛")
                return NewtonOutcome(series=series, iterations=iteration, history=history)

        if previous_merit is not None and merit > previous_merit:
            increases += 1
            if increases >= divergence_window:
                raise DivergenceError(
                    f"残差连续 {increases} 次增长 (N={series.order_n})",
                    series=series,
                    history=history
                )
        else:
            increases = 0
        previous_merit = merit

        if iteration == max_iter:
            break

        delta = linear_solve(system)
        step_norm = max(abs(value) for value in delta)

        damping = ctx.one
        candidate = series.with_coefficients([t + dt for t, dt in zip(series.t, delta)])
        if merit > tol * 1000:
            trial_merit = _merit(candidate, grid)
            halvings = 0
            while trial_merit > 2 * merit and halvings < MAX_DAMPING_HALVINGS:
                damping /= 2
                halvings += 1
                candidate = series.with_coefficients(
                    [t + damping * dt for t, dt in zip(series.t, delta)]
                )
                trial_merit = _merit(candidate, grid)
            if halvings:
                logger.warning(
                    f"N={series.order_n} 迭代 {iteration}: 整步使残差增大，步长缩小为 {damping}"
                )

        log_newton_iteration(
            series.order_n, iteration, step_norm, system.residual_norm,
            abs(system.defect), float(damping)
        )
        series = candidate
        previous_step, last_step = last_step, step_norm * damping

    raise ConvergenceError(
        f"{max_iter} 次迭代后仍未收敛 (N={series.order_n})",
        series=series,
        history=history
    )


def newton_solve(
    seed: FeigenbaumSeries,
    grid: CollocationGrid,
    tol: BigReal,
    max_iter: int = 50
) -> FeigenbaumSeries:
    """newton_iterate 的简化接口，只返回收敛的级数"""
    return newton_iterate(seed, grid, tol, max_iter).series


def seed_series(spec: BranchSpec, precision: Precision, order_n: int) -> FeigenbaumSeries:
    """
    构造初值

    z=2 主分支取 g ≈ 1 + b_2 x^2。x^z = u^2 = (T_0(u) + T_2(u))/2，u = x^d，
    因此 t_0 = 2 + b_z，t_2 = b_z/2。其它分支直接取前 6 个 Chebyshev 系数。
    未给出的系数为 0。

    异常:
        DomainError: 未知的初值类型，或 order_n 小于初值系数个数
    """
    if spec.seed_kind == "taylor":
        _, leading = spec.seed[0]
        b = precision.real(leading)
        values = [2 + b, b / 2]
    elif spec.seed_kind == "chebyshev":
        values = [precision.real(value) for _, value in spec.seed]
    else:
        raise DomainError(f"未知的初值类型: {spec.seed_kind!r}")

    if order_n < len(values):
        raise DomainError(f"order_n={order_n} 小于初值系数个数 {len(values)}")
    values.extend([precision.context().zero] * (order_n - len(values)))
    return FeigenbaumSeries.from_coefficients(spec.z, values, precision)


# ==================== 阶数延拓 ====================

def _solve_order(
    series: FeigenbaumSeries,
    tol: BigReal,
    max_iter: int,
    divergence_window: int
) -> OrderSnapshot:
    grid = make_grid(series.order_n, series.d, series.precision)
    started = time.time()
    outcome = newton_iterate(series, grid, tol, max_iter, divergence_window)
    log_performance(
        "newton_solve",
        time.time() - started,
        {'N': series.order_n, 'iterations': outcome.iterations}
    )
    return OrderSnapshot(
        order_n=series.order_n,
        series=outcome.series,
        lambda_value=lambda_of(outcome.series),
        iterations=outcome.iterations,
        residual_norm=outcome.residual_norm
    )


def solve_with_continuation(
    spec: BranchSpec,
    precision: Precision,
    initial_n: int = 12,
    step: int = 4,
    max_n: int = 200,
    max_iter: int = 50,
    divergence_window: int = 5,
    stagnation_limit: int = 3,
    start: Optional[FeigenbaumSeries] = None
) -> SolveReport:
    """
    从 initial_n 开始求解，每次把阶数增加 step 并重新收敛

    1/lambda 在相邻两阶之间的稳定位数达到 precision.target_digits，
    或下一阶超过 max_n 时停止。

    参数:
        spec: 分支
        precision: 精度约定
        initial_n: 初始阶数，>= 8
        step: 每次增加的阶数
        max_n: 最大阶数
        max_iter: 每一阶的最大 Newton 迭代次数
        divergence_window: 见 newton_iterate
        stagnation_limit: 稳定位数连续多少次不增长视为停滞
        start: 续算用的起始级数（如从检查点读入），代替分支初值

    返回:
        SolveReport: 各阶的解、稳定位数报告、稳定 Taylor 表和 1/lambda

    异常:
        DomainError: 参数不满足前置条件
        StagnationError: 稳定位数连续 stagnation_limit 次没有增长
        ConvergenceError / SingularSystemError: 由 Newton 迭代传出
    """
    if step < 1:
        raise DomainError(f"step 必须为正，当前: {step}")

    if start is not None:
        if start.z != spec.z:
            raise DomainError(f"起始级数的 z={start.z} 与分支 z={spec.z} 不一致")
        if start.precision != precision:
            start = FeigenbaumSeries(z=start.z, t=start.t, precision=precision)
        series = start if start.order_n >= initial_n else pad_order(start, initial_n)
    else:
        if initial_n < MIN_INITIAL_ORDER:
            raise DomainError(f"initial_n 至少为 {MIN_INITIAL_ORDER}，当前: {initial_n}")
        series = seed_series(spec, precision, initial_n)

    if series.order_n + step > max_n:
        raise DomainError(f"max_n={max_n} 不足以在 N={series.order_n} 之后再增加一次阶数")

    tol = precision.tolerance(10)
    logger.info(
        f"开始求解 {spec.label} | 目标位数: {precision.target_digits} | "
        f"工作位数: {precision.working_digits} | 初始阶数: {series.order_n}"
    )

    snapshots = [_solve_order(series, tol, max_iter, divergence_window)]
    log_order_result(
        snapshots[0].order_n,
        format_truncated(snapshots[0].inverse_lambda, 20),
        None,
        snapshots[0].iterations
    )

    digit_counts: List[int] = []
    best = -1
    without_gain = 0
    report: Optional[DigitReport] = None
    target_reached = False

    while snapshots[-1].order_n + step <= max_n:
        previous = snapshots[-1]
        current = _solve_order(
            pad_order(previous.series, previous.order_n + step),
            tol, max_iter, divergence_window
        )
        report = digit_report(previous.series, current.series)
        current.inverse_lambda_digits = report.inverse_lambda_digits
        snapshots.append(current)

        count = significant_digit_count(report.inverse_lambda_digits)
        digit_counts.append(count)
        log_order_result(
            current.order_n,
            format_truncated(current.inverse_lambda, 20),
            report.inverse_lambda_digits,
            current.iterations
        )

        if count >= precision.target_digits:
            target_reached = True
            break
        if count > best:
            best = count
            without_gain = 0
        else:
            without_gain += 1
            if without_gain >= stagnation_limit:
                raise StagnationError([snap.order_n for snap in snapshots], digit_counts)

    if not target_reached:
        logger.warning(
            f"{spec.label}: 达到 max_n={max_n} 时只有 {digit_counts[-1]} 位稳定，"
            f"目标 {precision.target_digits} 位"
        )

    previous, last = snapshots[-2], snapshots[-1]
    max_exponent = (previous.order_n - 1) * spec.z
    taylor = stable_taylor(
        taylor_from_cheb(previous.series, max_exponent),
        taylor_from_cheb(last.series, max_exponent)
    )

    return SolveReport(
        spec=spec,
        series=last.series,
        snapshots=snapshots,
        digits=report,
        taylor=taylor,
        feigenbaum_constant=report.inverse_lambda_digits,
        target_reached=target_reached
    )


def g_at_one(series: FeigenbaumSeries) -> BigReal:
    """g(1)，主分支为负，z=2 的 extra 分支为正"""
    return eval_g(series, series.precision.context().one)


__all__ = [
    'BRANCH_PRINCIPAL',
    'BRANCH_EXTRA',
    'PRINCIPAL_LEADING_TAYLOR',
    'PRINCIPAL_CHEBYSHEV',
    'CollocationGrid',
    'NewtonSystem',
    'BranchSpec',
    'NewtonOutcome',
    'OrderSnapshot',
    'SolveReport',
    'make_grid',
    'residual',
    'jac_row',
    'assemble',
    'linear_solve',
    'newton_iterate',
    'newton_solve',
    'seed_series',
    'solve_with_continuation',
    'g_at_one',
]

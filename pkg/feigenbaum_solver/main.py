#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Feigenbaum 求解器命令行

子命令:
    solve    阶数延拓求解，写出检查点、t 表、b 表和常数文件
    convert  把检查点换算为 Taylor 系数表（可与另一阶数比较稳定位）
    verify   求解并与参考数据比较
    sample   输出 "x g(x)" 采样数据，供外部绘图

退出码: 0 成功，2 参数错误，3 求解失败，4 与参考数据不符，5 文件读写错误
"""

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from feigenbaum_solver.config import (
    EXIT_IO,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_SOLVER,
    EXIT_USAGE,
    RunConfig,
    SolverConfig,
    get_solver_config,
)
from feigenbaum_solver.core.bignum import Precision
from feigenbaum_solver.core.exceptions import (
    CheckpointFormatError,
    ConvergenceError,
    DomainError,
    ReferenceNotFoundError,
    SingularSystemError,
    StagnationError,
)
from feigenbaum_solver.core.refdata import compare, lookup, reference_series
from feigenbaum_solver.core.series import (
    functional_equation_defect,
    stable_taylor,
    taylor_from_cheb,
)
from feigenbaum_solver.core.solver import (
    BranchSpec,
    SolveReport,
    g_at_one,
    solve_with_continuation,
)
from feigenbaum_solver.utils.logger import (
    get_logger,
    log_error_with_context,
    log_performance,
    setup_logger,
)
from feigenbaum_solver.utils.table_io import (
    format_constant,
    format_samples,
    format_t_table,
    format_taylor_table,
    read_checkpoint,
    write_checkpoint,
    write_text,
)

logger = get_logger(__name__)

DEFAULT_RESULTS_DIR = "results"
SAMPLE_PRECISION_DIGITS = 30


def build_parser() -> argparse.ArgumentParser:
    """构造命令行解析器"""
    parser = argparse.ArgumentParser(
        prog="feigenbaum",
        description="Feigenbaum-Cvitanović 方程的 Chebyshev 配置法求解器"
    )
    parser.add_argument("--log-level", default=None, help="日志级别（默认取 LOG_LEVEL）")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_branch(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--z", type=int, default=2, help="首项指数，偶数 2..14（默认 2）")
        sub.add_argument("--branch", choices=["principal", "extra"], default="principal",
                         help="解的分支，extra 只用于 z=2")

    def add_orders(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--digits", type=int, default=None, help="要求的稳定位数（默认 30）")
        sub.add_argument("--initial-order", type=int, default=None, help="初始阶数 N（默认 12）")
        sub.add_argument("--max-order", type=int, default=None, help="最大阶数（默认 200）")

    solve = commands.add_parser("solve", help="阶数延拓求解")
    add_branch(solve)
    add_orders(solve)
    solve.add_argument("--out", default=None, help=f"输出目录（默认 {DEFAULT_RESULTS_DIR}/）")
    solve.add_argument("--format", choices=["plain", "wrapped"], default="plain")
    solve.add_argument("--resume", default=None, help="从检查点续算")

    convert = commands.add_parser("convert", help="检查点换算为 Taylor 系数表")
    convert.add_argument("checkpoint", help="检查点文件")
    convert.add_argument("--max-exponent", type=int, default=None,
                         help="最大指数（默认 (N-1)z）")
    convert.add_argument("--against", default=None,
                         help="另一阶数的检查点，只输出两者一致的稳定位")
    convert.add_argument("--out", default=None, help="输出文件（默认标准输出）")
    convert.add_argument("--format", choices=["plain", "wrapped"], default="plain")

    verify = commands.add_parser("verify", help="求解并与参考数据比较")
    add_branch(verify)
    add_orders(verify)

    sample = commands.add_parser("sample", help="输出 x g(x) 采样数据")
    sample.add_argument("checkpoint", nargs="?", default=None,
                        help="检查点文件（省略时使用参考数据）")
    add_branch(sample)
    sample.add_argument("--samples", type=int, default=101, help="采样点数（默认 101）")
    sample.add_argument("--out", default=None, help="输出文件（默认标准输出）")

    return parser


def to_run_config(args: argparse.Namespace, solver_config: SolverConfig) -> RunConfig:
    """命令行参数与环境配置合并为 RunConfig"""
    values = {
        'command': args.command,
        'target_digits': solver_config.target_digits,
        'guard_digits': solver_config.guard_digits,
        'initial_n': solver_config.initial_order,
        'max_n': solver_config.max_order,
        'order_step': solver_config.order_step,
    }
    for attr, key in (
        ('z', 'z'),
        ('branch', 'branch'),
        ('digits', 'target_digits'),
        ('initial_order', 'initial_n'),
        ('max_order', 'max_n'),
        ('out', 'output'),
        ('format', 'format'),
        ('samples', 'samples'),
        ('checkpoint', 'checkpoint'),
        ('max_exponent', 'max_exponent'),
        ('against', 'against'),
        ('resume', 'resume'),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            values[key] = value
    if args.command == 'convert':
        # convert 的 z 来自检查点
        values.pop('z', None)
    return RunConfig(**values)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        write_text(output, text)
        logger.info(f"已写出: {output}")
    else:
        sys.stdout.write(text)


def _solve(run: RunConfig, solver_config: SolverConfig, target_digits: int) -> SolveReport:
    precision = Precision(target_digits=target_digits, guard_digits=run.guard_digits)
    spec = BranchSpec.create(run.z, run.branch)
    start = read_checkpoint(run.resume) if run.resume else None
    return solve_with_continuation(
        spec,
        precision,
        initial_n=run.initial_n,
        step=run.order_step,
        max_n=run.max_n,
        max_iter=solver_config.max_iterations,
        divergence_window=solver_config.divergence_window,
        stagnation_limit=solver_config.stagnation_limit,
        start=start
    )


def cmd_solve(run: RunConfig, solver_config: SolverConfig) -> int:
    """
    求解并写出结果文件

    输出目录中的文件:
        z<z>_<branch>.cheb      最高阶的检查点
        z<z>_<branch>.t         t_n 稳定位
        z<z>_<branch>.taylor    b_n 稳定位
        z<z>_<branch>.constant  "F = <1/lambda>"
    """
    started = time.time()
    report = _solve(run, solver_config, run.target_digits)

    out_dir = Path(run.output or DEFAULT_RESULTS_DIR)
    stem = f"z{run.z}_{run.branch}"
    write_checkpoint(report.series, out_dir / f"{stem}.cheb", run.format)
    write_text(out_dir / f"{stem}.t", format_t_table(report.digits, run.format))
    write_text(out_dir / f"{stem}.taylor", format_taylor_table(report.taylor, run.format))
    write_text(out_dir / f"{stem}.constant", format_constant(report.feigenbaum_constant))
    log_performance("solve", time.time() - started, {'z': run.z, 'branch': run.branch,
                                                     'N': report.series.order_n})

    print(f"z={run.z} branch={run.branch} 1/lambda={report.feigenbaum_constant}")
    return EXIT_OK


def cmd_convert(run: RunConfig) -> int:
    """检查点换算为 "<指数> <值>" 行"""
    series = read_checkpoint(run.checkpoint)
    max_exponent = run.max_exponent
    if max_exponent is None:
        max_exponent = (series.order_n - 1) * series.z
    if max_exponent % series.z:
        raise DomainError(f"max_exponent 必须是 z={series.z} 的倍数")

    table = taylor_from_cheb(series, max_exponent)
    if run.against:
        other = read_checkpoint(run.against)
        low, high = sorted((series, other), key=lambda s: s.order_n)
        if run.max_exponent is None:
            max_exponent = (low.order_n - 1) * low.z
        table = stable_taylor(taylor_from_cheb(low, max_exponent), taylor_from_cheb(high, max_exponent))
    if table.truncated:
        print(f"警告: max_exponent={max_exponent} 超过了截断级数能表示的范围", file=sys.stderr)

    _emit(format_taylor_table(table, run.format), run.output)
    return EXIT_OK


def _leading_zeros(text: str) -> int:
    """小数点后、第一位非零数字前的零的个数"""
    fraction = text.lstrip('+-').partition('.')[2]
    return len(fraction) - len(fraction.lstrip('0'))


def cmd_verify(run: RunConfig, solver_config: SolverConfig) -> int:
    """
    求解并与参考数据比较

    判定规则:
        - 常数: 至少 min(digits, 参考位数) 位一致
        - t_n: 至少 min(参考位数, digits - 小数点后前导零个数) 位一致
        - b_z: 至少 min(digits, 参考位数) 位一致，其余 b_n 只报告
        - 任一符号不一致即失败
        - [0,1] 上 100 个点的函数方程残差不超过 10^-(稳定位数-5)
    """
    entry = lookup(run.z, run.branch)
    digits = run.target_digits
    report = _solve(run, solver_config, digits + 5)
    comparison = compare(report, entry)

    failures = []
    for match in comparison.matches:
        if match.sign_mismatch:
            failures.append((match, "符号不一致"))
            continue
        if match.kind == "F" or (match.kind == "b" and match.key == run.z):
            required = min(digits, match.reference_digits)
        elif match.kind == "t":
            required = min(match.reference_digits, digits - _leading_zeros(match.reference))
        else:
            continue
        if required > 0 and match.matched < required:
            failures.append((match, f"一致 {match.matched} 位，要求 {required} 位"))

    precision = report.series.precision
    defect = functional_equation_defect(report.series, 100)
    defect_limit = precision.context().mpf(10) ** (-(report.stable_digit_count - 5))
    sign = g_at_one(report.series)

    print(f"z={run.z} branch={run.branch} 1/lambda={report.feigenbaum_constant}")
    print(f"参考值 F = {entry.feigenbaum_constant}")
    print(f"比较 {len(comparison.matches)} 项，最少一致 {comparison.minimum} 位")
    print(f"函数方程残差 max|λg(x)+g(g(λx))| = {precision.context().nstr(defect, 5)}")

    if defect > defect_limit:
        print(f"函数方程残差超过 10^-{report.stable_digit_count - 5}", file=sys.stderr)
        return EXIT_MISMATCH
    expected_positive = run.branch == "extra"
    if (sign > 0) != expected_positive:
        print(f"g(1) 的符号与分支不符: g(1) = {precision.context().nstr(sign, 10)}", file=sys.stderr)
        return EXIT_MISMATCH
    if failures:
        worst, reason = min(failures, key=lambda item: item[0].matched)
        print(
            f"与参考数据不符: {worst.label} 计算值 {worst.computed} 参考值 {worst.reference} ({reason})",
            file=sys.stderr
        )
        for match, reason in failures:
            logger.warning(f"{match.label}: {reason}")
        return EXIT_MISMATCH

    print("verify 通过")
    return EXIT_OK


def cmd_sample(run: RunConfig) -> int:
    """输出 "x g(x)" 采样数据；未给检查点时使用参考解"""
    if run.checkpoint:
        series = read_checkpoint(run.checkpoint)
    else:
        series = reference_series(lookup(run.z, run.branch), Precision(SAMPLE_PRECISION_DIGITS))
    _emit(format_samples(series, run.samples), run.output)
    return EXIT_OK


def dispatch(run: RunConfig, solver_config: SolverConfig) -> int:
    if run.command == "solve":
        return cmd_solve(run, solver_config)
    if run.command == "convert":
        return cmd_convert(run)
    if run.command == "verify":
        return cmd_verify(run, solver_config)
    return cmd_sample(run)


def main(argv: Optional[List[str]] = None) -> int:
    """
    命令行入口

    参数:
        argv: 参数列表，默认取 sys.argv[1:]

    返回:
        int: 退出码
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        solver_config = get_solver_config()
    except ValueError as e:
        print(f"配置错误: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logger(
        log_level=(args.log_level or solver_config.log_level).upper(),
        log_file=solver_config.log_file,
        force=True
    )

    try:
        run = to_run_config(args, solver_config)
    except ValidationError as e:
        errors = "; ".join(error['msg'] for error in e.errors())
        print(f"参数错误: {errors}", file=sys.stderr)
        return EXIT_USAGE

    context = {'command': run.command, 'z': run.z, 'branch': run.branch}
    try:
        return dispatch(run, solver_config)
    except (DomainError, ReferenceNotFoundError) as e:
        log_error_with_context(e, context, "cli")
        print(f"参数错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, StagnationError, SingularSystemError) as e:
        log_error_with_context(e, context, "cli")
        print(f"求解失败: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except (CheckpointFormatError, OSError) as e:
        log_error_with_context(e, context, "cli")
        print(f"文件错误: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""
日志工具模块

提供统一的日志记录接口,支持多级别日志和日志文件管理。
控制台日志写到 stderr，标准输出留给 CLI 的数据输出。
"""

import sys
from pathlib import Path
from typing import Optional, Dict, Any
from loguru import logger


# 全局日志配置状态
_logger_configured = False


def setup_logger(
    log_level: str = "INFO",
    log_file: Optional[str] = "logs/feigenbaum.log",
    rotation: str = "10 MB",
    retention: str = "7 days",
    enable_console: bool = True,
    force: bool = False
) -> None:
    """
    配置日志系统

    参数:
        log_level: 日志级别 (DEBUG/INFO/WARNING/ERROR)
        log_file: 日志文件路径，None 表示不写文件
        rotation: 日志轮转策略 (文件大小或时间)
        retention: 日志保留时间
        enable_console: 是否启用控制台输出
        force: 已配置时是否重新配置（CLI 解析参数后使用）

    功能:
        - 配置控制台日志输出(彩色、格式化)
        - 配置文件日志输出(包含详细信息)
        - 设置日志轮转和清理策略
    """
    global _logger_configured

    if _logger_configured and not force:
        return

    # 移除默认的 logger 配置
    logger.remove()

    # 控制台日志格式
    console_format = (
        "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
        "<level>{message}</level>"
    )

    # 文件日志格式(更详细)
    file_format = (
        "{time:YYYY-MM-DD HH:mm:ss.SSS} | "
        "{level: <8} | "
        "{name}:{function}:{line} | "
        "{message}"
    )

    if enable_console:
        logger.add(
            sys.stderr,
            format=console_format,
            level=log_level,
            colorize=True
        )

    if log_file:
        # 确保日志目录存在
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        logger.add(
            log_file,
            format=file_format,
            level=log_level,
            rotation=rotation,
            retention=retention,
            encoding='utf-8',
            enqueue=True  # 异步写入
        )

    _logger_configured = True
    logger.debug(f"日志系统已初始化 [级别: {log_level}, 文件: {log_file}]")


def get_logger(name: Optional[str] = None):
    """
    获取日志记录器

    参数:
        name: 模块名称,用于标识日志来源

    返回:
        logger: loguru.Logger 对象

    使用示例:
        logger = get_logger(__name__)
        logger.info("这是一条信息")
    """
    # 未配置时只输出 WARNING 以上到控制台，避免库被导入时创建日志文件
    if not _logger_configured:
        setup_logger(log_level="WARNING", log_file=None)

    # loguru 的 logger 是全局单例,但可以通过 bind 添加上下文
    if name:
        return logger.bind(module=name)
    return logger


def log_newton_iteration(
    order_n: int,
    iteration: int,
    step_norm: Any,
    residual_norm: Any,
    defect: Any,
    damping: float = 1.0
) -> None:
    """
    记录一次 Newton 迭代

    参数:
        order_n: 截断阶数 N
        iteration: 迭代次数
        step_norm: ||Δt||∞
        residual_norm: max_j |f_j|
        defect: |g(0) - 1|
        damping: 实际采用的步长因子
    """
    log = get_logger("newton")
    damping_str = f" | 阻尼: {damping:g}" if damping != 1.0 else ""
    log.debug(
        f"N={order_n} 迭代 {iteration} | 步长: {_short(step_norm)} | "
        f"残差: {_short(residual_norm)} | g(0)偏差: {_short(defect)}{damping_str}"
    )


def log_order_result(
    order_n: int,
    inverse_lambda: str,
    stable_digits: Optional[str],
    iterations: int
) -> None:
    """
    记录某一截断阶数的求解结果

    参数:
        order_n: 截断阶数 N
        inverse_lambda: 1/lambda 的打印值（截短）
        stable_digits: 与上一阶比较得到的稳定前缀
        iterations: Newton 迭代次数
    """
    log = get_logger("continuation")
    stable_str = stable_digits if stable_digits is not None else "-"
    log.info(
        f"N={order_n} 收敛 | 迭代: {iterations} | 1/lambda: {inverse_lambda} | "
        f"稳定位: {stable_str}"
    )


def log_error_with_context(
    error: Exception,
    context: Dict[str, Any],
    module_name: str = "unknown"
) -> None:
    """
    记录带上下文的错误信息

    参数:
        error: 异常对象
        context: 上下文信息
        module_name: 模块名称
    """
    log = get_logger(module_name)

    log.error(f"发生错误: {type(error).__name__}: {str(error)}")
    log.error(f"上下文信息: {context}")
    log.opt(exception=error).debug("堆栈跟踪")


def log_performance(
    operation: str,
    duration: float,
    details: Optional[Dict[str, Any]] = None
) -> None:
    """
    记录性能指标

    参数:
        operation: 操作名称
        duration: 持续时间(秒)
        details: 额外详情
    """
    log = get_logger("performance")

    details_str = f" | 详情: {details}" if details else ""
    log.info(f"性能指标 | 操作: {operation} | 耗时: {duration:.3f}s{details_str}")


def _short(value: Any) -> str:
    """把高精度范数截成便于阅读的形式"""
    try:
        return f"{float(value):.3e}"
    except (TypeError, ValueError, OverflowError):
        return str(value)

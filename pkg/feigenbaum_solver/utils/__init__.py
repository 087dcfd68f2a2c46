"""
工具模块
包含日志工具和结果文件格式（检查点、Taylor 表、采样数据）

table_io 依赖 core 中的级数类型，请直接从
feigenbaum_solver.utils.table_io 导入，这里只导出日志工具。
"""

from .logger import (
    setup_logger,
    get_logger,
    log_newton_iteration,
    log_order_result,
    log_error_with_context,
    log_performance
)

__all__ = [
    # logger
    'setup_logger',
    'get_logger',
    'log_newton_iteration',
    'log_order_result',
    'log_error_with_context',
    'log_performance',
]

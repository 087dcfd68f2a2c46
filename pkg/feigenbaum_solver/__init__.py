"""
Feigenbaum Solver - Feigenbaum-Cvitanović 方程的任意精度 Chebyshev 配置法求解器
"""

__version__ = "0.1.0"

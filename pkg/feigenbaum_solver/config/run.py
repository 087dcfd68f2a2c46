#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行运行配置

RunConfig 在分派命令之前校验参数，校验失败对应退出码 2。
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

# 退出码
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_MISMATCH = 4
EXIT_IO = 5

SUPPORTED_Z = (2, 4, 6, 8, 10, 12, 14)


class RunConfig(BaseModel):
    """
    一次命令行调用的参数

    示例:
        >>> RunConfig(command="solve", z=4, target_digits=20)
        >>> RunConfig(command="verify", z=3)   # ValidationError: z 必须为偶数
    """
    command: Literal["solve", "convert", "verify", "sample"]
    z: int = 2
    branch: Literal["principal", "extra"] = "principal"
    target_digits: int = Field(default=30, ge=10)
    guard_digits: int = Field(default=20, ge=10)
    initial_n: int = Field(default=12, ge=8)
    max_n: int = 200
    order_step: int = Field(default=4, ge=1)
    output: Optional[str] = None
    format: Literal["plain", "wrapped"] = "plain"
    samples: int = Field(default=101, ge=2)
    checkpoint: Optional[str] = None
    max_exponent: Optional[int] = Field(default=None, ge=0)
    against: Optional[str] = None
    resume: Optional[str] = None

    @field_validator('z')
    @classmethod
    def check_z(cls, value: int) -> int:
        if value % 2:
            raise ValueError(f"z 必须为偶数（不支持奇数 z），当前: {value}")
        if value not in SUPPORTED_Z:
            raise ValueError(f"z 必须在 {SUPPORTED_Z} 之中，当前: {value}")
        return value

    @model_validator(mode='after')
    def check_combination(self) -> 'RunConfig':
        if self.branch == "extra" and self.z != 2:
            raise ValueError("extra 分支只存在于 z=2")
        if self.max_n < self.initial_n + self.order_step:
            raise ValueError(
                f"max_n={self.max_n} 必须至少为 initial_n + order_step = "
                f"{self.initial_n + self.order_step}"
            )
        if self.command == "convert" and not self.checkpoint:
            raise ValueError("convert 需要检查点文件")
        # convert 的 z 取自检查点，由 cmd_convert 检查
        if self.command != "convert" and self.max_exponent is not None and self.max_exponent % self.z:
            raise ValueError(f"max_exponent 必须是 z={self.z} 的倍数")
        return self


__all__ = [
    'RunConfig',
    'SUPPORTED_Z',
    'EXIT_OK',
    'EXIT_USAGE',
    'EXIT_SOLVER',
    'EXIT_MISMATCH',
    'EXIT_IO',
]

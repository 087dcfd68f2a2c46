#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置模块测试
测试求解器配置、命令行运行配置和日志工具
"""

import os
import sys
from pathlib import Path
from unittest.mock import patch

# 添加项目根目录到路径
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))


def test_solver_config_defaults():
    """测试求解器配置的默认值"""
    from feigenbaum_solver.config import SolverConfig

    print("\n" + "="*70)
    print("测试 1: 求解器配置默认值")
    print("="*70)

    config = SolverConfig()
    assert config.target_digits == 30
    assert config.guard_digits == 20
    assert config.initial_order == 12
    assert config.max_order == 200
    assert config.order_step == 4
    assert config.max_iterations == 50
    assert config.divergence_window == 5
    assert config.stagnation_limit == 3
    assert config.validate()

    precision = config.precision()
    assert precision.working_digits == 50

    print("✓ 默认配置正确")
    print(f"  {config!r}")
    return True


def test_solver_config_from_dict():
    """测试从字典创建求解器配置"""
    from feigenbaum_solver.config import SolverConfig

    print("\n" + "="*70)
    print("测试 2: 从字典创建求解器配置")
    print("="*70)

    config = SolverConfig.from_dict({'target_digits': 40, 'max_order': 120})
    assert config.target_digits == 40
    assert config.max_order == 120
    assert config.initial_order == 12
    assert config.log_level == "INFO"

    config_dict = config.to_dict()
    assert config_dict['target_digits'] == 40
    assert SolverConfig.from_dict(config_dict) == config
    print("✓ from_dict / to_dict 一致")

    repr_str = repr(config)
    assert 'target_digits=40' in repr_str
    assert 'orders=12..120 step 4' in repr_str
    print("✓ __repr__() 包含阶数范围")
    return True


def test_solver_config_validation():
    """测试求解器配置验证"""
    from feigenbaum_solver.config import SolverConfig

    print("\n" + "="*70)
    print("测试 3: 求解器配置验证")
    print("="*70)

    invalid = [
        {'target_digits': 5},
        {'guard_digits': 3},
        {'initial_order': 4},
        {'initial_order': 20, 'max_order': 22},
        {'order_step': 0},
        {'max_iterations': 0},
        {'stagnation_limit': 0},
        {'log_level': 'VERBOSE'},
    ]
    for values in invalid:
        assert not SolverConfig.from_dict(values).validate(), values
    print(f"✓ {len(invalid)} 个无效配置都被拒绝")

    assert SolverConfig.from_dict({'log_level': 'debug'}).validate()
    print("✓ 日志级别不区分大小写")
    return True


def test_config_from_env():
    """测试从环境变量加载配置"""
    from feigenbaum_solver.config import SolverConfig, get_solver_config

    print("\n" + "="*70)
    print("测试 4: 从环境变量加载配置")
    print("="*70)

    env = {
        'FEIGENBAUM_DIGITS': '45',
        'FEIGENBAUM_GUARD_DIGITS': '25',
        'FEIGENBAUM_INITIAL_ORDER': '16',
        'FEIGENBAUM_MAX_ORDER': '80',
        'LOG_LEVEL': 'DEBUG',
        'LOG_FILE': '',
    }
    with patch.dict(os.environ, env):
        config = SolverConfig.from_env()
        assert config.target_digits == 45
        assert config.guard_digits == 25
        assert config.initial_order == 16
        assert config.max_order == 80
        assert config.log_level == 'DEBUG'
        assert config.log_file is None
        assert config.precision().working_digits == 70
        assert get_solver_config() == config
    print("✓ 环境变量覆盖默认值")

    with patch.dict(os.environ, {'FEIGENBAUM_DIGITS': 'forty'}):
        try:
            SolverConfig.from_env()
            assert False, "应当抛出 ValueError"
        except ValueError as e:
            assert '环境变量' in str(e)
    print("✓ 非数字的环境变量被拒绝")
    return True


def test_get_solver_config():
    """测试便捷函数"""
    from feigenbaum_solver.config import get_solver_config

    print("\n" + "="*70)
    print("测试 5: 便捷函数")
    print("="*70)

    config = get_solver_config({'target_digits': 60})
    assert config.target_digits == 60
    print("✓ 字典配置加载成功")

    try:
        get_solver_config({'target_digits': 60, 'max_order': 10})
        assert False, "应当抛出 ValueError"
    except ValueError as e:
        assert '无效' in str(e)
    print("✓ 无效配置抛出 ValueError")
    return True


def test_run_config():
    """测试命令行运行配置"""
    from pydantic import ValidationError
    from feigenbaum_solver.config import RunConfig

    print("\n" + "="*70)
    print("测试 6: 命令行运行配置")
    print("="*70)

    run = RunConfig(command="solve", z=4, target_digits=20)
    assert run.branch == "principal"
    assert run.initial_n == 12
    assert run.format == "plain"
    assert run.samples == 101

    run = RunConfig(command="convert", checkpoint="z2.cheb", max_exponent=20)
    assert run.max_exponent == 20

    assert RunConfig(command="sample", branch="extra").z == 2
    # convert 的 z 由检查点决定，这里不检查 max_exponent 的整除性
    assert RunConfig(command="convert", checkpoint="z4.cheb", max_exponent=6).max_exponent == 6
    print("✓ 有效参数通过校验")

    invalid = [
        {'command': 'solve', 'z': 3},
        {'command': 'solve', 'z': 16},
        {'command': 'verify', 'z': 4, 'branch': 'extra'},
        {'command': 'solve', 'target_digits': 5},
        {'command': 'solve', 'initial_n': 20, 'max_n': 22},
        {'command': 'convert'},
        {'command': 'solve', 'z': 4, 'max_exponent': 6},
        {'command': 'sample', 'samples': 1},
        {'command': 'solve', 'format': 'csv'},
        {'command': 'plot'},
    ]
    for values in invalid:
        try:
            RunConfig(**values)
            assert False, f"应当拒绝: {values}"
        except ValidationError:
            pass
    print(f"✓ {len(invalid)} 组无效参数都被拒绝")
    return True


def test_logger():
    """测试日志工具"""
    from feigenbaum_solver.utils.logger import (
        get_logger,
        log_newton_iteration,
        log_order_result,
        setup_logger,
    )

    print("\n" + "="*70)
    print("测试 7: 日志工具")
    print("="*70)

    setup_logger(log_level="DEBUG", log_file=None, force=True)
    logger = get_logger("feigenbaum_solver.tests")
    logger.info("日志测试")
    log_newton_iteration(12, 0, None, 1e-3, 1e-4)
    log_order_result(16, "2.5029078750958928", "2.50290787509589", 3)
    print("✓ 日志函数调用成功")
    return True


def run_all_tests():
    """运行所有测试"""
    print("\n" + "="*70)
    print("Feigenbaum Solver - Config 模块测试套件")
    print("="*70)

    tests = [
        test_solver_config_defaults,
        test_solver_config_from_dict,
        test_solver_config_validation,
        test_config_from_env,
        test_get_solver_config,
        test_run_config,
        test_logger,
    ]

    passed = 0
    failed = 0

    for test in tests:
        try:
            if test():
                passed += 1
        except AssertionError as e:
            failed += 1
            print(f"\n✗ 测试失败: {test.__name__}")
            print(f"  错误: {e}")
        except Exception as e:
            failed += 1
            print(f"\n✗ 测试出错: {test.__name__}")
            print(f"  异常: {e}")

    print("\n" + "="*70)
    print("测试总结")
    print("="*70)
    print(f"通过: {passed}/{len(tests)}")
    print(f"失败: {failed}/{len(tests)}")

    if failed == 0:
        print("\n🎉 所有测试通过！")
    else:
        print(f"\n⚠ {failed} 个测试失败")

    print("="*70)


if __name__ == '__main__':
    run_all_tests()

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结果文件格式与命令行测试
"""

import unittest
import sys
import os
import io
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest.mock import patch

# 添加项目根目录到路径
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

DATA_DIR = Path(__file__).resolve().parent.parent / 'data'
SLOW_TESTS = os.getenv('FEIGENBAUM_SLOW_TESTS') == '1'


def run_cli(argv):
    """运行命令行，返回 (退出码, 标准输出, 标准错误)"""
    from feigenbaum_solver.main import main

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestTableFormat(unittest.TestCase):
    """测试结果文件的读写"""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.temp_dir.name)

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_wrap_line(self):
        """测试折行"""
        from feigenbaum_solver.utils.table_io import CONTINUATION_INDENT, WRAP_WIDTH, wrap_line

        self.assertEqual(wrap_line(2, "0.5"), ["  2  0.5"])
        self.assertEqual(wrap_line(10, "-1.85"), [" 10 -1.85"])

        value = "0." + "1234567890" * 20
        lines = wrap_line(4, value)
        self.assertEqual(len(lines), 3)
        self.assertTrue(all(line.startswith(CONTINUATION_INDENT) for line in lines[1:]))
        self.assertEqual(len(lines[0]), WRAP_WIDTH)
        self.assertEqual(len(lines[1]), WRAP_WIDTH)
        self.assertTrue(all(len(line) <= WRAP_WIDTH for line in lines))
        merged = lines[0][4:] + "".join(line.strip() for line in lines[1:])
        self.assertEqual(merged.strip(), value)

    def test_checkpoint_text_stable(self):
        """测试检查点读回后再次写出文本不变"""
        from feigenbaum_solver.core.bignum import Precision
        from feigenbaum_solver.core.refdata import lookup, reference_series
        from feigenbaum_solver.utils.table_io import (
            format_checkpoint, read_checkpoint, write_checkpoint
        )

        series = reference_series(lookup(4), Precision.from_working_digits(60))
        path = write_checkpoint(series, self.root / "z4.cheb")
        text = path.read_text(encoding='utf-8')
        self.assertTrue(text.startswith("z=4 d=2 N=51 digits=60\n"))

        again = read_checkpoint(path)
        self.assertEqual(again.precision.working_digits, 60)
        self.assertEqual(again.order_n, series.order_n)
        self.assertEqual(format_checkpoint(again), text)

    def test_wrapped_checkpoint(self):
        """测试 wrapped 格式可以读回"""
        from feigenbaum_solver.core.bignum import Precision
        from feigenbaum_solver.core.refdata import lookup, reference_series
        from feigenbaum_solver.utils.table_io import (
            FORMAT_WRAPPED, format_checkpoint, parse_checkpoint_text
        )

        series = reference_series(lookup(2), Precision.from_working_digits(150))
        plain = parse_checkpoint_text(format_checkpoint(series))
        wrapped_text = format_checkpoint(series, FORMAT_WRAPPED)
        self.assertTrue(any(line.startswith(" " * 7) for line in wrapped_text.splitlines()))
        self.assertTrue(all(len(line) <= 90 for line in wrapped_text.splitlines()))
        self.assertTrue(any(len(line) == 90 for line in wrapped_text.splitlines()))
        self.assertEqual(parse_checkpoint_text(wrapped_text), plain)

    def test_checkpoint_errors(self):
        """测试格式错误报告行号"""
        from feigenbaum_solver.core.exceptions import CheckpointFormatError
        from feigenbaum_solver.utils.table_io import parse_checkpoint_text

        cases = [
            ("", 1),
            ("N=2\n0 1\n", 1),
            ("z=3 d=1 N=1 digits=30\n0 1\n", 1),
            ("z=2 d=1 N=2 digits=30\n0 1.5\n4 0.1\n", 3),
            ("z=2 d=1 N=2 digits=30\n0 1.5\n2 abc\n", 3),
            ("z=2 d=1 N=2 digits=30\n0 1.5 7\n2 0\n", 2),
            ("# 注释\nz=2 d=1 N=3 digits=30\n0 1.5\n2 0.1\n", 4),
        ]
        for text, line_number in cases:
            with self.assertRaises(CheckpointFormatError, msg=repr(text)) as context:
                parse_checkpoint_text(text, "bad.cheb")
            self.assertEqual(context.exception.line_number, line_number, repr(text))

    def test_comments_and_unicode_minus(self):
        """测试注释行与 Unicode 负号"""
        from feigenbaum_solver.utils.table_io import parse_checkpoint_text

        header, rows = parse_checkpoint_text("# 注释\nz=2 d=1 N=2 digits=30\n\n0 1\n2 −0.5\n")
        self.assertEqual(header, {'z': 2, 'd': 1, 'N': 2, 'digits': 30})
        self.assertEqual(rows, [(0, "1"), (2, "-0.5")])

    def test_taylor_table_skips_zero(self):
        """测试 Taylor 表不输出为 0 的系数"""
        from feigenbaum_solver.core.bignum import Precision
        from feigenbaum_solver.core.series import TaylorEntry, TaylorTable
        from feigenbaum_solver.utils.table_io import format_taylor_table, parse_table_text

        real = Precision(target_digits=30).real
        table = TaylorTable(z=2, entries=[
            TaylorEntry(2, real("-1.5"), "-1.5"),
            TaylorEntry(4, real(0), "0"),
            TaylorEntry(6, real("0.25"), "0.25"),
        ])
        text = format_taylor_table(table)
        self.assertEqual(text, "2 -1.5\n6 0.25\n")
        self.assertEqual(parse_table_text(text), [(2, "-1.5"), (6, "0.25")])
        self.assertEqual(format_taylor_table(TaylorTable(z=2)), "")

    def test_constant_file(self):
        """测试常数文件"""
        from feigenbaum_solver.utils.table_io import format_constant, write_text

        path = write_text(self.root / "nested" / "c.constant", format_constant("2.5029078750958"))
        self.assertEqual(path.read_text(encoding='utf-8'), "F = 2.5029078750958\n")

    def test_samples(self):
        """测试采样数据"""
        from feigenbaum_solver.core.bignum import Precision
        from feigenbaum_solver.core.exceptions import DomainError
        from feigenbaum_solver.core.series import FeigenbaumSeries
        from feigenbaum_solver.utils.table_io import format_samples

        series = FeigenbaumSeries.from_coefficients(2, ["2", "0"], Precision(target_digits=30))
        self.assertEqual(format_samples(series, 3), "0 1\n0.5 1\n1 1\n")

        parabola = FeigenbaumSeries.from_coefficients(2, ["1", "-0.5"], Precision(target_digits=30))
        self.assertEqual(format_samples(parabola, 3), "0 1\n0.5 0.75\n1 0\n")

        with self.assertRaises(DomainError):
            format_samples(series, 1)


class CliTestCase(unittest.TestCase):
    """命令行测试基类: 不写日志文件，输出目录放在临时目录"""

    def setUp(self):
        self.env = patch.dict(os.environ, {'LOG_FILE': '', 'LOG_LEVEL': 'WARNING'})
        self.env.start()
        self.temp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.temp_dir.name)

    def tearDown(self):
        self.temp_dir.cleanup()
        self.env.stop()

    def write(self, name, text):
        path = self.root / name
        path.write_text(text, encoding='utf-8')
        return str(path)


class TestUsage(CliTestCase):
    """测试参数错误与文件错误的退出码"""

    def test_odd_z(self):
        """测试奇数 z"""
        code, _, err = run_cli(["solve", "--z", "3"])
        self.assertEqual(code, 2)
        self.assertIn("z", err)

    def test_verify_odd_z(self):
        """测试 verify 拒绝奇数 z"""
        self.assertEqual(run_cli(["verify", "--z", "3"])[0], 2)

    def test_extra_branch_requires_z2(self):
        """测试 extra 分支只用于 z=2"""
        code, _, _ = run_cli(["verify", "--z", "4", "--branch", "extra"])
        self.assertEqual(code, 2)

    def test_unknown_command(self):
        """测试未知子命令与 --help"""
        code, _, _ = run_cli(["bogus"])
        self.assertEqual(code, 2)
        code, out, _ = run_cli(["--help"])
        self.assertEqual(code, 0)
        self.assertIn("solve", out)

    def test_bad_orders(self):
        """测试阶数与采样点数的范围"""
        self.assertEqual(run_cli(["solve", "--initial-order", "4"])[0], 2)
        self.assertEqual(run_cli(["solve", "--initial-order", "20", "--max-order", "22"])[0], 2)
        self.assertEqual(run_cli(["sample", "--samples", "1"])[0], 2)
        self.assertEqual(run_cli(["solve", "--digits", "5"])[0], 2)

    def test_missing_checkpoint(self):
        """测试检查点不存在"""
        code, _, err = run_cli(["convert", str(self.root / "missing.cheb")])
        self.assertEqual(code, 5)
        self.assertIn("文件错误", err)

    def test_malformed_checkpoint(self):
        """测试检查点格式错误"""
        path = self.write("bad.cheb", "z=2 d=1 N=3 digits=30\n0 2\n2 0\n")
        code, _, err = run_cli(["convert", path])
        self.assertEqual(code, 5)
        self.assertIn("bad.cheb", err)

    def test_invalid_environment(self):
        """测试环境变量无效"""
        with patch.dict(os.environ, {'FEIGENBAUM_DIGITS': 'abc'}):
            self.assertEqual(run_cli(["sample"])[0], 2)

    def test_convert_exponent_uses_checkpoint_z(self):
        """测试 convert 按检查点的 z 检查 max_exponent"""
        path = str(DATA_DIR / "z4_principal.cheb")
        code, _, err = run_cli(["convert", path, "--max-exponent", "6"])
        self.assertEqual(code, 2)
        self.assertIn("z=4", err)
        self.assertNotIn("z=2", err)

        code, out, _ = run_cli(["convert", str(DATA_DIR / "z2_principal.cheb"), "--max-exponent", "6"])
        self.assertEqual(code, 0)
        self.assertEqual([line.split()[0] for line in out.splitlines()], ["2", "4", "6"])


class TestConvert(CliTestCase):
    """测试 convert 子命令"""

    def test_trivial(self):
        """测试常数解没有非零 Taylor 系数"""
        path = self.write("trivial.cheb", "z=2 d=1 N=3 digits=30\n0 2\n2 0\n4 0\n")
        code, out, _ = run_cli(["convert", path])
        self.assertEqual(code, 0)
        self.assertEqual(out, "")

    def test_parabola(self):
        """测试 g(x) = 1 - x^2"""
        path = self.write("parabola.cheb", "z=2 d=1 N=2 digits=30\n0 1\n2 -0.5\n")
        code, out, _ = run_cli(["convert", path])
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(len(lines), 1)
        exponent, value = lines[0].split()
        self.assertEqual(exponent, "2")
        self.assertEqual(float(value), -1.0)

    def test_reference_z2(self):
        """测试 z=2 参考检查点的 b_2"""
        code, out, _ = run_cli(["convert", str(DATA_DIR / "z2_principal.cheb")])
        self.assertEqual(code, 0)
        self.assertTrue(out.splitlines()[0].startswith("2 -1.527632997"))

    def test_reference_z10(self):
        """测试 z=10 参考检查点的 b_10"""
        code, out, _ = run_cli(["convert", str(DATA_DIR / "z10_principal.cheb")])
        self.assertEqual(code, 0)
        self.assertTrue(out.splitlines()[0].startswith("10 -1.85171401347"))

    def test_truncated_warning(self):
        """测试最大指数超出范围时的警告"""
        path = self.write("parabola.cheb", "z=2 d=1 N=2 digits=30\n0 1\n2 -0.5\n")
        out_file = self.root / "parabola.taylor"
        code, out, err = run_cli(["convert", path, "--max-exponent", "6", "--out", str(out_file)])
        self.assertEqual(code, 0)
        self.assertEqual(out, "")
        self.assertIn("max_exponent=6", err)
        self.assertTrue(out_file.read_text(encoding='utf-8').startswith("2 -1"))

    def test_against(self):
        """测试两个阶数之间的稳定 Taylor 系数"""
        lines = (DATA_DIR / "z4_principal.cheb").read_text(encoding='utf-8').splitlines()
        header = lines[0].replace("N=51", "N=40")
        low = self.write("z4_low.cheb", "\n".join([header] + lines[1:41]) + "\n")
        code, out, _ = run_cli([
            "convert", str(DATA_DIR / "z4_principal.cheb"), "--against", low, "--format", "wrapped"
        ])
        self.assertEqual(code, 0)
        first = out.splitlines()[0]
        self.assertTrue(first.startswith("  4 -1.834107907009410664"), first)


class TestSample(CliTestCase):
    """测试 sample 子命令"""

    def test_reference_principal(self):
        """测试主分支参考解的采样"""
        code, out, _ = run_cli(["sample", "--samples", "5"])
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(len(lines), 5)
        self.assertEqual(lines[0], "0 1")
        self.assertTrue(lines[-1].startswith("1 -0.3995"))

    def test_reference_extra(self):
        """测试 extra 分支 g(1) > 0"""
        out_file = self.root / "extra.dat"
        code, _, _ = run_cli(["sample", "--branch", "extra", "--samples", "11", "--out", str(out_file)])
        self.assertEqual(code, 0)
        lines = out_file.read_text(encoding='utf-8').splitlines()
        self.assertEqual(len(lines), 11)
        x, value = lines[-1].split()
        self.assertEqual(x, "1")
        self.assertGreater(float(value), 0)

    def test_from_checkpoint(self):
        """测试从检查点采样"""
        path = self.write("parabola.cheb", "z=2 d=1 N=2 digits=30\n0 1\n2 -0.5\n")
        code, out, _ = run_cli(["sample", path, "--samples", "3"])
        self.assertEqual(code, 0)
        self.assertEqual(out, "0 1\n0.5 0.75\n1 0\n")


class TestSolve(CliTestCase):
    """测试 solve 与 verify 子命令（低精度）"""

    def test_solve_and_resume(self):
        """测试求解写出四个文件，并可以从检查点续算"""
        from feigenbaum_solver.utils.table_io import read_checkpoint, read_table

        out_dir = self.root / "results"
        code, out, _ = run_cli(["solve", "--digits", "12", "--out", str(out_dir)])
        self.assertEqual(code, 0)
        self.assertIn("z=2 branch=principal 1/lambda=2.50290787", out)

        for suffix in ("cheb", "t", "taylor", "constant"):
            self.assertTrue((out_dir / f"z2_principal.{suffix}").exists(), suffix)
        constant = (out_dir / "z2_principal.constant").read_text(encoding='utf-8')
        self.assertTrue(constant.startswith("F = 2.50290787"))
        taylor = dict(read_table(out_dir / "z2_principal.taylor"))
        self.assertTrue(taylor[2].startswith("-1.5276329970"))
        t_rows = dict(read_table(out_dir / "z2_principal.t"))
        self.assertTrue(t_rows[0].startswith("0.56579086"))

        checkpoint = out_dir / "z2_principal.cheb"
        self.assertGreaterEqual(read_checkpoint(checkpoint).order_n, 16)

        resumed = self.root / "resumed"
        code, out, _ = run_cli([
            "solve", "--digits", "12", "--resume", str(checkpoint),
            "--out", str(resumed), "--format", "wrapped"
        ])
        self.assertEqual(code, 0)
        self.assertIn("1/lambda=2.50290787", out)
        self.assertTrue((resumed / "z2_principal.cheb").exists())

    def test_resume_wrong_z(self):
        """测试续算检查点的 z 与参数不一致"""
        path = self.write("parabola.cheb", "z=2 d=1 N=12 digits=30\n" + "".join(
            f"{2 * k} {'1' if k == 0 else '0'}\n" for k in range(12)
        ))
        code, _, _ = run_cli(["solve", "--z", "4", "--digits", "12", "--resume", path,
                              "--out", str(self.root / "r")])
        self.assertEqual(code, 2)

    def test_verify_low_precision(self):
        """测试 z=2 主分支 10 位验证"""
        code, out, err = run_cli(["verify", "--digits", "10"])
        self.assertEqual(code, 0, err)
        self.assertIn("verify 通过", out)


@unittest.skipUnless(SLOW_TESTS, "设置 FEIGENBAUM_SLOW_TESTS=1 运行高精度命令行测试")
class TestVerifyReference(CliTestCase):
    """与参考数据比较的高精度验证"""

    def test_z2_principal(self):
        """测试 z=2 主分支 40 位"""
        code, out, err = run_cli(["verify", "--digits", "40"])
        self.assertEqual(code, 0, err)

    def test_z2_extra(self):
        """测试 z=2 extra 分支"""
        code, out, err = run_cli(["verify", "--branch", "extra", "--digits", "20"])
        self.assertEqual(code, 0, err)

    def test_z4(self):
        """测试 z=4"""
        code, out, err = run_cli(["verify", "--z", "4", "--digits", "20"])
        self.assertEqual(code, 0, err)

    def test_solve_z6(self):
        """测试 z=6 求解 20 位"""
        code, out, err = run_cli(["solve", "--z", "6", "--digits", "20", "--out", str(self.root)])
        self.assertEqual(code, 0, err)
        self.assertIn("1/lambda=1.46774245031990094", out)

    def test_large_z(self):
        """测试 z = 6..14"""
        for z, digits in ((6, 30), (8, 20), (10, 15), (12, 15), (14, 10)):
            code, out, err = run_cli(["verify", "--z", str(z), "--digits", str(digits)])
            self.assertEqual(code, 0, f"z={z}: {err}")


if __name__ == '__main__':
    unittest.main()

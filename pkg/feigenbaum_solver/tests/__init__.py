"""
测试模块
"""

"""
有限群一致生成引理工作台

提供：
1. 有限域与矩阵运算
2. 置换群、线性群与形式空间上的分解构造
3. 覆盖代数与逃逸元素
4. 命令行验证入口
"""

from src.core.settings import Settings, get_settings

__version__ = "1.0.0"
__author__ = "PQJ"

__all__ = [
    # 版本信息
    "__version__",
    "__author__",

    # 配置
    "Settings",
    "get_settings",
]

"""
文件命名和路径管理模块
统一管理普查缓存、见证矩阵与表格导出的文件命名
"""

import os
import logging
from typing import Optional

logger = logging.getLogger(__name__)


def cache_file_name(key) -> str:
    """普查缓存文件名，key 为 CensusKey"""
    cap = "inf" if key.gamma_cap is None else str(key.gamma_cap)
    return f"census_q{key.q}_d{key.delta}_n{key.n}_k{key.k}_g{cap}.txt"


class NamingManager:
    """统一的文件命名和路径管理器"""

    def __init__(self, config_manager):
        self.config_manager = config_manager

    def cache_dir(self, override: Optional[str] = None) -> str:
        """普查缓存目录：命令行 > 环境变量 > 配置文件"""
        if override:
            return override
        return self.config_manager.get_census_config()["cache_dir"]

    def witness_path(self, out: str) -> str:
        """见证矩阵写在 --out 旁边"""
        suffix = self.config_manager.get_output_config().get("witness_suffix", ".witness.txt")
        return f"{out}{suffix}"

    @staticmethod
    def ensure_directory(path: str) -> None:
        """确保文件所在目录存在"""
        directory = os.path.dirname(os.path.abspath(path))
        if directory and not os.path.exists(directory):
            os.makedirs(directory, exist_ok=True)
            logger.debug(f"创建目录: {directory}")

import copy
import json
import os
import logging
from typing import Dict, Any

import jsonschema

logger = logging.getLogger(__name__)

CACHE_DIR_ENV = "DIVCODES_CACHE_DIR"

_NULLABLE_INT = {"type": ["integer", "null"], "minimum": 0}
_NULLABLE_NUMBER = {"type": ["number", "null"], "minimum": 0}

CONFIG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "census": {
            "type": "object",
            "properties": {
                "budget_nodes": _NULLABLE_INT,
                "budget_seconds": _NULLABLE_NUMBER,
                "threads": {"type": ["integer", "null"], "minimum": 1},
                "cache_dir": {"type": "string"},
                "mitm_row_limit": {"type": "integer", "minimum": 1},
            },
        },
        "codes": {
            "type": "object",
            "properties": {"weight_enumeration_cap": {"type": "integer", "minimum": 1}},
        },
        "gamma": {
            "type": "object",
            "properties": {
                "witness_search": {"type": "boolean"},
                "witness_search_nodes": _NULLABLE_INT,
                "witness_search_seconds": _NULLABLE_NUMBER,
            },
        },
        "logging": {
            "type": "object",
            "properties": {
                "level": {"enum": ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]},
                "format": {"type": "string"},
                "datefmt": {"type": "string"},
            },
        },
        "output": {
            "type": "object",
            "properties": {
                "default_format": {"enum": ["json", "csv", "text"]},
                "witness_suffix": {"type": "string", "minLength": 1},
            },
        },
    },
}


class ConfigError(ValueError):
    """配置文件不符合模式"""


class ConfigManager:
    """配置管理器，统一管理普查预算、缓存目录、日志与输出格式"""

    def __init__(self, config_path: str = "./config.json"):
        self.config_path = config_path
        self._default_config = self._get_default_config()
        self.config = self._load_or_create_config()

    def _get_default_config(self) -> Dict[str, Any]:
        """获取默认配置"""
        return {
            "census": {
                "budget_nodes": None,  # 提升节点上限，None 为不限
                "budget_seconds": None,  # 墙钟时间上限（秒）
                "threads": None,  # 线程数，None 为 CPU 核数
                "cache_dir": "cache",  # 普查缓存目录，可被环境变量 DIVCODES_CACHE_DIR 覆盖
                "mitm_row_limit": 1 << 21,  # 中间相遇单侧表行数上限
            },
            "codes": {
                "weight_enumeration_cap": 1 << 26,  # 直接枚举码字的 q^k 上限
            },
            "gamma": {
                "witness_search": True,  # 没有显式构造时回退到普查搜索见证
                "witness_search_nodes": 200000,
                "witness_search_seconds": 60,
            },
            "logging": {
                "level": "INFO",
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                "datefmt": "%H:%M:%S",
            },
            "output": {
                "default_format": "json",
                "witness_suffix": ".witness.txt",
            },
        }

    def _load_or_create_config(self) -> Dict[str, Any]:
        """加载或创建配置文件"""
        if os.path.exists(self.config_path):
            try:
                logger.info(f"加载配置文件: {self.config_path}")
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    loaded_config = json.load(f)
                self.validate(loaded_config)
                merged_config = self._merge_config(self._default_config, loaded_config)
                logger.info("配置文件加载成功")
                return merged_config
            except (OSError, json.JSONDecodeError, ConfigError) as e:
                logger.error(f"加载配置文件失败: {e}")
                logger.info("使用默认配置")
                return copy.deepcopy(self._default_config)
        else:
            try:
                logger.info(f"配置文件不存在，创建默认配置: {self.config_path}")
                self._save_config(self._default_config)
                logger.info("默认配置文件创建成功")
            except OSError as e:
                logger.error(f"创建配置文件失败: {e}")
                logger.info("使用默认配置（内存中）")
            return copy.deepcopy(self._default_config)

    @staticmethod
    def validate(config: Dict[str, Any]) -> None:
        try:
            jsonschema.validate(config, CONFIG_SCHEMA)
        except jsonschema.ValidationError as e:
            path = "/".join(str(p) for p in e.absolute_path) or "<root>"
            raise ConfigError(f"{path}: {e.message}") from e

    def _merge_config(self, default: Dict[str, Any], loaded: Dict[str, Any]) -> Dict[str, Any]:
        """递归合并配置，以加载的配置为优先"""
        merged = copy.deepcopy(default)

        for key, value in loaded.items():
            if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
                merged[key] = self._merge_config(merged[key], value)
            else:
                merged[key] = value

        return merged

    def _save_config(self, config: Dict[str, Any]) -> None:
        """保存配置到文件"""
        config_dir = os.path.dirname(os.path.abspath(self.config_path))
        if config_dir and not os.path.exists(config_dir):
            os.makedirs(config_dir, exist_ok=True)

        with open(self.config_path, 'w', encoding='utf-8') as f:
            json.dump(config, f, indent=2, ensure_ascii=False)

    def get_census_config(self) -> Dict[str, Any]:
        """获取普查配置，环境变量覆盖缓存目录"""
        census_config = self.config["census"].copy()
        if os.environ.get(CACHE_DIR_ENV):
            census_config["cache_dir"] = os.environ[CACHE_DIR_ENV]
        return census_config

    def get_codes_config(self) -> Dict[str, Any]:
        return self.config["codes"]

    def get_gamma_config(self) -> Dict[str, Any]:
        return self.config["gamma"]

    def get_logging_config(self) -> Dict[str, Any]:
        return self.config["logging"]

    def get_output_config(self) -> Dict[str, Any]:
        return self.config["output"]

    def update_config(self, section: str, updates: Dict[str, Any]) -> None:
        """更新配置的某个部分"""
        if section in self.config and isinstance(self.config[section], dict):
            candidate = copy.deepcopy(self.config)
            candidate[section].update(updates)
        else:
            candidate = {**self.config, section: updates}
        self.validate(candidate)
        self.config = candidate

        logger.debug(f"配置已更新: {section}")

    def save_current_config(self) -> None:
        """保存当前配置到文件"""
        try:
            self._save_config(self.config)
            logger.info(f"配置已保存到: {self.config_path}")
        except OSError as e:
            logger.error(f"保存配置失败: {e}")

    def reload_config(self) -> None:
        """重新加载配置文件"""
        logger.info("重新加载配置文件")
        self.config = self._load_or_create_config()


# 全局配置管理器实例（仅在main.py中使用）
_config_manager = None


def get_config_manager(config_path: str = "./config.json") -> ConfigManager:
    """获取配置管理器实例（单例模式）"""
    global _config_manager
    if _config_manager is None or _config_manager.config_path != config_path:
        _config_manager = ConfigManager(config_path)
    return _config_manager

"""
应用配置模块

使用 Pydantic BaseModel 实现配置管理，支持：
- 从 TOML 文件加载用户配置
- 仅保存用户修改过的配置项
- 默认数值参数定义在代码中
"""

import os
from pathlib import Path
from typing import Any

import tomli
import tomli_w
from pydantic import BaseModel, Field

from src.utils.logging_config import logger


class Config(BaseModel):
    """应用配置类"""

    # ============================================================
    # 基础配置
    # ============================================================
    save_dir: str = Field(default="saves", description="保存目录")

    # ============================================================
    # 格点与滤波器
    # ============================================================
    lattice_radius: int = Field(default=8, description="格点截断半径 L")
    n_range: int = Field(default=64, description="滤波器系数截断窗口 |n| <= n_range")
    onc_tol: float = Field(default=1e-10, description="ONC / MONC 判定容差")

    # ============================================================
    # 相关性条件 (r1)-(r4)
    # ============================================================
    r1_tol: float = Field(default=1e-10, description="(r1) 容差")
    r1_lmax: int = Field(default=8, description="(r1) 检验的最大 |l|")
    r3_tol: float = Field(default=1e-10, description="(r3) 容差")
    r4_grid: int = Field(default=4096, description="(r4) 频率网格点数")
    r4_delta: float = Field(default=1e-6, description="(r4) 下界阈值")
    omega_grid: int = Field(default=1025, description="种子条件 vi3 的频率网格点数")

    # ============================================================
    # 正交化技巧 (ONT)
    # ============================================================
    symbol_grid: int = Field(default=256, description="符号函数采样网格 n1 = n2")
    singular_rel_eps: float = Field(default=1e-8, description="奇异判定的相对阈值（乘以符号最大值）")
    ont_seed_span: float = Field(default=24.0, description="ont_seed 输出网格的半宽")
    ont_seed_step: float = Field(default=0.005, description="ont_seed 输出网格步长")

    # ============================================================
    # 级联算法
    # ============================================================
    cascade_iterations: int = Field(default=12, description="级联迭代次数")
    cascade_level: int = Field(default=10, description="二进网格分辨率 2^-level")
    ortho_kmax: int = Field(default=4, description="平移正交性检验的最大 |k|")
    ortho_tol: float = Field(default=1e-10, description="平移正交性容差")

    # ============================================================
    # 量子力学交叉验证
    # ============================================================
    quad_radius: float = Field(default=8.0, description="二维积分截断半径")
    quad_nodes: int = Field(default=257, description="每个坐标轴的积分节点数")
    quad_tail_tol: float = Field(default=1e-5, description="边界尾部相对阈值")
    crosscheck_tol: float = Field(default=1e-4, description="交叉验证误差容差")
    crosscheck_lmax: int = Field(default=2, description="交叉验证的最大 |l1|, |l2|")

    # 内部状态
    _config_file: Path | None = None

    model_config = {"arbitrary_types_allowed": True, "extra": "allow"}

    def __init__(self, **data):
        super().__init__(**data)
        self._setup_paths()
        self._load_user_config()

    def _setup_paths(self):
        """设置配置文件路径"""
        self.save_dir = os.getenv("SAVE_DIR") or self.save_dir
        self._config_file = Path(self.save_dir) / "config" / "base.toml"

    def _load_user_config(self):
        """从 TOML 文件加载用户配置"""
        if not self._config_file or not self._config_file.exists():
            logger.debug(f"Config file not found, using defaults: {self._config_file}")
            return

        logger.info(f"Loading config from {self._config_file}")
        try:
            with open(self._config_file, "rb") as f:
                user_config = tomli.load(f)

            self.update(user_config)

        except Exception as e:
            logger.error(f"Failed to load config from {self._config_file}: {e}")

    def save(self):
        """保存配置到 TOML 文件（仅保存用户修改的字段）"""
        if not self._config_file:
            logger.warning("Config file path not set")
            return

        logger.info(f"Saving config to {self._config_file}")

        # 获取默认配置
        default_config = Config.model_construct()

        # 对比当前配置和默认配置，找出用户修改的字段
        user_modified = {}
        for field_name in Config.model_fields.keys():
            current_value = getattr(self, field_name)
            default_value = getattr(default_config, field_name)

            # 如果值不同，说明用户修改了
            if current_value != default_value:
                user_modified[field_name] = current_value

        # 写入 TOML 文件
        try:
            self._config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self._config_file, "wb") as f:
                tomli_w.dump(user_modified, f)
            logger.info(f"Config saved to {self._config_file}")
        except Exception as e:
            logger.error(f"Failed to save config to {self._config_file}: {e}")

    def dump_config(self) -> dict[str, Any]:
        """导出配置为字典（写入报告的来源信息）"""
        return self.model_dump(exclude={"save_dir"})

    def update(self, other: dict):
        """批量更新配置"""
        for key, value in other.items():
            if key in Config.model_fields:
                setattr(self, key, value)
            else:
                logger.warning(f"Unknown config key: {key}")


# 全局配置实例
config = Config()

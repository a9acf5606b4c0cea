"""
种子描述文件（JSON）的解析与序列化

    {"domain": "position", "kind": "piecewise_constant",
     "segments": [{"start_a": "0", "end_a": "1/2", "re": 0.0, "im": 0.0, "mu": 0.0}]}

"start_a"/"end_a" 为以 a 为单位的有理数字符串。
"""

import json
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.exceptions import SeedSpecError
from src.seedfn.base import SEGMENT_KINDS, Domain, SeedFunction, SeedKind, Segment, to_fraction
from src.seedfn.presets import SeedPresetFactory
from src.utils import hashstr, logger

PRESET_PREFIX = "preset:"


class SegmentSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    start_a: str
    end_a: str
    re: float = 0.0
    im: float = 0.0
    mu: float = 0.0
    harmonic: int = 0

    @field_validator("start_a", "end_a", mode="before")
    @classmethod
    def _rational(cls, value: Any) -> str:
        return str(to_fraction(value))


class SeedSpec(BaseModel):
    """种子描述文件的模式"""

    model_config = ConfigDict(extra="forbid")

    domain: Domain
    kind: SeedKind
    name: str = ""
    segments: list[SegmentSpec] = Field(default_factory=list)

    # 高斯
    center: float = 0.0
    width: float = 1.0
    amplitude_re: float = 1.0
    amplitude_im: float = 0.0
    mu: float = 0.0

    # 采样
    grid: list[float] | None = None
    grid_start: float | None = None
    grid_step: float | None = None
    samples_re: list[float] = Field(default_factory=list)
    samples_im: list[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_kind(self) -> "SeedSpec":
        if self.kind is SeedKind.SEGMENT_TRANSFORM:
            raise ValueError("segment_transform is derived by fourier(), not a spec kind")
        if self.kind is SeedKind.SAMPLED:
            if self.samples_im and len(self.samples_im) != len(self.samples_re):
                raise ValueError("samples_re and samples_im must have the same length")
            if self.grid is None and (self.grid_start is None or self.grid_step is None):
                raise ValueError("sampled seeds need either 'grid' or 'grid_start' + 'grid_step'")
            if self.grid is not None and len(self.grid) != len(self.samples_re):
                raise ValueError("grid and samples must have the same length")
        return self

    def to_seed(self) -> SeedFunction:
        if self.kind in SEGMENT_KINDS:
            segments = tuple(
                Segment(s.start_a, s.end_a, complex(s.re, s.im), mu=s.mu, harmonic=s.harmonic) for s in self.segments
            )
            return SeedFunction(domain=self.domain, kind=self.kind, segments=segments, name=self.name)

        if self.kind is SeedKind.GAUSSIAN:
            return SeedFunction(
                domain=self.domain,
                kind=self.kind,
                center=self.center,
                width=self.width,
                amplitude=complex(self.amplitude_re, self.amplitude_im),
                mu=self.mu,
                name=self.name,
            )

        samples = np.asarray(self.samples_re, dtype=float) + 1j * np.asarray(
            self.samples_im or [0.0] * len(self.samples_re), dtype=float
        )
        if self.grid is not None:
            grid = np.asarray(self.grid, dtype=float)
            steps = np.diff(grid)
            if steps.size == 0 or np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
                raise SeedSpecError("Sampled grid must be strictly increasing and uniform")
            start, step = float(grid[0]), float(steps[0])
        else:
            start, step = self.grid_start, self.grid_step
        return SeedFunction(
            domain=self.domain, kind=self.kind, grid_start=start, grid_step=step, samples=samples, name=self.name
        )


def seed_to_dict(seed: SeedFunction) -> dict[str, Any]:
    """种子的规范化字典表示（报告来源信息与摘要使用）"""
    data: dict[str, Any] = {"domain": seed.domain.value, "kind": seed.kind.value, "name": seed.name}
    if seed.kind in SEGMENT_KINDS:
        data["segments"] = [
            {
                "start_a": str(seg.start_a),
                "end_a": str(seg.end_a),
                "re": seg.amplitude.real,
                "im": seg.amplitude.imag,
                "mu": seg.mu,
                "harmonic": seg.harmonic,
            }
            for seg in seed.segments
        ]
        if seed.kind is SeedKind.SEGMENT_TRANSFORM:
            data["inverse"] = seed.inverse
    elif seed.kind is SeedKind.GAUSSIAN:
        data.update(
            center=seed.center,
            width=seed.width,
            amplitude_re=seed.amplitude.real,
            amplitude_im=seed.amplitude.imag,
            mu=seed.mu,
        )
    else:
        data.update(
            grid_start=seed.grid_start,
            grid_step=seed.grid_step,
            samples_re=seed.samples.real.tolist(),
            samples_im=seed.samples.imag.tolist(),
        )
    return data


def seed_digest(seed: SeedFunction) -> str:
    return hashstr(json.dumps(seed_to_dict(seed), sort_keys=True))


def parse_seed_spec(data: dict[str, Any]) -> SeedFunction:
    try:
        return SeedSpec.model_validate(data).to_seed()
    except ValidationError as e:
        raise SeedSpecError(f"Invalid seed specification: {e.error_count()} error(s): {e.errors()[0]['msg']}") from e


def load_seed_spec(path: str | Path) -> SeedFunction:
    """
    从 JSON 文件加载种子

    Raises:
        SeedSpecError: 文件不存在、JSON 格式错误或模式校验失败
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise SeedSpecError(f"Cannot read seed spec {path}: {e}") from e

    if not isinstance(data, dict):
        raise SeedSpecError(f"Seed spec {path} must be a JSON object")

    seed = parse_seed_spec(data)
    logger.debug(f"Loaded {seed.kind.value} seed from {path}")
    return seed


def resolve_seed(source: str) -> SeedFunction:
    """解析 `preset:NAME` 或 JSON 文件路径"""
    if source.startswith(PRESET_PREFIX):
        return SeedPresetFactory.create(source[len(PRESET_PREFIX) :])
    return load_seed_spec(source)

"""
种子函数的数据类型

种子函数 h(s)（位置域）或 ĥ(p)（频率域）的符号表示与采样表示。
分段端点以格距 a 为单位的有理数存储，格点平移后边界仍精确对齐。
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from src.exceptions import SeedSpecError

# 格距 a = 2√π，a² = 4π
A = 2.0 * math.sqrt(math.pi)
# 格点频率单位 ω0 = 2π/a = a/2
OMEGA0 = A / 2.0


class Domain(str, Enum):
    POSITION = "position"
    FREQUENCY = "frequency"

    def toggled(self) -> "Domain":
        return Domain.FREQUENCY if self is Domain.POSITION else Domain.POSITION


class SeedKind(str, Enum):
    PIECEWISE_CONSTANT = "piecewise_constant"
    PIECEWISE_MODULATED = "piecewise_modulated"
    GAUSSIAN = "gaussian"
    SAMPLED = "sampled"
    # 分段函数的解析 Fourier 变换（惰性求值）
    SEGMENT_TRANSFORM = "segment_transform"


SEGMENT_KINDS = (SeedKind.PIECEWISE_CONSTANT, SeedKind.PIECEWISE_MODULATED, SeedKind.SEGMENT_TRANSFORM)
SYMBOLIC_KINDS = (*SEGMENT_KINDS, SeedKind.GAUSSIAN)


def to_fraction(value) -> Fraction:
    """把 "1/2"、0.5、Fraction 等统一转换为 Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise SeedSpecError(f"Invalid rational endpoint: {value!r}")
    try:
        if isinstance(value, float):
            return Fraction(value).limit_denominator(1 << 20)
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise SeedSpecError(f"Invalid rational endpoint: {value!r}") from e


@dataclass(frozen=True)
class LatticeParams:
    """格点参数，a 固定为 2√π"""

    L: int = 8
    a: float = A

    def __post_init__(self):
        if abs(self.a * self.a - 4.0 * math.pi) > 1e-12:
            raise SeedSpecError(f"Lattice spacing must satisfy a^2 = 4*pi, got a = {self.a!r}")
        if int(self.L) != self.L or self.L < 1:
            raise SeedSpecError(f"Lattice radius must be a positive integer, got L = {self.L!r}")

    @property
    def size(self) -> int:
        return 2 * self.L + 1

    def indices(self) -> range:
        return range(-self.L, self.L + 1)


@dataclass(frozen=True)
class Segment:
    """区间 [start_a·a, end_a·a) 上的 c·e^{i(mu + harmonic·ω0)s}

    harmonic 是 ω0 的整数倍部分，与格点精确对齐；mu 为其余的自由调制频率。
    """

    start_a: Fraction
    end_a: Fraction
    amplitude: complex = 1.0 + 0.0j
    mu: float = 0.0
    harmonic: int = 0

    def __post_init__(self):
        object.__setattr__(self, "start_a", to_fraction(self.start_a))
        object.__setattr__(self, "end_a", to_fraction(self.end_a))
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "mu", float(self.mu))
        if int(self.harmonic) != self.harmonic:
            raise SeedSpecError(f"Segment harmonic must be an integer, got {self.harmonic!r}")
        object.__setattr__(self, "harmonic", int(self.harmonic))
        if not self.start_a < self.end_a:
            raise SeedSpecError(f"Segment start must be < end, got [{self.start_a}, {self.end_a})")
        if not (math.isfinite(self.amplitude.real) and math.isfinite(self.amplitude.imag) and math.isfinite(self.mu)):
            raise SeedSpecError("Segment amplitude and modulation must be finite")

    @property
    def cell(self) -> tuple[Fraction, Fraction]:
        return self.start_a, self.end_a

    @property
    def is_modulated(self) -> bool:
        return self.mu != 0.0 or self.harmonic != 0

    def scaled(self, c: complex) -> "Segment":
        return Segment(self.start_a, self.end_a, self.amplitude * c, self.mu, self.harmonic)


@dataclass(frozen=True, eq=False)
class SeedFunction:
    """种子函数

    Attributes:
        domain: 数据描述的是 h(s) 还是 ĥ(p)
        kind: 表示类型
        segments: 分段类型的各段（按起点排序）
        center/width/amplitude/mu: 高斯类型参数，A·π^{-1/4}σ^{-1/2}e^{-(x-c)²/2σ²}e^{iμx}
        grid_start/grid_step/samples: 采样类型的均匀网格和复数采样值
        inverse: 仅对 SEGMENT_TRANSFORM 有效，True 表示逆变换核 e^{+ipx}
    """

    domain: Domain
    kind: SeedKind
    segments: tuple[Segment, ...] = ()
    center: float = 0.0
    width: float = 1.0
    amplitude: complex = 1.0 + 0.0j
    mu: float = 0.0
    grid_start: float = 0.0
    grid_step: float = 1.0
    samples: np.ndarray | None = field(default=None, repr=False)
    inverse: bool = False
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "domain", Domain(self.domain))
        object.__setattr__(self, "kind", SeedKind(self.kind))
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        if self.kind in SEGMENT_KINDS:
            self._validate_segments()
        elif self.kind is SeedKind.GAUSSIAN:
            if not (math.isfinite(self.width) and self.width > 0):
                raise SeedSpecError(f"Gaussian width must be positive, got {self.width!r}")
            if not all(math.isfinite(v) for v in (self.center, self.mu, self.amplitude.real, self.amplitude.imag)):
                raise SeedSpecError("Gaussian parameters must be finite")
        elif self.kind is SeedKind.SAMPLED:
            self._validate_samples()

    def _validate_segments(self):
        segments = tuple(sorted(self.segments, key=lambda seg: (seg.start_a, seg.end_a, seg.harmonic)))
        object.__setattr__(self, "segments", segments)

        if self.kind is SeedKind.PIECEWISE_CONSTANT and any(seg.is_modulated for seg in segments):
            raise SeedSpecError("piecewise_constant segments cannot carry a modulation")

        # 同一单元上可以叠加多个调制项（三角多项式），其余情况不允许重叠
        for prev, seg in zip(segments, segments[1:]):
            if prev.cell == seg.cell and self.kind is not SeedKind.PIECEWISE_CONSTANT:
                continue
            if seg.start_a < prev.end_a:
                raise SeedSpecError(
                    f"Overlapping segments [{prev.start_a}, {prev.end_a}) and [{seg.start_a}, {seg.end_a})"
                )

    def _validate_samples(self):
        if self.samples is None:
            raise SeedSpecError("Sampled seed requires samples")
        samples = np.asarray(self.samples, dtype=complex)
        if samples.ndim != 1 or samples.size < 2:
            raise SeedSpecError("Sampled seed requires a 1D array of at least two samples")
        if not np.all(np.isfinite(samples)):
            raise SeedSpecError("Sampled seed contains non-finite values")
        if not (math.isfinite(self.grid_step) and self.grid_step > 0):
            raise SeedSpecError(f"Sampled grid step must be positive, got {self.grid_step!r}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def grid(self) -> np.ndarray:
        """采样网格（仅 SAMPLED）"""
        if self.samples is None:
            return np.empty(0)
        return self.grid_start + self.grid_step * np.arange(self.samples.size)

    @property
    def is_symbolic(self) -> bool:
        return self.kind in SYMBOLIC_KINDS

    @property
    def is_zero(self) -> bool:
        if self.kind in SEGMENT_KINDS:
            return all(seg.amplitude == 0 for seg in self.segments)
        if self.kind is SeedKind.GAUSSIAN:
            return self.amplitude == 0
        return not np.any(self.samples)

    def support_units(self) -> tuple[Fraction, Fraction] | None:
        """分段类型的支撑区间（以 a 为单位），其他类型返回 None"""
        if self.kind not in (SeedKind.PIECEWISE_CONSTANT, SeedKind.PIECEWISE_MODULATED) or not self.segments:
            return None
        return min(seg.start_a for seg in self.segments), max(seg.end_a for seg in self.segments)

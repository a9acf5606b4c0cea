"""
内置种子预设

包含 row1 至 row8 八个种子（row2、row6 同时提供常数形式和修正形式）、
两个与 row7、row8 同形状的位置域种子（e1、e2）、Haar 单元种子和高斯基态。
"""

import math
from collections.abc import Callable
from fractions import Fraction

from src.exceptions import SeedSpecError
from src.seedfn.base import A, Domain, SeedFunction, SeedKind, Segment
from src.seedfn.ops import cell_seed
from src.utils import logger

_SQRT_A = math.sqrt(A)


def _constant(domain: Domain, cells: list[tuple[str, str, complex]], name: str) -> SeedFunction:
    segments = tuple(Segment(Fraction(lo), Fraction(hi), amp) for lo, hi, amp in cells)
    return SeedFunction(domain=domain, kind=SeedKind.PIECEWISE_CONSTANT, segments=segments, name=name)


def _three_cell(domain: Domain, far_cell: tuple[str, str], name: str) -> SeedFunction:
    """+1/√(2a) 于 [0, a/2) 与 far_cell，-1/√(2a) 于 [a/2, a)"""
    c = 1.0 / math.sqrt(2.0 * A)
    return _constant(domain, [("0", "1/2", c), ("1/2", "1", -c), (*far_cell, c)], name)


def row1() -> SeedFunction:
    return _constant(Domain.POSITION, [("0", "1", 1.0 / _SQRT_A)], "row1")


def row2_literal() -> SeedFunction:
    # 常数相位 e^{-ia}/√a
    phase = complex(math.cos(A), -math.sin(A))
    return _constant(Domain.POSITION, [("0", "1", phase / _SQRT_A)], "row2_literal")


def row2_corrected() -> SeedFunction:
    # 复现 h_n = i(1-e^{-ia})/(2πn-a) 的写法：e^{-is}/√a
    segments = (Segment(Fraction(0), Fraction(1), 1.0 / _SQRT_A, mu=-1.0),)
    return SeedFunction(
        domain=Domain.POSITION, kind=SeedKind.PIECEWISE_MODULATED, segments=segments, name="row2_corrected"
    )


def row3() -> SeedFunction:
    return _constant(Domain.POSITION, [("0", "1/2", math.sqrt(2.0 / A))], "row3")


def row4() -> SeedFunction:
    return _constant(Domain.POSITION, [("1/2", "1", math.sqrt(2.0 / A))], "row4")


def row5() -> SeedFunction:
    return _constant(Domain.FREQUENCY, [("0", "1", 1.0 / _SQRT_A)], "row5")


def row6_literal() -> SeedFunction:
    return _constant(Domain.FREQUENCY, [("0", "1", math.sqrt(2.0 / A))], "row6_literal")


def row6_corrected() -> SeedFunction:
    return _constant(Domain.FREQUENCY, [("0", "1/2", math.sqrt(2.0 / A))], "row6_corrected")


def row7() -> SeedFunction:
    return _three_cell(Domain.FREQUENCY, ("2", "3"), "row7")


def row8() -> SeedFunction:
    return _three_cell(Domain.FREQUENCY, ("1", "2"), "row8")


def e1() -> SeedFunction:
    return _three_cell(Domain.POSITION, ("2", "3"), "e1")


def e2() -> SeedFunction:
    return _three_cell(Domain.POSITION, ("1", "2"), "e2")


def haar_cell() -> SeedFunction:
    return cell_seed([1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)], n_min=0, name="haar_cell")


def gaussian() -> SeedFunction:
    return SeedFunction(domain=Domain.POSITION, kind=SeedKind.GAUSSIAN, name="gaussian")


class SeedPresetFactory:
    """种子预设工厂，按名称创建内置种子"""

    # 注册的预设 {name: builder}
    _presets: dict[str, Callable[[], SeedFunction]] = {}

    # 每个预设的说明
    _descriptions: dict[str, str] = {}

    @classmethod
    def register(cls, name: str, builder: Callable[[], SeedFunction], description: str = ""):
        """
        注册预设

        Args:
            name: 预设名称
            builder: 无参构造函数
            description: 说明
        """
        if not callable(builder):
            raise ValueError("Preset builder must be callable")

        cls._presets[name] = builder
        cls._descriptions[name] = description

    @classmethod
    def create(cls, name: str) -> SeedFunction:
        """
        创建预设种子

        Args:
            name: 预设名称

        Returns:
            种子函数

        Raises:
            SeedSpecError: 未知的预设名称
        """
        if name not in cls._presets:
            available = sorted(cls._presets.keys())
            raise SeedSpecError(f"Unknown preset: {name}. Available presets: {available}")

        if name in ("row2_literal", "row6_literal"):
            corrected = name.replace("_literal", "_corrected")
            logger.warning(f"Preset {name} uses the constant form; its coefficients differ from {corrected}")
        return cls._presets[name]()

    @classmethod
    def get_available_presets(cls) -> dict[str, str]:
        """获取所有预设及说明"""
        return dict(sorted(cls._descriptions.items()))

    @classmethod
    def is_preset_supported(cls, name: str) -> bool:
        return name in cls._presets


for _name, _builder, _description in (
    ("row1", row1, "1/√a on [0,a), position; h_n = δ_{n,0}"),
    ("row2_literal", row2_literal, "e^{-ia}/√a on [0,a), position (constant phase)"),
    ("row2_corrected", row2_corrected, "e^{-is}/√a on [0,a), position; h_n = i(1-e^{-ia})/(2πn-a)"),
    ("row3", row3, "√(2/a) on [0,a/2), position"),
    ("row4", row4, "√(2/a) on [a/2,a), position"),
    ("row5", row5, "1/√a on [0,a), frequency; Haar"),
    ("haar", row5, "alias of row5"),
    ("row6_literal", row6_literal, "√(2/a) on [0,a), frequency; h = {1,1}"),
    ("row6_corrected", row6_corrected, "√(2/a) on [0,a/2), frequency; h_n = δ_{n,0}"),
    ("row7", row7, "±1/√(2a) on [0,a/2), [a/2,a), [2a,3a), frequency"),
    ("row8", row8, "±1/√(2a) on [0,a/2), [a/2,a), [a,2a), frequency"),
    ("e1", e1, "row7 shape in position domain; reproduces the row3 coefficients"),
    ("e2", e2, "row8 shape in position domain; reproduces the row3 coefficients"),
    ("haar_cell", haar_cell, "(1/√(2a))(1+e^{-isa/2}) on [0,a), position; h = (δ_{n,0}+δ_{n,1})/√2"),
    ("gaussian", gaussian, "π^{-1/4}e^{-s²/2}, position"),
):
    SeedPresetFactory.register(_name, _builder, _description)

"""
数值管线异常定义

所有异常继承自 SeedWaveError；CLI 捕获该基类并以退出码 1 结束。
"""


class SeedWaveError(Exception):
    """seedwave 异常基类"""

    def __init__(self, message: str, stage: str | None = None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def __str__(self):
        if self.stage:
            return f"[{self.stage}] {self.message}"
        return self.message


class SeedSpecError(SeedWaveError):
    """种子函数或滤波器描述不合法"""

    pass


class UnsupportedError(SeedWaveError):
    """该种子类型不支持此操作"""

    pass


class QuadratureDivergenceError(SeedWaveError):
    """数值积分窗口不足或尾部过大"""

    pass


class NonSummableError(SeedWaveError):
    """重叠序列 S_{0,l2} 没有衰减"""

    pass


class SingularSymbolError(SeedWaveError):
    """符号函数接近零或非实数，ONT 无定义"""

    pass


class DivergedError(SeedWaveError):
    """级联迭代发散"""

    pass


class FilterTruncatedError(SeedWaveError):
    """滤波器是截断的无穷序列，不能用于级联"""

    pass

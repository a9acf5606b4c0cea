import os
import sys
from datetime import date

from loguru import logger as loguru_logger

SAVE_DIR = os.getenv("SAVE_DIR") or "saves"
DATETIME = date.today().strftime("%Y-%m-%d")
LOG_FILE = f"{SAVE_DIR}/logs/seedwave-{DATETIME}.log"
LOG_LEVEL = os.getenv("LOG_LEVEL") or "INFO"


def setup_logger(name, level="DEBUG", console=True, to_file=None):
    """使用 loguru 设置日志记录器

    控制台日志写到 stderr，stdout 留给报告输出。
    """
    if to_file is None:
        to_file = os.getenv("LOG_TO_FILE", "true").lower() != "false"

    # 移除默认的 handler
    loguru_logger.remove()

    # 添加文件日志（无颜色）
    if to_file:
        os.makedirs(f"{SAVE_DIR}/logs", exist_ok=True)  # 创建日志目录
        loguru_logger.add(
            LOG_FILE,
            level=level,
            format="{time:YYYY-MM-DD HH:mm:ss} - {level} - {file}:{line} - {message}",
            encoding="utf-8",
            rotation="10 MB",  # 文件大小达到 10MB 时轮转
            retention="30 days",  # 保留30天的日志
            compression="zip",  # 压缩旧日志文件
        )

    # 添加控制台日志（有颜色）
    if console:
        loguru_logger.add(
            sys.stderr,
            level=level,
            format=(
                "<green>{time:MM-DD HH:mm:ss}</green> "
                "<level>{level}</level> "
                "<cyan>{file}:{line}</cyan>: "
                "<level>{message}</level>"
            ),
            colorize=True,
        )

    return loguru_logger


# 设置根日志记录器
logger = setup_logger("seedwave", level=LOG_LEVEL)

__all__ = ["logger", "setup_logger"]

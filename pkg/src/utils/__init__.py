import hashlib

from src.utils.logging_config import logger


def hashstr(input_string, length=None):
    """生成字符串的哈希值（用于报告中的种子摘要）
    Args:
        input_string: 输入字符串
        length: 截取长度，默认为None，表示不截取
    """
    try:
        # 尝试直接编码
        encoded_string = str(input_string).encode("utf-8")
    except UnicodeEncodeError:
        # 如果编码失败，替换无效字符
        encoded_string = str(input_string).encode("utf-8", errors="replace")

    digest = hashlib.md5(encoded_string).hexdigest()
    if length:
        return digest[:length]
    return digest


__all__ = ["hashstr", "logger"]

"""
报告输出：CSV 与 JSON

同样的输入必须得到逐字节相同的文件：浮点数用 repr，键顺序固定，不写时间戳。
"""

import csv
import json
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from src.utils.logging_config import logger


def _plain(value: Any) -> Any:
    """numpy 标量转为 Python 内置类型（numpy>=2 的 repr 会带类型名）"""
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.complexfloating):
        return complex(value)
    return value


def _cell(value: Any) -> str:
    value = _plain(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        raise TypeError("split complex values into re/im columns before writing")
    return str(value)


def _json_default(value: Any) -> Any:
    plain = _plain(value)
    if plain is value:
        raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")
    return plain


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """写 CSV（'.' 小数点，\\n 换行）"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    logger.info(f"Wrote {path}")
    return path


def write_json(path: str | Path, data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, ensure_ascii=False, default=_json_default)
        f.write("\n")
    logger.info(f"Wrote {path}")
    return path


def write_table(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]], fmt: str = "csv") -> Path:
    """表格数据：csv 直接写，json 写成对象列表"""
    path = Path(path)
    if fmt == "csv":
        return write_csv(path.with_suffix(".csv"), header, rows)
    if fmt == "json":
        records = [{key: _plain(v) for key, v in zip(header, row)} for row in rows]
        return write_json(path.with_suffix(".json"), records)
    raise ValueError(f"Unsupported report format: {fmt}")


def provenance(command: str, seed_source: str | None, seed_digest: str | None, **settings: Any) -> dict[str, Any]:
    """报告的来源信息块"""
    block: dict[str, Any] = {"command": command}
    if seed_source is not None:
        block["seed"] = seed_source
    if seed_digest is not None:
        block["seed_md5"] = seed_digest
    block["settings"] = dict(settings)
    return block

"""
普查结果的磁盘缓存

每个 CensusKey 一个文件：首行为键，其后是以空行分隔的生成矩阵（codes 文本格式）。
写入先落到同目录的临时文件，再用 os.replace 原子替换。
"""

import logging
import os
import tempfile
from typing import Optional

from codes.matrix import MatrixError, format_matrix, parse_matrix
from census.search import CensusKey, CensusRecord
from utils.naming import cache_file_name

logger = logging.getLogger(__name__)

HEADER = "# census"


class CacheCorruptError(RuntimeError):
    """缓存文件无法解析或与键不符"""

    def __init__(self, path: str, reason: str):
        super().__init__(f"缓存文件损坏 {path}: {reason}")
        self.path = path


def format_record(record: CensusRecord) -> str:
    key = record.key
    cap = "inf" if key.gamma_cap is None else key.gamma_cap
    blocks = [f"{HEADER} {key.q} {key.delta} {key.n} {key.k} {cap} {record.count}\n"]
    blocks.extend(format_matrix(g) for g in record.reps)
    return "\n".join(blocks)


def parse_record(text: str, path: str = "<text>") -> CensusRecord:
    blocks = [b for b in text.split("\n\n") if b.strip()]
    if not blocks or not blocks[0].startswith(HEADER):
        raise CacheCorruptError(path, "缺少表头")
    fields = blocks[0].split()[2:]
    if len(fields) != 6:
        raise CacheCorruptError(path, f"表头字段数错误: {blocks[0].strip()!r}")
    try:
        q, delta, n, k = (int(x) for x in fields[:4])
        cap = None if fields[4] == "inf" else int(fields[4])
        count = int(fields[5])
        key = CensusKey(q, delta, n, k, cap)
    except ValueError as e:
        raise CacheCorruptError(path, str(e)) from e
    try:
        reps = tuple(parse_matrix(b, allow_zero_columns=False) for b in blocks[1:])
    except MatrixError as e:
        raise CacheCorruptError(path, str(e)) from e
    if len(reps) != count:
        raise CacheCorruptError(path, f"记录 {count} 个, 实际 {len(reps)} 个")
    for g in reps:
        if (g.q, g.k, g.n) != (q, k, n):
            raise CacheCorruptError(path, f"矩阵参数 {(g.q, g.k, g.n)} 与键不符")
    return CensusRecord(key, reps)


class CensusStore:
    """单写多读的缓存目录"""

    def __init__(self, cache_dir: str):
        self.cache_dir = cache_dir
        os.makedirs(cache_dir, exist_ok=True)

    def path(self, key: CensusKey) -> str:
        return os.path.join(self.cache_dir, cache_file_name(key.normalized()))

    def store(self, record: CensusRecord) -> str:
        if record.partial:
            raise ValueError(f"部分结果不写入缓存: {record.key.describe()}")
        path = self.path(record.key)
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, prefix=".tmp_", suffix=".txt")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(format_record(record))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise
        logger.debug(f"写入缓存: {path}")
        return path

    def load(self, key: CensusKey) -> Optional[CensusRecord]:
        key = key.normalized()
        path = self.path(key)
        if not os.path.exists(path):
            return None
        with open(path, "r", encoding="utf-8") as f:
            record = parse_record(f.read(), path)
        if record.key.normalized() != key:
            raise CacheCorruptError(path, f"键不符: {record.key.describe()}")
        return record

"""运行配置与日志设置"""

import logging
import os
import sys

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# 加载配置文件
load_dotenv('config.env')


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("1", "true", "yes")


class Settings(BaseModel):
    """运行参数，全部来自环境变量"""
    log_level: str = Field("WARNING", description="egal_orient 日志级别")
    debug_checks: bool = Field(False, description="每步之后做完整的不变量检查")
    oracle_max_edges: int = Field(24, ge=0, description="穷举求解器允许的最大边数")
    oracle_shard_bits: int = Field(16, ge=1, le=24, description="每个分片包含 2**bits 个定向")
    oracle_workers: int = Field(1, ge=1, description="分片求值线程数")
    sc_bound_max_vertices: int = Field(20, ge=1, description="子集枚举下界的顶点上限")

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            log_level=os.getenv('EGAL_LOG_LEVEL', 'WARNING'),
            debug_checks=_env_bool('EGAL_DEBUG_CHECKS', 'false'),
            oracle_max_edges=int(os.getenv('EGAL_ORACLE_MAX_EDGES', '24')),
            oracle_shard_bits=int(os.getenv('EGAL_ORACLE_SHARD_BITS', '16')),
            oracle_workers=int(os.getenv('EGAL_ORACLE_WORKERS', '1')),
            sc_bound_max_vertices=int(os.getenv('EGAL_SC_BOUND_MAX_VERTICES', '20')),
        )


settings = Settings.from_env()


def configure_logging(level: str | int | None = None) -> None:
    """把 egal_orient 的日志输出到标准错误"""
    logger = logging.getLogger("egal_orient")
    handler = next((h for h in logger.handlers if getattr(h, "_egal_orient", False)), None)
    if handler is None:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("[%(asctime)s] %(levelname)s %(name)s: %(message)s"))
        handler._egal_orient = True  # type: ignore[attr-defined]
        logger.addHandler(handler)
    else:
        # 旧的流可能已被关闭，不能 flush
        handler.stream = sys.stderr
    logger.setLevel(level if level is not None else settings.log_level.upper())
    logger.propagate = False

"""
指标收集模块

记录三类数据：
1. 每个引理的调用次数、失败次数与耗时
2. 见证复核的通过 / 失败次数
3. 各缓存表（brenner 的 C·C 表、split 表、小矩阵和表）的命中情况

指标只留在内存中。报告默认不带耗时，同一配置与种子下输出逐字节一致。
"""

import time
import threading
from collections import defaultdict
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional


@dataclass
class Timer:
    """measure_lemma 交给调用方的计时器"""
    started: float = 0.0
    stopped: Optional[float] = None

    @property
    def elapsed_ms(self) -> float:
        end = self.stopped if self.stopped is not None else time.perf_counter()
        return round((end - self.started) * 1000, 3)


@dataclass
class LemmaStats:
    calls: int = 0
    failures: int = 0
    total_ms: float = 0.0
    max_ms: float = 0.0

    def add(self, elapsed_ms: float, ok: bool) -> None:
        self.calls += 1
        if not ok:
            self.failures += 1
        self.total_ms += elapsed_ms
        self.max_ms = max(self.max_ms, elapsed_ms)

    def to_dict(self) -> Dict[str, Any]:
        passed = self.calls - self.failures
        return {
            "counter": {
                "total": self.calls,
                "success": passed,
                "failure": self.failures,
                "success_rate": round(passed / self.calls * 100, 2) if self.calls else 0.0,
            },
            "latency": {
                "avg_ms": round(self.total_ms / self.calls, 2) if self.calls else 0.0,
                "max_ms": round(self.max_ms, 2),
            },
        }


@dataclass
class HitStats:
    """见证复核与查表共用：成功 / 失败两路计数"""
    hits: int = 0
    misses: int = 0

    @property
    def rate(self) -> float:
        total = self.hits + self.misses
        return round(self.hits / total * 100, 2) if total else 0.0


class MetricsCollector:
    """
    指标收集器

    线程安全的单例，cli 的三个子命令共用一份。
    """

    _instance: Optional["MetricsCollector"] = None
    _lock: threading.Lock = threading.Lock()

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    instance = super().__new__(cls)
                    instance._initialized = False
                    cls._instance = instance
        return cls._instance

    def __init__(self):
        if self._initialized:
            return
        self._mutex = threading.Lock()
        self._lemmas: Dict[str, LemmaStats] = defaultdict(LemmaStats)
        self._witnesses = HitStats()
        self._tables: Dict[str, HitStats] = defaultdict(HitStats)
        self._since = time.time()
        self._initialized = True

    @contextmanager
    def measure_lemma(self, lemma_id: str) -> Iterator[Timer]:
        """
        统计一次引理调用；块内抛出异常记为失败并继续上抛

        Usage:
            with metrics.measure_lemma("uni1") as timer:
                witness = uni1_factor(phi, m)
            print(timer.elapsed_ms)
        """
        timer = Timer(started=time.perf_counter())
        ok = False
        try:
            yield timer
            ok = True
        finally:
            timer.stopped = time.perf_counter()
            with self._mutex:
                self._lemmas[lemma_id].add(timer.elapsed_ms, ok)

    def record_witness(self, valid: bool) -> None:
        with self._mutex:
            if valid:
                self._witnesses.hits += 1
            else:
                self._witnesses.misses += 1

    def record_table_hit(self, table: str) -> None:
        with self._mutex:
            self._tables[table].hits += 1

    def record_table_miss(self, table: str) -> None:
        with self._mutex:
            self._tables[table].misses += 1

    def get_metrics(self) -> Dict[str, Any]:
        """
        Returns:
            {uptime_seconds, lemmas: {id: {counter, latency}}, witnesses, tables: {name: {hits, misses, hit_rate}}}
        """
        with self._mutex:
            w = self._witnesses
            return {
                "uptime_seconds": int(time.time() - self._since),
                "lemmas": {name: self._lemmas[name].to_dict() for name in sorted(self._lemmas)},
                "witnesses": {"valid": w.hits, "invalid": w.misses, "valid_rate": w.rate},
                "tables": {
                    name: {"hits": t.hits, "misses": t.misses, "hit_rate": t.rate}
                    for name, t in sorted(self._tables.items())
                },
            }

    def reset(self) -> None:
        with self._mutex:
            self._lemmas.clear()
            self._witnesses = HitStats()
            self._tables.clear()


metrics = MetricsCollector()


def get_metrics_collector() -> MetricsCollector:
    return metrics


__all__ = [
    "MetricsCollector",
    "metrics",
    "get_metrics_collector",
    "Timer",
    "LemmaStats",
    "HitStats",
]

"""Adversarial scaling families and the timing harness.

The seq family is a right-nested chain of assignments under a modality
whose postcondition mentions the substituted predicate: the per-operator
reference engine rescans the remainder of the chain at every composition,
so its runtime is quadratic in the chain length, while the one-pass
engine stays linear.  Timings are median-of-N nanoseconds with a warmup
run discarded; sizes are node counts, not text lengths.
"""

from __future__ import annotations

import statistics
import sys
import threading
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .church import church_formula
from .subst import USubst, us
from .syntax import (
    Assign, Diamond, Exists, Formula, Loop, Number, Plus, PRED, PredApp, Seq,
    Symbol, Var, dot, node_count, Cmp,
)
from .varset import Variable

CSV_HEADER = "family,n,nodes_in,nodes_out,engine,median_ns,clash"

_P1 = Symbol(PRED, "p", 1)
_X = Variable("x", 0)


def _sigma() -> USubst:
    return USubst({_P1: Cmp(">=", dot(), Number(Fraction(0)))})


def gen_family(name: str, n: int) -> tuple[USubst, Formula]:
    if n < 1:
        raise ValueError("n must be >= 1")
    if name == "seq":
        game = Assign(_X, Plus(Var(_X), Number(Fraction(1))))
        for _ in range(n - 1):
            game = Seq(Assign(_X, Plus(Var(_X), Number(Fraction(1)))), game)
        return _sigma(), Diamond(game, PredApp(_P1, Var(_X)))
    if name == "binder":
        body: Formula = PredApp(_P1, Var(Variable("x1", 0)))
        for i in range(n, 0, -1):
            body = Exists(Variable(f"x{i}", 0), body)
        return _sigma(), body
    if name == "loop":
        game = Assign(_X, Plus(Var(_X), Number(Fraction(1))))
        for _ in range(n):
            game = Loop(game)
        return _sigma(), Diamond(game, PredApp(_P1, Var(_X)))
    raise ValueError(f"unknown family {name!r}")


def run_deep(fn: Callable, stack_mb: int = 512, limit: int = 1_000_000):
    """Run ``fn`` on a thread with a large stack and recursion limit; the
    scaling families nest tens of thousands of operators deep."""
    result: list = [None, None]

    def wrap():
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(limit)
        try:
            result[0] = fn()
        except BaseException as exc:  # propagate to caller
            result[1] = exc
        finally:
            sys.setrecursionlimit(old)

    old_size = threading.stack_size(stack_mb * 1024 * 1024)
    try:
        t = threading.Thread(target=wrap)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_size)
    if result[1] is not None:
        raise result[1]
    return result[0]


@dataclass
class BenchRecord:
    family: str
    n: int
    nodes_in: int
    nodes_out: int
    engine: str
    median_ns: int
    clash: bool

    def csv(self) -> str:
        return (f"{self.family},{self.n},{self.nodes_in},{self.nodes_out},"
                f"{self.engine},{self.median_ns},{str(self.clash).lower()}")


def _engine_fn(engine: str, sigma: USubst, phi: Formula) -> Callable:
    if engine == "onepass":
        return lambda: us(sigma, phi)
    if engine == "church":
        return lambda: church_formula(sigma, phi)
    raise ValueError(f"unknown engine {engine!r}")


def bench_one(family: str, n: int, engine: str, reps: int = 5) -> BenchRecord:
    sigma, phi = gen_family(family, n)
    fn = _engine_fn(engine, sigma, phi)

    def measure():
        out = fn()  # warmup, result kept for the node count
        times = []
        for _ in range(reps):
            t0 = time.perf_counter_ns()
            fn()
            times.append(time.perf_counter_ns() - t0)
        return out, times

    out, times = run_deep(measure)
    return BenchRecord(family, n, node_count(phi), node_count(out), engine,
                       int(statistics.median(times)), False)


def run_bench(families: list[str], ns: list[int], engines: list[str],
              reps: int = 5, budget_s: Optional[float] = None) -> tuple[list[BenchRecord], bool]:
    """All records, in deterministic order; stops early when the time budget
    runs out (second return value says whether it did)."""
    records: list[BenchRecord] = []
    start = time.monotonic()
    for family in families:
        for engine in engines:
            for n in ns:
                if budget_s is not None and time.monotonic() - start > budget_s:
                    return records, True
                records.append(bench_one(family, n, engine, reps))
    return records, False


def fit_slope(records: list[BenchRecord], family: str, engine: str) -> tuple[float, float]:
    """Least-squares slope and R^2 of log(median time) against log(output
    node count)."""
    pts = [(r.nodes_out, r.median_ns) for r in records
           if r.family == family and r.engine == engine and not r.clash]
    if len(pts) < 6:
        raise ValueError("need at least 6 data points for a slope fit")
    xs = np.log([p[0] for p in pts])
    if xs.max() - xs.min() < 2 * np.log(10):
        raise ValueError("data must span at least 2 decades of output size")
    ys = np.log([p[1] for p in pts])
    slope, intercept = np.polyfit(xs, ys, 1)
    fitted = slope * xs + intercept
    ss_res = float(((ys - fitted) ** 2).sum())
    ss_tot = float(((ys - ys.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(slope), r2

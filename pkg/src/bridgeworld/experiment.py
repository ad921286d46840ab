"""Experimental conditions, repeated runs, and the death-rate metric."""

from __future__ import annotations

import enum
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .virtue import EType
from .world import WorldConfig, init_world, run_cycle

PLOT_FACTOR = 5.0


class Condition(enum.Enum):
    NL = "nl"
    S = "s"
    S_E = "s+e"
    PB = "pb"
    PB_E = "pb+e"
    SS = "ss"
    SS_E = "ss+e"

    @classmethod
    def parse(cls, text: str) -> "Condition":
        key = text.strip().lower().replace("/", "").replace(" ", "")
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown condition {text!r}; expected one of {[c.value for c in cls]}")

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def switches(self) -> tuple[EType, bool, bool]:
        """(etype, learning_enabled, exemplars_enabled)."""
        return _SWITCHES[self]

    def configure(self, base: Optional[WorldConfig] = None) -> WorldConfig:
        etype, learning, exemplars = self.switches
        base = base or WorldConfig()
        return base.replace(etype=etype, learning_enabled=learning, exemplars_enabled=exemplars)


_SWITCHES = {
    Condition.NL: (EType.NONE, False, False),
    Condition.S: (EType.SELFISH, True, False),
    Condition.S_E: (EType.SELFISH, True, True),
    Condition.PB: (EType.PRAISE_BLAME, True, False),
    Condition.PB_E: (EType.PRAISE_BLAME, True, True),
    Condition.SS: (EType.SELFISH_SELFLESS, True, False),
    Condition.SS_E: (EType.SELFISH_SELFLESS, True, True),
}
_LABELS = {
    Condition.NL: "NL",
    Condition.S: "S",
    Condition.S_E: "S+E",
    Condition.PB: "P/B",
    Condition.PB_E: "P/B+E",
    Condition.SS: "S/S",
    Condition.SS_E: "S/S+E",
}
ALL_CONDITIONS = tuple(Condition)


@dataclass(frozen=True)
class TelemetryRow:
    iteration: int
    deaths_total: int
    deaths_starved: int
    deaths_drowned: int
    mean_courage: float
    mean_generosity: float
    mean_honesty: float
    death_rate: float
    death_rate_plot: float


@dataclass(frozen=True)
class SummaryRow:
    condition: Condition
    repeats: int
    mean_death_rate: float
    sd_death_rate: Optional[float]  # None when repeats < 2
    base_seed: int
    final_death_rates: tuple = ()


def death_rate(total_deaths: int, iteration: int, plot_scaled: bool = False) -> float:
    if iteration < 1:
        raise ValueError("death rate is undefined before the first iteration")
    rate = total_deaths / iteration
    return rate / PLOT_FACTOR if plot_scaled else rate


def run_condition(
    condition: Condition,
    iterations: int = 1000,
    population: int = 100,
    seed: int = 0,
    base: Optional[WorldConfig] = None,
) -> list[TelemetryRow]:
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    cfg = condition.configure(base).replace(population=population)
    world = init_world(cfg, seed)
    rows = []
    for _ in range(iterations):
        report = run_cycle(world)
        td = world.total_deaths
        rate = death_rate(td, world.cycle)
        rows.append(
            TelemetryRow(
                iteration=world.cycle,
                deaths_total=td,
                deaths_starved=world.deaths_starved,
                deaths_drowned=world.deaths_drowned,
                mean_courage=report.mean_courage,
                mean_generosity=report.mean_generosity,
                mean_honesty=report.mean_honesty,
                death_rate=rate,
                death_rate_plot=rate / PLOT_FACTOR,
            )
        )
    return rows


def _final_row(args) -> TelemetryRow:
    condition, iterations, population, seed, base = args
    return run_condition(condition, iterations, population, seed, base)[-1]


def mean_and_sd(values: Iterable[float]) -> tuple[float, Optional[float]]:
    """Mean and sample (n - 1) standard deviation; SD is None for a single value."""
    vals = list(values)
    mean = math.fsum(vals) / len(vals)
    sd = statistics.stdev(vals) if len(vals) >= 2 else None
    return mean, sd


def run_suite(
    conditions: Iterable[Condition] = ALL_CONDITIONS,
    repeats: int = 10,
    iterations: int = 1000,
    population: int = 100,
    base_seed: int = 0,
    base: Optional[WorldConfig] = None,
    workers: Optional[int] = 1,
) -> list[SummaryRow]:
    """Run ``repeats`` seeds (``base_seed + run_index``) per condition and summarize.

    With ``workers`` != 1 runs go to a process pool; results are folded in
    condition/run order regardless of completion order.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    conditions = list(conditions)
    jobs = [
        (c, iterations, population, base_seed + r, base)
        for c in conditions
        for r in range(repeats)
    ]
    if workers == 1:
        finals = [_final_row(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            finals = list(pool.map(_final_row, jobs, chunksize=1))

    summaries = []
    for k, c in enumerate(conditions):
        rates = tuple(row.death_rate for row in finals[k * repeats:(k + 1) * repeats])
        mean, sd = mean_and_sd(rates)
        summaries.append(SummaryRow(c, repeats, mean, sd, base_seed, rates))
    return summaries

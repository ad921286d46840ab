"""BridgeWorld: a home island, four food islands, four bridges.

One call to :func:`run_cycle` is one day. Phases run in a fixed order and
agents are visited in roster order, so a run is fully determined by its
config and seed. Random draws per phase, in order:

food update   ``choose(4)`` on every FUF-th cycle (cycles counted from 1)
ask           per asker: ``choose_other`` for the partner, then ``choose(3)``
              if the partner lies
cross         per agent: ``choose(4)`` when it has no belief, then ``bernoulli(FC)``
rescue        per fallen agent: ``uniform(-1, 1)`` stream level, ``shuffle`` of the
              candidates (skipped when there are none), ``uniform(-1, 1)`` per attempt
beg           per beggar: ``choose_other`` for the partner
exemplar      per agent: ``choose_other`` for the partner (only with exemplars on)
rebirth       per dead slot: ``bernoulli(MC)``, then three ``uniform(-1, 1)`` on
              mutation or two ``choose`` calls for the parents
init          three ``uniform(-1, 1)`` per agent (courage, generosity, honesty),
              then ``choose(4)`` for the food island
"""

from __future__ import annotations

import dataclasses
import functools
from dataclasses import dataclass, field
from typing import Callable, Optional

from .rng import RngStream
from .virtue import (
    Branch,
    Character,
    EType,
    EventKind,
    LearnConfig,
    MoralEvent,
    adopt_exemplar,
    decide_excess,
    eudaimonic_delta,
    learn,
)

N_ISLANDS = 4


@dataclass(frozen=True)
class WorldConfig:
    starting_reserve: float = 5.0
    maximum_reserve: float = 10.0
    food_value: float = 1.25
    food_update_frequency: int = 4
    falling_chance: float = 0.1
    mutation_chance: float = 0.05
    begging_threshold: float = 0.2
    learning_rate: float = 0.1
    scale_by_magnitude: bool = False
    population: int = 100
    etype: EType = EType.NONE
    learning_enabled: bool = False
    exemplars_enabled: bool = False
    bf_use_selfishness: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        for name in ("falling_chance", "mutation_chance"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigError(name, f"probability out of range: {p}")
        if not self.maximum_reserve > 0:
            raise ConfigError("maximum_reserve", f"must be > 0, got {self.maximum_reserve}")
        if not 0 <= self.starting_reserve <= self.maximum_reserve:
            raise ConfigError(
                "starting_reserve",
                f"must lie in [0, maximum_reserve], got {self.starting_reserve}",
            )
        if not self.food_value >= 0:
            raise ConfigError("food_value", f"must be >= 0, got {self.food_value}")
        if not self.learning_rate > 0:
            raise ConfigError("learning_rate", f"must be > 0, got {self.learning_rate}")
        if not isinstance(self.food_update_frequency, int) or self.food_update_frequency < 1:
            raise ConfigError(
                "food_update_frequency", f"must be an integer >= 1, got {self.food_update_frequency}"
            )
        if not isinstance(self.population, int) or self.population < 2:
            raise ConfigError("population", f"must be an integer >= 2, got {self.population}")
        if not isinstance(self.etype, EType):
            raise ConfigError("etype", f"not an e-type: {self.etype!r}")
        if self.etype is EType.NONE and (self.learning_enabled or self.exemplars_enabled):
            raise ConfigError("etype", "learning and exemplars need an e-type")

    @functools.cached_property
    def learn(self) -> LearnConfig:
        return LearnConfig(self.learning_rate, self.scale_by_magnitude)

    def replace(self, **changes) -> "WorldConfig":
        return dataclasses.replace(self, **changes)


class ConfigError(ValueError):
    """Invalid configuration value; ``key`` names the offending field."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(slots=True)
class AgentState:
    id: int
    character: Character
    etype: EType
    reserve: float
    e_value: float = 0.0
    belief: Optional[int] = None
    alive: bool = True
    # per-cycle scratch
    island: Optional[int] = None
    fallen: bool = False
    died_this_cycle: bool = False


@dataclass
class CycleReport:
    cycle: int
    starved: int = 0
    drowned: int = 0
    events: dict = field(default_factory=lambda: {k: 0 for k in EventKind})
    food_moved: bool = False
    mean_courage: float = 0.0
    mean_generosity: float = 0.0
    mean_honesty: float = 0.0

    @property
    def deaths(self) -> int:
        return self.starved + self.drowned


@dataclass
class World:
    config: WorldConfig
    agents: list
    food_island: int
    rng: RngStream
    cycle: int = 0
    deaths_starved: int = 0
    deaths_drowned: int = 0
    rebirths: int = 0
    # optional instrumentation: observer(responder, event, target) per moral
    # event; phase_hook(world, phase_name) after each phase of run_cycle
    observer: Optional[Callable] = None
    phase_hook: Optional[Callable] = None

    @property
    def total_deaths(self) -> int:
        return self.deaths_starved + self.deaths_drowned

    def alive_agents(self) -> list:
        return [a for a in self.agents if a.alive]

    def mean_virtues(self) -> tuple[float, float, float]:
        living = self.alive_agents()
        if not living:
            return (0.0, 0.0, 0.0)
        n = len(living)
        return (
            sum(a.character.courage for a in living) / n,
            sum(a.character.generosity for a in living) / n,
            sum(a.character.honesty for a in living) / n,
        )


def random_character(rng: RngStream) -> Character:
    c = rng.uniform(-1.0, 1.0)
    g = rng.uniform(-1.0, 1.0)
    h = rng.uniform(-1.0, 1.0)
    return Character(c, g, h)


def init_world(cfg: WorldConfig, seed: int) -> World:
    cfg.validate()
    rng = RngStream(seed)
    agents = [
        AgentState(id=i, character=random_character(rng), etype=cfg.etype, reserve=cfg.starting_reserve)
        for i in range(cfg.population)
    ]
    return World(config=cfg, agents=agents, food_island=rng.choose(N_ISLANDS), rng=rng)


def beg_factor(reserve: float, maximum_reserve: float, generosity: float, use_selfishness: bool = False) -> float:
    """Hunger times the generosity factor; the agent begs when this exceeds the threshold."""
    hunger = 1.0 - reserve / maximum_reserve
    factor = (generosity + 1.0) / 2.0
    if use_selfishness:
        factor = 1.0 - factor
    return hunger * factor


def respond(
    world: World,
    agent: AgentState,
    event: MoralEvent,
    report: Optional[CycleReport] = None,
    target: Optional[AgentState] = None,
) -> float:
    """Score ``event`` for the responding agent and learn from it. Returns the e-value change."""
    if report is not None:
        report.events[event.kind] += 1
    if world.observer is not None:
        world.observer(agent, event, target)
    cfg = world.config
    if agent.etype is EType.NONE:
        return 0.0
    delta = eudaimonic_delta(agent.etype, event, cfg.maximum_reserve)
    agent.e_value += delta
    if cfg.learning_enabled:
        agent.character = learn(
            agent.character, event.kind.virtue, event.kind.branch, delta, cfg.learn, event.magnitude
        )
    return delta


def _partner(world: World, living: list, index: int) -> Optional[AgentState]:
    """Uniformly chosen member of ``living`` other than ``living[index]``."""
    if len(living) < 2:
        return None
    return living[world.rng.choose_other(len(living), index)]


def update_food(world: World) -> bool:
    """Relocate the food on every FUF-th cycle and wipe all beliefs."""
    if (world.cycle + 1) % world.config.food_update_frequency != 0:
        return False
    world.food_island = world.rng.choose(N_ISLANDS)
    for a in world.agents:
        a.belief = None
    return True


def phase_ask_location(world: World, report: Optional[CycleReport] = None) -> None:
    rng = world.rng
    living = world.alive_agents()
    for i, a in enumerate(living):
        if a.belief is not None or not a.character.generosity < 0.5:
            continue
        b = _partner(world, living, i)
        if b is None:
            continue
        honesty = b.character.honesty
        if decide_excess(honesty, 0.0) is Branch.EXCESS:
            if b.belief is None:
                continue
            a.belief = b.belief
            respond(world, b, MoralEvent(EventKind.TOLD_TRUTH), report, a)
        elif honesty < 0.0:
            wrong = [i for i in range(N_ISLANDS) if i != world.food_island]
            a.belief = wrong[rng.choose(len(wrong))]
            respond(world, b, MoralEvent(EventKind.LIED), report, a)


def phase_cross_bridges(world: World) -> None:
    rng = world.rng
    fc = world.config.falling_chance
    for a in world.agents:
        if not a.alive:
            continue
        a.island = a.belief if a.belief is not None else rng.choose(N_ISLANDS)
        a.fallen = rng.bernoulli(fc)


def _drown(world: World, agent: AgentState) -> None:
    agent.alive = False
    agent.fallen = False
    agent.died_this_cycle = True
    world.deaths_drowned += 1


def rescue(world: World, fallen: AgentState, stream_level: float, report: Optional[CycleReport] = None) -> bool:
    """Ask every same-bridge passer in shuffled order. Returns True if ``fallen`` survives."""
    rng = world.rng
    candidates = [
        b for b in world.agents
        if b.alive and not b.fallen and b is not fallen and b.island == fallen.island
    ]
    if candidates:
        for k in rng.shuffle(len(candidates)):
            b = candidates[k]
            if decide_excess(b.character.courage, stream_level) is Branch.EXCESS:
                respond(
                    world, b,
                    MoralEvent(EventKind.ATTEMPTED_RESCUE, stream_level, stream_level=stream_level),
                    report, fallen,
                )
                if rng.uniform(-1.0, 1.0) > stream_level:
                    fallen.fallen = False
                    return True
                _drown(world, b)
                _drown(world, fallen)
                return False
            respond(
                world, b,
                MoralEvent(EventKind.IGNORED_RESCUE_CALL, stream_level, stream_level=stream_level),
                report, fallen,
            )
    _drown(world, fallen)
    return False


def phase_rescue(world: World, report: Optional[CycleReport] = None) -> None:
    for a in world.agents:
        if a.alive and a.fallen:
            stream_level = world.rng.uniform(-1.0, 1.0)
            rescue(world, a, stream_level, report)


def phase_collect_and_return(world: World) -> None:
    cfg = world.config
    for a in world.agents:
        if not a.alive:
            continue
        if a.island == world.food_island:
            a.reserve = min(cfg.maximum_reserve, a.reserve + cfg.food_value)
            a.belief = world.food_island
        elif a.belief is not None and a.belief == a.island:
            a.belief = None
        a.island = None


def phase_beg(world: World, report: Optional[CycleReport] = None) -> None:
    cfg = world.config
    living = world.alive_agents()
    for i, a in enumerate(living):
        bf = beg_factor(a.reserve, cfg.maximum_reserve, a.character.generosity, cfg.bf_use_selfishness)
        if not bf > cfg.begging_threshold:
            continue
        b = _partner(world, living, i)
        if b is None:
            continue
        before = b.reserve
        if decide_excess(b.character.generosity, 0.0) is Branch.EXCESS:
            b.reserve = max(0.0, b.reserve - cfg.food_value)
            a.reserve = min(cfg.maximum_reserve, a.reserve + cfg.food_value)
            respond(world, b, MoralEvent(EventKind.GAVE_FOOD, reserve=before), report, a)
        else:
            respond(world, b, MoralEvent(EventKind.IGNORED_BEGGAR, reserve=before), report, a)


def phase_eat(world: World) -> None:
    for a in world.agents:
        if not a.alive:
            continue
        if a.reserve < 1.0:
            a.alive = False
            a.died_this_cycle = True
            world.deaths_starved += 1
        else:
            a.reserve -= 1.0


def phase_exemplar(world: World) -> None:
    if not world.config.exemplars_enabled:
        return
    living = world.alive_agents()
    if len(living) < 2:
        return
    snapshot = [(a.etype, a.e_value, a.character) for a in living]
    for i, a in enumerate(living):
        j = world.rng.choose_other(len(living), i)
        copied = adopt_exemplar(a.etype, a.e_value, snapshot[j])
        if copied is not None:
            a.character = copied


def phase_rebirth(world: World) -> None:
    cfg = world.config
    rng = world.rng
    parents = world.alive_agents()
    for a in world.agents:
        if not a.died_this_cycle:
            continue
        if rng.bernoulli(cfg.mutation_chance) or len(parents) < 2:
            character = random_character(rng)
        else:
            i = rng.choose(len(parents))
            j = rng.choose_other(len(parents), i)
            p1, p2 = parents[i].character, parents[j].character
            character = Character(
                (p1.courage + p2.courage) / 2,
                (p1.generosity + p2.generosity) / 2,
                (p1.honesty + p2.honesty) / 2,
            )
        a.character = character
        a.etype = cfg.etype
        a.reserve = cfg.starting_reserve
        a.e_value = 0.0
        a.belief = None
        a.alive = True
        a.fallen = False
        a.island = None
        a.died_this_cycle = False
        world.rebirths += 1


def run_cycle(world: World) -> CycleReport:
    report = CycleReport(cycle=world.cycle + 1)
    starved0, drowned0 = world.deaths_starved, world.deaths_drowned
    hook = world.phase_hook
    report.food_moved = update_food(world)
    phases = (
        ("ask", lambda: None if report.food_moved else phase_ask_location(world, report)),
        ("cross", lambda: phase_cross_bridges(world)),
        ("rescue", lambda: phase_rescue(world, report)),
        ("collect", lambda: phase_collect_and_return(world)),
        ("beg", lambda: phase_beg(world, report)),
        ("eat", lambda: phase_eat(world)),
        ("exemplar", lambda: phase_exemplar(world)),
        ("rebirth", lambda: phase_rebirth(world)),
    )
    if hook is not None:
        hook(world, "food")
    for name, phase in phases:
        phase()
        if hook is not None:
            hook(world, name)
    world.cycle += 1
    report.starved = world.deaths_starved - starved0
    report.drowned = world.deaths_drowned - drowned0
    report.mean_courage, report.mean_generosity, report.mean_honesty = world.mean_virtues()
    return report

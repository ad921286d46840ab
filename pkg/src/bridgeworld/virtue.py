"""Dispositional virtues, the threshold decision, and reward-driven learning."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional


class VirtueKind(enum.Enum):
    COURAGE = "courage"
    GENEROSITY = "generosity"
    HONESTY = "honesty"


class Branch(enum.Enum):
    EXCESS = "excess"          # tell truth / attempt rescue / give food
    DEFICIENCY = "deficiency"  # lie / ignore / ignore


class EType(enum.Enum):
    NONE = "none"
    SELFISH = "selfish"
    PRAISE_BLAME = "praise_blame"
    SELFISH_SELFLESS = "selfish_selfless"

    __hash__ = object.__hash__  # members are singletons; skips Enum's slow hash


class EventKind(enum.Enum):
    TOLD_TRUTH = ("told_truth", VirtueKind.HONESTY, Branch.EXCESS)
    LIED = ("lied", VirtueKind.HONESTY, Branch.DEFICIENCY)
    ATTEMPTED_RESCUE = ("attempted_rescue", VirtueKind.COURAGE, Branch.EXCESS)
    IGNORED_RESCUE_CALL = ("ignored_rescue_call", VirtueKind.COURAGE, Branch.DEFICIENCY)
    GAVE_FOOD = ("gave_food", VirtueKind.GENEROSITY, Branch.EXCESS)
    IGNORED_BEGGAR = ("ignored_beggar", VirtueKind.GENEROSITY, Branch.DEFICIENCY)

    __hash__ = object.__hash__

    def __init__(self, label: str, virtue: VirtueKind, branch: Branch):
        self.label = label
        self.virtue = virtue
        self.branch = branch

    @property
    def opposite(self) -> "EventKind":
        for other in EventKind:
            if other.virtue is self.virtue and other is not self:
                return other
        raise AssertionError(self)


def clamp(x: float, lo: float = -1.0, hi: float = 1.0) -> float:
    return lo if x < lo else hi if x > hi else x


@dataclass(frozen=True)
class Character:
    """Virtue weights, each in [-1, +1]."""

    courage: float
    generosity: float
    honesty: float

    def __post_init__(self):
        if not (-1.0 <= self.courage <= 1.0 and -1.0 <= self.generosity <= 1.0
                and -1.0 <= self.honesty <= 1.0):
            raise ValueError(f"virtue weight outside [-1, 1]: {self}")

    def get(self, virtue: VirtueKind) -> float:
        if virtue is VirtueKind.COURAGE:
            return self.courage
        if virtue is VirtueKind.GENEROSITY:
            return self.generosity
        return self.honesty

    def with_weight(self, virtue: VirtueKind, value: float) -> "Character":
        value = clamp(value)
        if virtue is VirtueKind.COURAGE:
            return Character(value, self.generosity, self.honesty)
        if virtue is VirtueKind.GENEROSITY:
            return Character(self.courage, value, self.honesty)
        return Character(self.courage, self.generosity, value)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.courage, self.generosity, self.honesty)


class MoralEvent(NamedTuple):
    """A response by one agent to one interaction.

    ``magnitude`` is the stream level for rescue events and 1.0 otherwise.
    ``stream_level`` / ``reserve`` carry the context the reward rules need.
    """

    kind: EventKind
    magnitude: float = 1.0
    stream_level: Optional[float] = None
    reserve: Optional[float] = None


@dataclass(frozen=True)
class LearnConfig:
    learning_rate: float = 0.1
    scale_by_magnitude: bool = False

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")


def decide_excess(weight: float, threshold: float) -> Branch:
    """Threshold gate. Ties go to the deficiency branch."""
    return Branch.EXCESS if weight > threshold else Branch.DEFICIENCY


def learn(
    character: Character,
    virtue: VirtueKind,
    branch: Branch,
    e_delta: float,
    cfg: LearnConfig,
    magnitude: float = 1.0,
) -> Character:
    """Move one virtue weight toward (reward) or away from (punishment) the taken branch."""
    if e_delta == 0:
        return character
    step = cfg.learning_rate * abs(magnitude) if cfg.scale_by_magnitude else cfg.learning_rate
    direction = 1.0 if branch is Branch.EXCESS else -1.0
    if e_delta < 0:
        direction = -direction
    old = character.get(virtue)
    new = clamp(old + direction * step)
    if new == old:
        return character
    return character.with_weight(virtue, new)


def eudaimonic_delta(etype: EType, event: MoralEvent, maximum_reserve: float = 10.0) -> float:
    """Signed unit change in e-value that ``event`` causes for an agent of ``etype``.

    Selfish-selfless agents reward cheap altruism (rescue at stream level <= 0,
    giving while the pre-transfer reserve exceeds half the maximum) and reward
    self-preservation when helping is costly. Truth-telling is always rewarded.
    """
    kind = event.kind
    if etype is EType.NONE:
        raise ValueError("agents without an e-type never evaluate events")
    if etype is EType.SELFISH:
        if kind in (EventKind.TOLD_TRUTH, EventKind.LIED):
            return 0.0
        return 1.0 if kind.branch is Branch.DEFICIENCY else -1.0
    if etype is EType.PRAISE_BLAME:
        return 1.0 if kind.branch is Branch.EXCESS else -1.0
    if etype is EType.SELFISH_SELFLESS:
        if kind is EventKind.TOLD_TRUTH:
            return 1.0
        if kind is EventKind.LIED:
            return -1.0
        if kind in (EventKind.ATTEMPTED_RESCUE, EventKind.IGNORED_RESCUE_CALL):
            if event.stream_level is None:
                raise ValueError(f"{kind.label} event needs a stream level")
            cheap = event.stream_level <= 0
        else:
            if event.reserve is None:
                raise ValueError(f"{kind.label} event needs the responder's reserve")
            cheap = event.reserve > maximum_reserve / 2
        helping = kind.branch is Branch.EXCESS
        return 1.0 if cheap == helping else -1.0
    raise ValueError(f"unknown e-type {etype!r}")


def adopt_exemplar(
    etype: EType,
    e_value: float,
    exemplar: tuple[EType, float, Character],
) -> Optional[Character]:
    """Return the exemplar's character if it qualifies, else ``None``.

    The exemplar must share the e-type and have a strictly higher e-value.
    """
    ex_etype, ex_value, ex_character = exemplar
    if ex_etype is etype and ex_value > e_value:
        return ex_character
    return None

import pytest

from bridgeworld.rng import RngStream
from bridgeworld.virtue import Character, EType
from bridgeworld.world import AgentState, World, WorldConfig


def make_world(characters, *, reserves=None, beliefs=None, food=0, seed=1, **cfg):
    """World with hand-picked agents. ``characters`` are (courage, generosity, honesty)."""
    config = WorldConfig(population=max(2, len(characters)), **cfg)
    agents = []
    for i, c in enumerate(characters):
        agents.append(
            AgentState(
                id=i,
                character=Character(*c),
                etype=config.etype,
                reserve=config.starting_reserve if reserves is None else reserves[i],
                belief=None if beliefs is None else beliefs[i],
            )
        )
    return World(config=config, agents=agents, food_island=food, rng=RngStream(seed))


class EventLog:
    def __init__(self):
        self.events = []

    def __call__(self, responder, event, target):
        self.events.append((responder.id, event.kind, None if target is None else target.id))

    def kinds(self):
        return [k for _, k, _ in self.events]


@pytest.fixture
def event_log():
    return EventLog()


PB = dict(etype=EType.PRAISE_BLAME, learning_enabled=True)
SELFISH = dict(etype=EType.SELFISH, learning_enabled=True)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

"""Randomized whole-world invariants. Run alone with ``pytest tests/test_properties.py``."""

import random

import pytest

from conftest import make_world
from invariants import (
    check_belief_soundness,
    check_conservation_bounds_accounting,
    check_exemplar_idempotence,
    check_lies_never_name_food,
    random_config,
)

from bridgeworld.experiment import Condition
from bridgeworld.world import WorldConfig, run_cycle

SIZES = [3, 7, 20, 55, 100]


@pytest.mark.parametrize("population", SIZES)
def test_conservation_bounds_and_death_accounting(population):
    rnd = random.Random(population)
    for k in range(2):
        cfg = random_config(rnd, population)
        check_conservation_bounds_accounting(cfg, seed=1000 * population + k, cycles=1000 if k == 0 else 200)


@pytest.mark.parametrize("population", SIZES)
def test_lies_never_name_the_food_island(population):
    cfg = Condition.S.configure(WorldConfig(population=population))
    assert check_lies_never_name_food(cfg, seed=population, cycles=1000) > 0


@pytest.mark.parametrize("population", [3, 20, 100])
@pytest.mark.parametrize("condition", [Condition.PB, Condition.SS_E])
def test_beliefs_sound_under_truth_telling(population, condition):
    check_belief_soundness(population, seed=population, cycles=1000, condition=condition)


@pytest.mark.parametrize("population", [3, 30, 100])
def test_exemplar_adoption_idempotent(population):
    cfg = Condition.PB_E.configure(WorldConfig(population=population))
    check_exemplar_idempotence(cfg, seed=population, cycles=1000, rnd=random.Random(population))


def test_closed_world_only_moves_reserves():
    """FC=0, nobody begs, all know the food: a cycle is +FV then -1 for everyone."""
    for seed in range(200):
        rnd = random.Random(seed)
        chars = [tuple(rnd.uniform(-1, 1) for _ in range(3)) for _ in range(3)]
        reserves = [rnd.uniform(1.0, 8.0) for _ in range(3)]
        food = rnd.randrange(4)
        w = make_world(chars, reserves=reserves, beliefs=[food] * 3, food=food, seed=seed,
                       falling_chance=0.0, begging_threshold=1.0)
        before = [(a.character, a.belief, a.e_value, a.alive) for a in w.agents]
        report = run_cycle(w)
        assert report.deaths == 0
        assert [(a.character, a.belief, a.e_value, a.alive) for a in w.agents] == before
        for a, r in zip(w.agents, reserves):
            assert a.reserve == pytest.approx(min(10.0, r + 1.25) - 1.0)

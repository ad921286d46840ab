import json
import re

import pytest
from hypothesis import given, settings, strategies as st

from bridgeworld.cli import main
from bridgeworld.config import ConfigIOError, parse_config, write_config
from bridgeworld.experiment import ALL_CONDITIONS, Condition, SummaryRow, TelemetryRow, run_condition
from bridgeworld.reporting import (
    SUMMARY_COLUMNS,
    TELEMETRY_COLUMNS,
    fmt,
    render_svg,
    summary_csv,
    svg_chart,
    telemetry_csv,
    write_summary_csv,
    write_telemetry_csv,
)
from bridgeworld.virtue import EType
from bridgeworld.world import ConfigError, WorldConfig


# --- config ------------------------------------------------------------------

def test_empty_input_gives_table_defaults():
    c = parse_config()
    assert (c.food_value, c.food_update_frequency, c.falling_chance, c.mutation_chance) == (1.25, 4, 0.1, 0.05)
    assert (c.begging_threshold, c.learning_rate, c.starting_reserve, c.maximum_reserve) == (0.2, 0.1, 5, 10)


def test_out_of_range_probability_rejected():
    with pytest.raises(ConfigError, match="probability out of range") as exc:
        parse_config(overrides=["FC=1.5"])
    assert exc.value.key == "falling_chance"


def test_override_beats_file(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"LR": 0.2, "population": 50}))
    c = parse_config(f, ["LR=0.3"])
    assert c.learning_rate == 0.3 and c.population == 50
    assert parse_config(f).learning_rate == 0.2


def test_unknown_key_rejected(tmp_path):
    with pytest.raises(ConfigError) as exc:
        parse_config(overrides=["speed=3"])
    assert exc.value.key == "speed"
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"falling_chance": 0.2, "colour": "red"}))
    with pytest.raises(ConfigError, match="colour"):
        parse_config(f)


@pytest.mark.parametrize("text", ["{not json", "[1, 2]"])
def test_malformed_file_rejected(tmp_path, text):
    f = tmp_path / "c.json"
    f.write_text(text)
    with pytest.raises(ConfigError):
        parse_config(f)


def test_missing_file_is_io_error(tmp_path):
    with pytest.raises(ConfigIOError):
        parse_config(tmp_path / "missing.json")


@pytest.mark.parametrize("override, key", [
    ("population=2.5", "population"),
    ("learning_enabled=maybe", "learning_enabled"),
    ("etype=greedy", "etype"),
    ("food_value=abc", "food_value"),
    ("noequals", "noequals"),
])
def test_bad_values_name_the_key(override, key):
    with pytest.raises(ConfigError) as exc:
        parse_config(overrides=[override])
    assert exc.value.key == key


def test_typed_overrides():
    c = parse_config(overrides={"etype": "praise_blame", "learning_enabled": "true", "FUF": "3"})
    assert c.etype is EType.PRAISE_BLAME and c.learning_enabled is True and c.food_update_frequency == 3


probabilities = st.floats(0, 1, allow_nan=False)
configs = st.builds(
    WorldConfig,
    starting_reserve=st.floats(0, 5, allow_nan=False),
    maximum_reserve=st.floats(5, 20, allow_nan=False),
    food_value=st.floats(0, 5, allow_nan=False),
    food_update_frequency=st.integers(1, 50),
    falling_chance=probabilities,
    mutation_chance=probabilities,
    begging_threshold=st.floats(-1, 2, allow_nan=False),
    learning_rate=st.floats(1e-6, 1, allow_nan=False),
    scale_by_magnitude=st.booleans(),
    population=st.integers(2, 500),
    etype=st.just(EType.NONE),
    bf_use_selfishness=st.booleans(),
)


@settings(max_examples=60)
@given(configs)
def test_config_round_trip(tmp_path_factory, cfg):
    path = tmp_path_factory.mktemp("cfg") / "c.json"
    write_config(cfg, path)
    assert parse_config(path) == cfg


def test_config_round_trip_with_condition(tmp_path):
    cfg = Condition.SS_E.configure(WorldConfig(falling_chance=0.07))
    write_config(cfg, tmp_path / "c.json")
    assert parse_config(tmp_path / "c.json") == cfg


# --- CSV ---------------------------------------------------------------------

def _row(i=1, rate=2.452):
    return TelemetryRow(i, 3, 1, 2, 0.1, -0.2, 0.3, rate, rate / 5)


def test_fmt():
    assert fmt(2.452) == "2.452000"
    assert fmt(0.0000005) == "0.000000"  # binary value lies just below the tie
    assert fmt(0.0000015) == "0.000002"
    assert fmt(-0.25) == "-0.250000"


def test_telemetry_csv_layout():
    text = telemetry_csv([_row(1), _row(2)])
    lines = text.splitlines()
    assert lines[0] == ",".join(TELEMETRY_COLUMNS)
    assert lines[0] == ("iteration,deaths_total,deaths_starved,deaths_drowned,mean_courage,"
                        "mean_generosity,mean_honesty,death_rate,death_rate_plot")
    assert lines[1] == "1,3,1,2,0.100000,-0.200000,0.300000,2.452000,0.490400"
    assert text.endswith("\n") and "\r" not in text


def test_full_run_csv_line_count(tmp_path):
    rows = run_condition(Condition.NL, 1000, 10, seed=1)
    write_telemetry_csv(rows, tmp_path / "t.csv")
    assert len((tmp_path / "t.csv").read_text(encoding="utf-8").splitlines()) == 1001


def test_summary_csv_layout(tmp_path):
    rows = [SummaryRow(c, 10, 2.0 + k, 0.5, 0) for k, c in enumerate(ALL_CONDITIONS)]
    write_summary_csv(rows, tmp_path / "s.csv")
    lines = (tmp_path / "s.csv").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 8
    assert lines[0] == ",".join(SUMMARY_COLUMNS) == "condition,repeats,mean_death_rate,sd_death_rate,base_seed"
    assert lines[1] == "nl,10,2.000000,0.500000,0"
    assert lines[3] == "s+e,10,4.000000,0.500000,0"


def test_summary_without_sd_leaves_field_empty():
    assert summary_csv([SummaryRow(Condition.PB, 1, 2.0, None, 5)]).splitlines()[1] == "pb,1,2.000000,,5"


def test_empty_rows_rejected():
    with pytest.raises(ValueError):
        telemetry_csv([])
    with pytest.raises(ValueError):
        summary_csv([])


# --- SVG ---------------------------------------------------------------------

def _polylines(svg):
    out = {}
    for name, pts in re.findall(r'<polyline data-series="([a-z_]+)"[^>]*points="([^"]+)"', svg):
        out[name] = [tuple(map(float, p.split(","))) for p in pts.split()]
    return out


def test_svg_has_four_labelled_series():
    rows = run_condition(Condition.S, 50, 20, seed=2)
    svg = svg_chart(rows)
    lines = _polylines(svg)
    assert set(lines) == {"mean_courage", "mean_generosity", "mean_honesty", "death_rate_plot"}
    for name in lines:
        assert f">{name}</text>" in svg
        assert len(lines[name]) == 50
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_svg_constant_series_are_horizontal():
    rows = [_row(i, 2.0) for i in range(1, 11)]
    for pts in _polylines(svg_chart(rows)).values():
        assert len({y for _, y in pts}) == 1


def test_svg_y_axis_fixed_to_unit_band():
    rows = [TelemetryRow(i, 0, 0, 0, 1.0, -1.0, 0.0, 25.0, 5.0) for i in (1, 2)]
    lines = _polylines(svg_chart(rows))
    top = lines["mean_courage"][0][1]
    bottom = lines["mean_generosity"][0][1]
    assert top < lines["mean_honesty"][0][1] < bottom
    assert lines["death_rate_plot"][0][1] == top  # clipped to the border


def test_svg_death_rate_near_half_sits_in_upper_band():
    rows = [_row(i, 2.452) for i in range(1, 5)]
    lines = _polylines(svg_chart(rows))
    y = lines["death_rate_plot"][0][1]
    zero = lines["mean_courage"][0][1] + 0  # courage 0.1 sits just above zero
    assert y < zero


def test_svg_needs_two_rows(tmp_path):
    with pytest.raises(ValueError):
        svg_chart([])
    with pytest.raises(ValueError):
        render_svg([_row()], tmp_path / "x.svg")


# --- CLI ---------------------------------------------------------------------

def test_simulate_is_byte_deterministic(tmp_path):
    outs = []
    for k in range(2):
        csv_path, svg_path = tmp_path / f"a{k}.csv", tmp_path / f"a{k}.svg"
        assert main(["simulate", "--condition", "pb", "--seed", "42", "--iterations", "100",
                     "--out", str(csv_path), "--svg", str(svg_path)]) == 0
        outs.append((csv_path.read_bytes(), svg_path.read_bytes()))
    assert outs[0] == outs[1]


def test_simulate_csv_matches_library(tmp_path):
    out = tmp_path / "a.csv"
    assert main(["simulate", "--condition", "ss+e", "--seed", "3", "--iterations", "20",
                 "--population", "30", "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == telemetry_csv(run_condition(Condition.SS_E, 20, 30, 3))


def test_simulate_applies_overrides(tmp_path):
    out = tmp_path / "a.csv"
    assert main(["simulate", "--condition", "nl", "--iterations", "30", "--population", "20",
                 "--set", "FC=0", "--out", str(out)]) == 0
    last = out.read_text(encoding="utf-8").splitlines()[-1].split(",")
    assert last[3] == "0"


def test_experiment_command(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["experiment", "--conditions", "nl,pb", "--repeats", "2", "--iterations", "5",
                 "--population", "10", "--seed", "9", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert [l.split(",")[0] for l in lines[1:]] == ["nl", "pb"]
    assert all(l.endswith(",9") for l in lines[1:])


def test_experiment_all_conditions(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["experiment", "--conditions", "all", "--repeats", "2", "--iterations", "3",
                 "--population", "5", "--out", str(out)]) == 0
    assert len(out.read_text(encoding="utf-8").splitlines()) == 8


@pytest.mark.parametrize("argv", [
    ["simulate", "--condition", "pb", "--set", "FC=1.5"],
    ["simulate", "--condition", "pb", "--set", "bogus=1"],
    ["simulate", "--condition", "zz"],
    ["simulate", "--condition", "pb", "--seed", "-4"],
    ["simulate", "--condition", "pb", "--iterations", "0"],
    ["experiment", "--repeats", "0"],
])
def test_validation_errors_exit_1(tmp_path, argv):
    out = tmp_path / "never.csv"
    assert main(argv + ["--out", str(out)]) == 1
    assert not out.exists()


def test_io_errors_exit_2(tmp_path):
    assert main(["simulate", "--condition", "pb", "--iterations", "2", "--population", "3",
                 "--out", str(tmp_path / "no" / "dir.csv")]) == 2
    assert main(["simulate", "--condition", "pb", "--config", str(tmp_path / "missing.json"),
                 "--out", str(tmp_path / "a.csv")]) == 2


def test_config_file_flag(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"falling_chance": 0.0}))
    out = tmp_path / "a.csv"
    assert main(["simulate", "--condition", "s", "--iterations", "20", "--population", "10",
                 "--config", str(cfg), "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8").splitlines()[-1].split(",")[3] == "0"

import numpy as np
import pytest

from coevopd import engine
from coevopd.game import GameParams
from coevopd.io import (
    SnapshotFormatError,
    format_timeseries_csv,
    lattice_snapshot,
    ppm_bytes,
    read_snapshot,
    read_timeseries_csv,
    snapshot_to_lattice,
    write_snapshot,
    write_timeseries_csv,
)
from coevopd.lattice import Lattice
from coevopd.records import Snapshot, TimeSeries
from coevopd.rng import RngStream
from coevopd.scenarios import init_uniform_thirds


def test_empty_series_is_header_only(tmp_path):
    path = tmp_path / "ts.csv"
    write_timeseries_csv(TimeSeries(n_agents=9), path)
    assert path.read_text() == "step,frac_c,frac_d,frac_a\n"


def test_thirds_row_format():
    s = TimeSeries(n_agents=3)
    s.append(0, (1, 1, 1))
    assert format_timeseries_csv(s).splitlines()[1] == "0,0.333333,0.333333,0.333333"


def test_csv_round_trip(tmp_path):
    rng = RngStream(2)
    lat = init_uniform_thirds(7, rng)
    series = engine.run(lat, GameParams(), 15, rng)
    path = tmp_path / "ts.csv"
    write_timeseries_csv(series, path)
    back = read_timeseries_csv(path)
    assert back.steps == series.steps
    assert np.allclose(back.fractions, series.fractions, atol=1e-6)
    for row in back.fractions:
        assert abs(sum(row) - 1.0) <= 2e-6
    for row in series.fractions:
        assert abs(sum(row) - 1.0) <= 1e-9


def test_all_cooperator_image_is_blue():
    snap = Snapshot(3, 0, np.zeros(9, dtype=np.int8))
    data = ppm_bytes(snap)
    assert data == b"P6\n3 3\n255\n" + bytes([0, 0, 255]) * 9


def test_mixed_image_bytes(tmp_path):
    lat = Lattice.from_grid(["CDA", "ACD", "DAC"])
    path = tmp_path / "s.ppm"
    write_snapshot(lattice_snapshot(lat, 0), path, "image")
    blue, red, green = b"\x00\x00\xff", b"\xff\x00\x00", b"\x00\xff\x00"
    expected = b"P6\n3 3\n255\n" + blue + red + green + green + blue + red + red + green + blue
    assert path.read_bytes() == expected


def test_grid_text_round_trip(tmp_path):
    rng = RngStream(4)
    lat = init_uniform_thirds(6, rng)
    engine.run(lat, GameParams(), 10, rng)
    path = tmp_path / "snap.txt"
    write_snapshot(lattice_snapshot(lat, 10), path)
    text = path.read_text().splitlines()
    assert text[0] == "6 10"
    assert set("".join(text[1:7])) <= set("CDA")
    snap = read_snapshot(path)
    assert snap.step == 10
    back = snapshot_to_lattice(snap)
    assert np.array_equal(back.strategies, lat.strategies)
    assert np.array_equal(back.weights, lat.weights)
    # writing the parsed snapshot reproduces the file byte for byte
    path2 = tmp_path / "snap2.txt"
    write_snapshot(snap, path2)
    assert path2.read_bytes() == path.read_bytes()


def test_snapshot_without_weights_defaults_to_one(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("3 5\nCDA\nAAA\nCCC\n")
    snap = read_snapshot(path)
    assert snap.weights is None
    lat = snapshot_to_lattice(snap)
    assert np.all(lat.weights == 1.0) and lat.weights.size == 36


def test_corrupt_character_names_line(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("3 5\nCDA\nAXA\nCCC\n")
    with pytest.raises(SnapshotFormatError, match="line 3"):
        read_snapshot(path)


@pytest.mark.parametrize(
    "text",
    ["", "3\nCDA\n", "3 0\nCDA\nCD\nCCC\n", "4 0\nCDAC\nCDAC\n", "3 0\nCCC\nCCC\nCCC\nweights\n1.0\n",
     "3 0\nCCC\nCCC\nCCC\nnonsense\n"],
)
def test_malformed_snapshots(tmp_path, text):
    path = tmp_path / "s.txt"
    path.write_text(text)
    with pytest.raises(SnapshotFormatError):
        read_snapshot(path)


def test_snapshot_dimension_checks():
    with pytest.raises(ValueError):
        Snapshot(3, 0, np.zeros(8))
    with pytest.raises(ValueError):
        Snapshot(3, 0, np.zeros(9), np.ones(35))

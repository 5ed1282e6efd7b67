from fractions import Fraction

import pytest

from kserverlab.errors import UnknownFormat
from kserverlab.report import (
    RatioRow,
    RatioTable,
    emit,
    parse_table,
    sweep_horizons,
)


@pytest.fixture(scope="module")
def uniform_table(uniform3):
    return sweep_horizons(uniform3, 2, (0, 1), 2, Fraction(1, 1024), timing=False)


SAMPLE = RatioTable(
    rows=(
        RatioRow(1, Fraction(1), Fraction(1), Fraction(1), 0),
        RatioRow(2, Fraction(2), Fraction(3, 2), Fraction(3, 2), 7),
    )
)


class TestSweep:
    def test_uniform_det_column(self, uniform_table):
        assert [r.det_value for r in uniform_table.rows] == [1, 2]

    def test_k1_all_ones(self, line3):
        table = sweep_horizons(line3, 1, (0,), 3, Fraction(1, 1024), timing=False)
        for row in table.rows:
            assert row.det_value == row.rand_low == row.rand_high == 1

    def test_rand_below_det(self, uniform_table):
        for row in uniform_table.rows:
            assert row.rand_low <= row.det_value

    def test_det_nondecreasing(self, uniform_table):
        dets = [r.det_value for r in uniform_table.rows]
        assert dets == sorted(dets)

    def test_timing_off_is_zero(self, uniform_table):
        assert all(r.runtime_ms == 0 for r in uniform_table.rows)


class TestEmit:
    def test_csv_lines(self):
        lines = emit(SAMPLE, "csv").decode().splitlines()
        assert lines[0] == "T,det,rand_low,rand_high,runtime_ms"
        assert lines[2] == "2,2,3/2,3/2,7"
        assert len(lines) == 3

    def test_rationals_never_floats(self):
        payload = emit(SAMPLE, "csv") + emit(SAMPLE, "json")
        assert b"1.5" not in payload
        assert b"3/2" in payload

    def test_json_round_trip(self):
        assert parse_table(emit(SAMPLE, "json")) == SAMPLE

    def test_deterministic(self):
        assert emit(SAMPLE, "csv") == emit(SAMPLE, "csv")
        assert emit(SAMPLE, "json") == emit(SAMPLE, "json")

    def test_unknown_format(self):
        with pytest.raises(UnknownFormat):
            emit(SAMPLE, "yaml")


class TestFigure:
    def test_renders_png(self, tmp_path):
        from kserverlab.figures import render_ratio_figure

        out = tmp_path / "sweep.png"
        render_ratio_figure(SAMPLE, out, title="demo")
        assert out.stat().st_size > 0

import json
import math
import os
import re

import numpy as np
import pytest

import curve_io
from curve_io import (
    atomic_write,
    curve_to_csv,
    curve_to_json,
    curve_to_svg,
    read_curve_json,
    render_curve,
)
from geom_kernel import DomainError
from region_builder import RegionFamily, RegionSpec, boundary_curve


def _curve(family: str = "U", r: float = 0.5, n: int = 4):
    return boundary_curve(RegionSpec(family, r), n)


class TestCsv:
    def test_header_and_first_row(self):
        lines = curve_to_csv(_curve()).splitlines()
        assert lines[0] == "param,re,im"
        assert lines[1] == "0,2.25,0"
        assert len(lines) == 5

    def test_seventeen_digits(self):
        lines = curve_to_csv(_curve("LU", 0.3, 16)).splitlines()
        value = lines[2].split(",")[1]
        assert float(value) == _curve("LU", 0.3, 16).points[1].real

    def test_no_negative_zero(self):
        text = curve_to_csv(_curve("U", 0.5, 64))
        assert not re.search(r"(^|,)-0(,|$)", text, flags=re.M)

    def test_approximate_marker(self):
        text = curve_to_csv(_curve("V", 0.5, 16))
        assert text.startswith("# approximate\n")


class TestJson:
    def test_fields(self):
        text = curve_to_json(_curve("LV", 0.5, 256), RegionFamily.LV, 0.5)
        payload = json.loads(text)
        assert payload["family"] == "LV"
        assert payload["r"] == 0.5
        assert payload["approximate"] is False
        by_param = {row[0]: row for row in payload["points"]}
        assert by_param[0.0][1] == pytest.approx(math.log(12.0), abs=1e-12)

    def test_v_flagged(self):
        text = curve_to_json(_curve("V", 0.5, 16), RegionFamily.V, 0.5)
        payload = json.loads(text)
        assert payload["approximate"] is True

    def test_roundtrip_full_precision(self, tmp_path):
        curve = _curve("LW", 0.7, 128)
        path = tmp_path / "lw.json"
        atomic_write(str(path), curve_to_json(curve, RegionFamily.LW, 0.7))
        payload, loaded = read_curve_json(str(path))
        assert payload["family"] == "LW"
        assert np.array_equal(loaded.points, curve.points)
        assert np.array_equal(loaded.params, curve.params)

    def test_deterministic(self):
        a = curve_to_json(_curve("LU", 0.4, 64), RegionFamily.LU, 0.4)
        b = curve_to_json(_curve("LU", 0.4, 64), RegionFamily.LU, 0.4)
        assert a == b


class TestSvg:
    def test_single_closed_path(self):
        svg = curve_to_svg(_curve("U", 0.5, 32), RegionFamily.U, 0.5)
        assert svg.count("<path") == 1
        assert 'viewBox="0 0 1 1"' in svg
        assert re.search(r'd="M [^"]* Z"', svg)

    def test_transform_metadata(self):
        curve = _curve("U", 0.5, 32)
        svg = curve_to_svg(curve, RegionFamily.U, 0.5)
        meta = json.loads(re.search(r"<metadata>(.*)</metadata>", svg).group(1))
        t = meta["transform"]
        x = t["offset_x"] + t["scale"] * curve.points.real
        y = t["offset_y"] - t["scale"] * curve.points.imag
        assert np.all((x >= 0) & (x <= 1))
        assert np.all((y >= 0) & (y <= 1))


class TestRender:
    def test_unknown_format(self):
        with pytest.raises(DomainError):
            render_curve(_curve(), RegionFamily.U, 0.5, "png")

    def test_dispatch(self):
        assert render_curve(_curve(), RegionFamily.U, 0.5, "csv").startswith("param")


class TestAtomicWrite:
    def test_creates_parent_dirs(self, tmp_path):
        path = tmp_path / "nested" / "out.csv"
        atomic_write(str(path), "x\n")
        assert path.read_text(encoding="utf-8") == "x\n"

    def test_no_temp_left_on_failure(self, tmp_path, monkeypatch):
        def fail(*_args):
            raise OSError("disk full")

        monkeypatch.setattr(curve_io.os, "replace", fail)
        with pytest.raises(OSError):
            atomic_write(str(tmp_path / "out.csv"), "x\n")
        assert os.listdir(tmp_path) == []

"""SVG rendering and the command line interface."""

from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET

import pytest

from moserpack import (
    Packing,
    Placement,
    Rectangle,
    packing_to_dict,
    render_svg,
    verify_packing,
)
from moserpack.cli import cli_dispatch

SVG_NS = "{http://www.w3.org/2000/svg}"


def sample_packing() -> Packing:
    big = 1 / math.sqrt(2)
    small = math.sqrt(1 / 6)
    rect = Rectangle(big + 2 * small, 2 * small)
    return Packing(
        rect,
        [
            Placement(big, 0.0, 0.0),
            Placement(small, big, 0.0),
            Placement(small, big, small),
            Placement(small, big + small, 0.0),
        ],
    )


class TestRender:
    def test_structure(self):
        doc = render_svg(sample_packing(), 400.0)
        assert len(doc.rects) == 5
        assert doc.rects[0].css_class == "enclosing"
        assert all(r.css_class == "prefix" for r in doc.rects[1:])

    def test_y_axis_flip(self):
        p = Packing(Rectangle(2.0, 1.0), [Placement(0.5, 0.25, 0.25)])
        doc = render_svg(p, 100.0)
        sq = doc.rects[1]
        assert (sq.x, sq.y, sq.width, sq.height) == (25.0, 25.0, 50.0, 50.0)

    def test_tail_classing(self):
        doc = render_svg(sample_packing(), 100.0, tail_from=2)
        classes = [r.css_class for r in doc.rects[1:]]
        assert classes == ["prefix", "prefix", "tail", "tail"]

    def test_output_is_well_formed_svg(self):
        text = render_svg(sample_packing(), 250.0).to_string()
        root = ET.fromstring(text)
        assert root.tag == f"{SVG_NS}svg"
        assert root.get("version") == "1.1"
        assert len(root.findall(f"{SVG_NS}rect")) == 5

    def test_coordinates_round_trip_exactly(self):
        packing = sample_packing()
        scale = 173.0
        root = ET.fromstring(render_svg(packing, scale).to_string())
        rects = root.findall(f"{SVG_NS}rect")[1:]
        H = float(root.get("height"))
        for p, el in zip(packing.placements, rects):
            side = float(el.get("width"))
            x = float(el.get("x"))
            y = float(el.get("y"))
            # repr round-trips: these must be bit-identical, not just close
            assert side == p.side * scale
            assert x == (p.x - packing.rect.x) * scale
            assert y == H - (p.y - packing.rect.y) * scale - side

    def test_byte_identical_across_runs(self):
        a = render_svg(sample_packing(), 400.0).to_string()
        b = render_svg(sample_packing(), 400.0).to_string()
        assert a == b

    def test_scale_validation(self):
        with pytest.raises(ValueError):
            render_svg(sample_packing(), 0.0)


class TestCli:
    def write(self, tmp_path, name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    def test_pack_and_verify(self, tmp_path):
        inst = self.write(tmp_path, "inst.json", {"sides": [0.5, 0.5]})
        out = tmp_path / "packed.json"
        code = cli_dispatch(
            ["pack", "--mode", "moon-moser", "--instance", inst,
             "--rect", "1.0x1.0", "-o", str(out)]
        )
        assert code == 0
        packed = json.loads(out.read_text())
        assert len(packed["placements"]) == 2

        code = cli_dispatch(["verify", "--packing", str(out), "-o",
                             str(tmp_path / "report.json")])
        assert code == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["valid"] is True
        assert report["violations"] == []

    def test_verify_rejects_bad_packing(self, tmp_path):
        bad = self.write(
            tmp_path,
            "bad.json",
            {
                "rect": {"w": 1.0, "h": 1.0},
                "placements": [
                    {"side": 0.8, "x": 0.0, "y": 0.0},
                    {"side": 0.8, "x": 0.1, "y": 0.1},
                ],
            },
        )
        out = tmp_path / "report.json"
        assert cli_dispatch(["verify", "--packing", bad, "-o", str(out)]) == 1
        report = json.loads(out.read_text())
        assert report["valid"] is False
        assert report["violations"][0]["kind"] in {"overlap", "outside"}

    def test_pack_small_s1_with_factor(self, tmp_path):
        inst = self.write(tmp_path, "inst.json", {"sides": [0.1] * 100})
        out = tmp_path / "packed.json"
        code = cli_dispatch(
            ["pack", "--mode", "small-s1", "--instance", inst,
             "--F", "novotny", "-o", str(out)]
        )
        assert code == 0
        packed = json.loads(out.read_text())
        assert packed["rect"]["w"] == pytest.approx(math.sqrt((2 + math.sqrt(3)) / 3))

    def test_pack_small_s1_with_square_rect(self, tmp_path):
        inst = self.write(tmp_path, "inst.json", {"sides": [0.1] * 100})
        out = tmp_path / "packed.json"
        side = repr(math.sqrt(1.3))
        code = cli_dispatch(
            ["pack", "--mode", "small-s1", "--instance", inst,
             "--rect", f"{side}x{side}", "-o", str(out)]
        )
        assert code == 0

    def test_pack_requires_rect_for_moon_moser(self, tmp_path, capsys):
        inst = self.write(tmp_path, "inst.json", {"sides": [0.5]})
        code = cli_dispatch(["pack", "--mode", "moon-moser", "--instance", inst])
        assert code == 1
        err = json.loads(capsys.readouterr().out)
        assert err["error"]["type"] == "ValueError"
        assert "--rect" in err["error"]["message"]

    def test_precondition_failure_maps_to_error_json(self, tmp_path, capsys):
        inst = self.write(tmp_path, "inst.json", {"sides": [1.0]})
        code = cli_dispatch(
            ["pack", "--mode", "moon-moser", "--instance", inst, "--rect", "1.2x1.2"]
        )
        assert code == 1
        err = json.loads(capsys.readouterr().out)
        assert err["error"]["type"] == "PreconditionViolated"

    def test_missing_file_maps_to_error_json(self, tmp_path, capsys):
        code = cli_dispatch(
            ["pack", "--mode", "moon-moser",
             "--instance", str(tmp_path / "nope.json"), "--rect", "1x2"]
        )
        assert code == 1
        err = json.loads(capsys.readouterr().out)
        assert "error" in err

    def test_constants_report(self, tmp_path):
        out = tmp_path / "report.json"
        code = cli_dispatch(["constants", "--F", "1.37", "-o", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["N0_simple"] == 11_294_345
        assert report["N0_integral"] == 123_147
        assert report["N"] == 83_454_548
        assert report["delta_refined"] is None

    def test_constants_refined_integral(self, tmp_path):
        out = tmp_path / "report.json"
        code = cli_dispatch(
            ["constants", "--F", "1.37", "--refined", "--integral-n0", "-o", str(out)]
        )
        assert code == 0
        report = json.loads(out.read_text())
        assert report["use_integral_n0"] is True
        assert float(report["delta_refined"]) >= float(report["delta_simple"])

    def test_whitespace_command(self, tmp_path):
        from moserpack import Instance, compute_c, meir_moser_pack

        F = (2 + math.sqrt(3)) / 3
        c = float(compute_c(F))
        base_side = math.sqrt((1 - c * c) / 158)
        base = meir_moser_pack(
            Instance((base_side,) * 158), Rectangle(math.sqrt(F), F / math.sqrt(F))
        )
        base_file = self.write(tmp_path, "base.json", packing_to_dict(base))
        tail_file = self.write(
            tmp_path, "tail.json", {"sides": [c / math.sqrt(158) * 0.9] * 20}
        )
        out = tmp_path / "full.json"
        code = cli_dispatch(
            ["whitespace", "--base", base_file, "--tail", tail_file,
             "--c", repr(c), "--F", repr(F), "-o", str(out)]
        )
        assert code == 0
        packed = json.loads(out.read_text())
        assert len(packed["placements"]) == 178

    def test_reduce_toy(self, tmp_path):
        inst = self.write(tmp_path, "inst.json", {"sides": [0.1] * 100})
        toy = self.write(
            tmp_path, "toy.json",
            {"c": 0.07256326599821739, "N0": 4, "N1": 158, "N": 1167},
        )
        out = tmp_path / "result.json"
        code = cli_dispatch(
            ["reduce", "--instance", inst, "--F", "novotny",
             "--toy-params", toy, "-o", str(out)]
        )
        assert code == 0
        result = json.loads(out.read_text())
        assert result["case"] == "a"
        assert len(result["packing"]["placements"]) == 100

    def test_render_command(self, tmp_path):
        packing_file = self.write(
            tmp_path, "packing.json", packing_to_dict(sample_packing())
        )
        out = tmp_path / "out.svg"
        code = cli_dispatch(
            ["render", "--packing", packing_file, "--scale", "400",
             "--tail-from", "1", "-o", str(out)]
        )
        assert code == 0
        text = out.read_text()
        assert text.startswith("<?xml")
        root = ET.fromstring(text)
        assert len(root.findall(f"{SVG_NS}rect")) == 5

    def test_render_deterministic(self, tmp_path):
        packing_file = self.write(
            tmp_path, "packing.json", packing_to_dict(sample_packing())
        )
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        cli_dispatch(["render", "--packing", packing_file, "--scale", "300", "-o", str(a)])
        cli_dispatch(["render", "--packing", packing_file, "--scale", "300", "-o", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_packed_output_survives_verification_round_trip(self, tmp_path):
        from moserpack import packing_from_dict

        inst = self.write(tmp_path, "inst.json", {"sides": [0.4, 0.3, 0.3, 0.2]})
        out = tmp_path / "packed.json"
        code = cli_dispatch(
            ["pack", "--mode", "meir-moser", "--instance", inst,
             "--rect", "0.8x1.0", "-o", str(out)]
        )
        assert code == 0
        packing = packing_from_dict(json.loads(out.read_text()))
        assert verify_packing(packing).valid

import json
import math

import numpy as np
import pytest

from hypred import cli, document as D, render
from hypred import geometry as G
from hypred.errors import MalformedDocument
from hypred.reduced import regular_reduced_ngon


@pytest.fixture(scope="module")
def doc5():
    return D.document_from_reduced(regular_reduced_ngon(5, 1.0),
                                   metadata={"seed": "0", "source": "test"})


class TestDocumentRoundtrip:
    def test_save_load_save_byte_identical(self, doc5, tmp_path):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        D.save(doc5, p1)
        D.save(D.load(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_newline_terminated_and_key_order(self, doc5):
        text = D.to_json(doc5)
        assert text.endswith("\n")
        keys = list(json.loads(text).keys())
        assert keys == ["kind", "model", "w", "vertices", "phis", "metadata"]

    def test_float_fidelity(self, doc5):
        again = D.from_json(D.to_json(doc5))
        for a, b in zip(doc5.vertices, again.vertices):
            assert a == b  # exact tuples through the shortest-repr route

    def test_model_conversion_preserves_distances(self, doc5):
        disk = D.as_poincare_document(doc5)
        pts_a = D.vertices_as_hpoints(doc5)
        pts_b = D.vertices_as_hpoints(D.from_json(D.to_json(disk)))
        for i in range(len(pts_a)):
            for j in range(i + 1, len(pts_a)):
                assert G.distance(pts_a[i], pts_a[j]) == pytest.approx(
                    G.distance(pts_b[i], pts_b[j]), abs=1e-10)

    def test_as_polygon_preserves_order(self, doc5):
        poly = D.as_polygon(doc5)
        assert poly.n == 5
        for stored, built in zip(doc5.vertices, poly.vertices):
            assert np.abs(np.array(stored) - built.coords).max() <= 1e-12


class TestMalformedDocuments:
    def test_bad_json(self):
        with pytest.raises(MalformedDocument):
            D.from_json("{not json")

    def test_missing_fields(self):
        with pytest.raises(MalformedDocument):
            D.from_json('{"kind": "polygon"}\n')

    def test_off_hyperboloid_vertex(self, doc5):
        raw = json.loads(D.to_json(doc5))
        raw["vertices"][0][0] += 1e-3
        with pytest.raises(MalformedDocument):
            D.from_json(json.dumps(raw))

    def test_even_count_for_ordinary_reduced(self, doc5):
        raw = json.loads(D.to_json(doc5))
        raw["vertices"] = raw["vertices"][:4]
        raw["phis"] = None
        with pytest.raises(MalformedDocument):
            D.from_json(json.dumps(raw))

    def test_nonfinite_coordinates(self, doc5):
        text = D.to_json(doc5).replace(
            str(doc5.vertices[0][0]), "NaN", 1)
        with pytest.raises(MalformedDocument):
            D.from_json(text)

    def test_disk_vertex_outside(self):
        with pytest.raises(MalformedDocument):
            D.from_json('{"kind": "polygon", "model": "poincare", "w": 1.0, '
                        '"vertices": [[0.0, 0.0], [1.2, 0.0], [0.0, 0.5]]}')

    def test_bad_w(self, doc5):
        raw = json.loads(D.to_json(doc5))
        raw["w"] = -2.0
        with pytest.raises(MalformedDocument):
            D.from_json(json.dumps(raw))


class TestRender:
    def test_deterministic(self, doc5):
        assert render.render_svg(doc5) == render.render_svg(doc5)

    def test_header_and_viewbox(self, doc5):
        svg = render.render_svg(doc5)
        assert svg.startswith('<?xml version="1.0"')
        assert 'viewBox="-1.05 -1.05 2.1 2.1"' in svg
        assert 'version="1.1"' in svg
        assert svg.count("<polyline") == 5

    def test_polyline_endpoints_match_projection(self, doc5):
        svg = render.render_svg(doc5, samples_per_edge=16)
        pts = D.vertices_as_hpoints(doc5)
        for i, line in enumerate(l for l in svg.splitlines() if "<polyline" in l):
            coords = line.split('points="')[1].split('"')[0].split()
            first = np.array([float(v) for v in coords[0].split(",")])
            expect = G.to_poincare(pts[i])
            assert np.abs(first - expect).max() <= 1e-12

    def test_rotational_symmetry_of_radii(self, doc5):
        svg = render.render_svg(doc5, samples_per_edge=8)
        radii = []
        for line in (l for l in svg.splitlines() if "<polyline" in l):
            coords = line.split('points="')[1].split('"')[0].split()
            x, y = (float(v) for v in coords[0].split(","))
            radii.append(math.hypot(x, y))
        assert max(radii) - min(radii) <= 1e-12

    def test_butterfly_overlay_adds_chords(self, doc5):
        plain = render.render_svg(doc5)
        overlay = render.render_svg(doc5, show_butterflies=True)
        assert overlay.count("<polyline") == 2 * plain.count("<polyline")


class TestCli:
    def test_regular_validate_pipeline(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        assert cli.main(["regular", "--n", "3", "--w", "1", "--out", str(out)]) == 0
        assert cli.main(["validate", str(out)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is True

    def test_validate_corrupt_file_exits_3(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        cli.main(["regular", "--n", "3", "--w", "1", "--out", str(out)])
        raw = json.loads(out.read_text())
        raw["vertices"][0][0] *= 1.5  # off the hyperboloid
        out.write_text(json.dumps(raw) + "\n")
        assert cli.main(["validate", str(out)]) == 3

    def test_validate_wrong_w_exits_1(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        cli.main(["regular", "--n", "5", "--w", "1", "--out", str(out)])
        raw = json.loads(out.read_text())
        raw["w"] = 1.05
        out.write_text(json.dumps(raw) + "\n")
        assert cli.main(["validate", str(out), "--covering-samples", "0"]) == 1

    def test_missing_file_exits_3(self, capsys):
        assert cli.main(["validate", "/nonexistent/file.json"]) == 3

    def test_area_agreement(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        cli.main(["regular", "--n", "3", "--w", "1", "--out", str(out)])
        assert cli.main(["area", str(out)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["max_pairwise_deviation"] <= 1e-9

    def test_thickness_output(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        cli.main(["regular", "--n", "5", "--w", "0.7", "--out", str(out)])
        assert cli.main(["thickness", str(out)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["thickness"] == pytest.approx(0.7, abs=1e-7)
        assert payload["witness"]["kind"] in ("edge", "vertex")

    def test_construct_and_validate(self, tmp_path, capsys):
        out = tmp_path / "s.json"
        assert cli.main(["construct", "--n", "7", "--w", "1", "--seed", "42",
                         "--amplitude", "0.05", "--out", str(out)]) == 0
        assert cli.main(["validate", str(out)]) == 0

    def test_construct_nonconvergent_exits_2(self, tmp_path):
        code = cli.main(["construct", "--n", "7", "--w", "1", "--seed", "0",
                         "--amplitude", "60", "--out", str(tmp_path / "x.json")])
        assert code == 2

    def test_optimize_json(self, capsys):
        assert cli.main(["optimize", "--n", "5", "--w", "1", "--starts", "3"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["all_converged_to_uniform"] is True
        assert payload["distance_to_uniform"] <= 1e-6

    def test_table_csv(self, tmp_path):
        out = tmp_path / "t.csv"
        assert cli.main(["table", "--w", "1", "--n-max", "11", "--out", str(out)]) == 0
        text = out.read_text()
        assert text.splitlines()[0] == "n,area,circle_gap"
        assert len(text.splitlines()) == 6

    def test_render_deterministic_files(self, tmp_path):
        doc = tmp_path / "t.json"
        cli.main(["regular", "--n", "5", "--w", "1", "--out", str(doc)])
        s1, s2 = tmp_path / "a.svg", tmp_path / "b.svg"
        assert cli.main(["render", str(doc), "--out", str(s1)]) == 0
        assert cli.main(["render", str(doc), "--out", str(s2)]) == 0
        assert s1.read_bytes() == s2.read_bytes()

    def test_check_small(self, capsys):
        code = cli.main(["check", "--cases", "2", "--covering-samples", "1500"])
        out = capsys.readouterr().out
        assert code == 0, out
        assert "overall: pass" in out

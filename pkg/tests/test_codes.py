import json
import math

import numpy as np
import pytest

from kkpolar.codes import (
    CATALOG_DESIGNS,
    SphericalCode,
    catalog,
    covering_radius_r,
    is_kk_design,
    load_code,
    moment,
    save_code,
    waring_residual,
)
from kkpolar.errors import CodeFormatError, PreconditionError
from kkpolar.polynomials import gegenbauer
from kkpolar.quadrature import largest_gauss_node


def random_code(n, size, seed):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((size, n))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return SphericalCode.from_points(pts)


def single_point(n=3):
    row = [0.0] * n
    row[0] = 1.0
    return SphericalCode.from_points([row])


class TestConstruction:
    def test_rejects_non_unit(self):
        with pytest.raises(CodeFormatError):
            SphericalCode.from_points([[0.5, 0.0, 0.0]])

    def test_rejects_duplicates(self):
        with pytest.raises(CodeFormatError):
            SphericalCode.from_points([[1.0, 0.0], [1.0, 0.0]])

    def test_antipodes_allowed(self):
        code = SphericalCode.from_points([[1.0, 0.0], [-1.0, 0.0]])
        assert code.size == 2

    def test_points_read_only(self):
        code = catalog("onb:3")
        with pytest.raises(ValueError):
            code.points[0, 0] = 2.0


class TestMoment:
    @pytest.mark.parametrize("n", [2, 3, 4, 6])
    def test_onb_second_moment_vanishes(self, n):
        assert moment(catalog(f"onb:{n}"), 2) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("ell", [1, 2, 3, 5, 8])
    def test_single_point(self, ell):
        assert moment(single_point(), ell) == pytest.approx(1.0, abs=1e-12)

    def test_cube_half_second_moment(self):
        assert moment(catalog("cube_half"), 2) == pytest.approx(0.0, abs=1e-12)

    def test_bad_order(self):
        with pytest.raises(PreconditionError):
            moment(single_point(), 0)

    @pytest.mark.parametrize("n,size,seed", [(2, 12, 0), (3, 9, 1), (4, 20, 2), (6, 15, 3)])
    def test_nonnegative_on_random_codes(self, n, size, seed):
        code = random_code(n, size, seed)
        for ell in range(1, 13):
            assert moment(code, ell) >= -1e-9 * size**2


class TestDesignTest:
    def test_cell24_is_22_design(self):
        cert = is_kk_design(catalog("cell24_half"), 2)
        assert cert.is_design
        assert cert.max_even_moment_residual <= 1e-9 * 144

    def test_onb_is_11_but_not_22(self):
        for n in (2, 3, 5):
            code = catalog(f"onb:{n}")
            assert is_kk_design(code, 1).is_design
            cert = is_kk_design(code, 2)
            assert not cert.is_design
            # M_4 = n + (n^2 - n) P_4(0)
            expect = n + (n * n - n) * gegenbauer(n, 4)(0.0)
            assert cert.moments[4] == pytest.approx(expect, abs=1e-10)

    def test_single_point_not_design(self):
        cert = is_kk_design(single_point(), 1)
        assert not cert.is_design
        assert cert.moments[2] == pytest.approx(1.0, abs=1e-12)

    def test_polygon_design_order_sharp(self):
        code = catalog("polygon_half:4")
        assert is_kk_design(code, 3).is_design
        assert not is_kk_design(code, 4).is_design

    def test_icosahedron_22(self):
        cert = is_kk_design(catalog("icosahedron_half"), 2)
        assert cert.is_design
        assert not is_kk_design(catalog("icosahedron_half"), 3).is_design

    @pytest.mark.parametrize("name,k", sorted(CATALOG_DESIGNS.items()))
    def test_catalog_orders_certified(self, name, k):
        assert is_kk_design(catalog(name), k).is_design

    @pytest.mark.parametrize("n,size,seed", [(3, 10, 4), (4, 7, 5)])
    def test_antipodal_closure_equivalence(self, n, size, seed):
        code = random_code(n, size, seed)
        flipped = SphericalCode.from_points(-code.points)
        for k in (1, 2):
            assert is_kk_design(code, k).is_design == is_kk_design(flipped, k).is_design
            assert is_kk_design(code, k).max_even_moment_residual == pytest.approx(
                is_kk_design(flipped, k).max_even_moment_residual, rel=1e-12)


class TestWaring:
    def test_onb_example(self):
        code = catalog("onb:4")
        x = np.array([1.0, 0.0, 0.0, 0.0])
        assert waring_residual(code, x, 2) == pytest.approx(0.0, abs=1e-12)

    def test_cube_half_example(self):
        code = catalog("cube_half")
        assert waring_residual(code, [1.0, 0.0, 0.0], 2) == pytest.approx(0.0, abs=1e-12)

    def test_single_point(self):
        code = single_point(3)
        got = waring_residual(code, [1.0, 0.0, 0.0], 2)
        assert got == pytest.approx(1.0 - 1.0 / 3.0, abs=1e-12)

    def test_design_constancy_random_directions(self):
        # (2,2)-design: degree-4 power sums are direction independent
        code = catalog("cell24_half")
        rng = np.random.default_rng(8)
        for _ in range(25):
            x = rng.standard_normal(4)
            x /= np.linalg.norm(x)
            assert abs(waring_residual(code, x, 4)) <= 1e-9 * code.size

    def test_rejects_odd_power(self):
        with pytest.raises(PreconditionError):
            waring_residual(single_point(), [1.0, 0.0, 0.0], 3)

    def test_rejects_off_sphere_point(self):
        with pytest.raises(PreconditionError):
            waring_residual(single_point(), [0.5, 0.0, 0.0], 2)


class TestCoveringRadius:
    def test_cube_half(self):
        r, witness = covering_radius_r(catalog("cube_half"))
        assert r == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-9)
        assert np.max(np.abs(witness)) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_onb(self, n):
        r, witness = covering_radius_r(catalog(f"onb:{n}"))
        assert r == pytest.approx(1.0 / math.sqrt(n), abs=1e-9)
        assert np.abs(witness) == pytest.approx(np.full(n, 1.0 / math.sqrt(n)), abs=1e-6)

    @pytest.mark.parametrize("m", [3, 5, 8])
    def test_polygon_exact(self, m):
        r, witness = covering_radius_r(catalog(f"polygon_half:{m}"))
        assert r == pytest.approx(math.cos(math.pi / (2 * m)), abs=1e-12)
        assert np.linalg.norm(witness) == pytest.approx(1.0, abs=1e-12)

    def test_cell24(self):
        r, _ = covering_radius_r(catalog("cell24_half"))
        assert r == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-9)

    def test_single_point_high_dim(self):
        r, witness = covering_radius_r(single_point(3))
        assert r <= 1e-4
        assert abs(witness[0]) <= 1e-4

    @pytest.mark.parametrize("name,k", sorted(CATALOG_DESIGNS.items()))
    def test_fazekas_levenshtein_floor(self, name, k):
        code = catalog(name)
        r, _ = covering_radius_r(code)
        assert r >= largest_gauss_node(code.n, k) - 1e-9


class TestWelch:
    @pytest.mark.parametrize("n,size,seed", [(2, 9, 10), (3, 14, 11), (5, 30, 12)])
    def test_lower_bound_random(self, n, size, seed):
        code = random_code(n, size, seed)
        frob = float(np.sum(code.gram() ** 2))
        assert frob >= size**2 / n - 1e-9

    @pytest.mark.parametrize("name", sorted(CATALOG_DESIGNS))
    def test_equality_on_designs(self, name):
        code = catalog(name)
        frob = float(np.sum(code.gram() ** 2))
        assert frob == pytest.approx(code.size**2 / code.n, abs=1e-9)


class TestCatalog:
    def test_cube_half_inner_products(self):
        code = catalog("cube_half")
        assert code.size == 4
        gram = code.gram()
        off = gram[~np.eye(4, dtype=bool)]
        assert np.abs(off) == pytest.approx(np.full(12, 1.0 / 3.0), abs=1e-14)

    def test_simplex_frame_inner_products(self):
        for n in (2, 3, 6):
            code = catalog(f"simplex_frame:{n}")
            assert code.size == n + 1
            gram = code.gram()
            off = gram[~np.eye(n + 1, dtype=bool)]
            assert off == pytest.approx(np.full(n * (n + 1), -1.0 / n), abs=1e-12)

    def test_cross_half_equals_onb(self):
        assert np.array_equal(catalog("cross_half:4").points, catalog("onb:4").points)

    def test_sizes(self):
        assert catalog("icosahedron_half").size == 6
        assert catalog("cell24_half").size == 12
        assert catalog("polygon_half:7").size == 7
        assert catalog("cell24_half").n == 4

    @pytest.mark.parametrize("bad", [
        "onb", "onb:1", "cube_half:3", "dodecahedron", "polygon_half:x",
        "simplex_frame:-2",
    ])
    def test_unknown_or_malformed(self, bad):
        with pytest.raises(PreconditionError):
            catalog(bad)


class TestIO:
    def test_round_trip(self, tmp_path):
        code = catalog("cube_half")
        path = tmp_path / "cube.json"
        save_code(code, path)
        again = load_code(path)
        assert again.n == 3
        assert np.max(np.abs(again.points - code.points)) <= 1e-15

    def test_rejects_short_norm(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"dim": 3, "points": [[0.5, 0.0, 0.0]]}))
        with pytest.raises(CodeFormatError):
            load_code(path)

    def test_rejects_empty(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"dim": 3, "points": []}))
        with pytest.raises(CodeFormatError):
            load_code(path)

    def test_rejects_malformed_json(self, tmp_path):
        path = tmp_path / "garbage.json"
        path.write_text("{not json")
        with pytest.raises(CodeFormatError):
            load_code(path)

    def test_rejects_dim_mismatch(self, tmp_path):
        path = tmp_path / "mismatch.json"
        path.write_text(json.dumps({"dim": 4, "points": [[1.0, 0.0, 0.0]]}))
        with pytest.raises(CodeFormatError):
            load_code(path)

    def test_rejects_duplicates(self, tmp_path):
        path = tmp_path / "dup.json"
        path.write_text(json.dumps(
            {"dim": 2, "points": [[1.0, 0.0], [1.0, 0.0]]}))
        with pytest.raises(CodeFormatError):
            load_code(path)

    def test_renormalizes_slightly_off_rows(self, tmp_path):
        path = tmp_path / "off.json"
        path.write_text(json.dumps(
            {"dim": 2, "points": [[1.0 + 5e-10, 0.0], [0.0, 1.0]]}))
        code = load_code(path)
        assert np.linalg.norm(code.points[0]) == pytest.approx(1.0, abs=1e-15)

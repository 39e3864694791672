"""The two kernel backends must agree on every hot loop."""

import numpy as np
import pytest

import hbezier._kernels_numpy as knp

try:
    import hbezier._kernels_numba as knb
except ImportError:  # pragma: no cover - numba is a hard dep, but stay runnable
    knb = None

BACKENDS = [("numpy", knp)] + ([("numba", knb)] if knb is not None else [])
IDS = [name for name, _ in BACKENDS]
MODS = [mod for _, mod in BACKENDS]

RNG = np.random.default_rng(20240811)


@pytest.fixture(params=MODS, ids=IDS)
def backend(request):
    return request.param


class TestCasteljau:
    def test_point_matches_grid(self, backend):
        coords = RNG.uniform(size=9)
        svals = np.linspace(0.0, 1.0, 7)
        grid = backend.casteljau_grid(coords, svals)
        pts = [backend.casteljau_point(coords, s) for s in svals]
        np.testing.assert_allclose(grid, pts, rtol=0, atol=0)

    def test_backend_parity(self):
        coords = RNG.uniform(size=23)
        svals = np.linspace(0.0, 1.0, 33)
        ref = knp.casteljau_grid(coords, svals)
        for mod in MODS:
            np.testing.assert_allclose(mod.casteljau_grid(coords, svals), ref, atol=1e-14)

    def test_endpoints(self, backend):
        coords = RNG.uniform(size=6)
        assert backend.casteljau_point(coords, 0.0) == coords[0]
        assert backend.casteljau_point(coords, 1.0) == coords[-1]


class TestBernsteinApply:
    def test_backend_parity(self):
        v = RNG.uniform(-1.0, 1.0, size=17)
        for s in (0.0, 0.3, 1.0):
            ref = knp.bernstein_apply(v, s)
            for mod in MODS:
                np.testing.assert_allclose(mod.bernstein_apply(v, s), ref, atol=1e-14)

    def test_last_entry_is_casteljau(self, backend):
        v = RNG.uniform(size=8)
        out = backend.bernstein_apply(v, 0.4)
        assert out[-1] == backend.casteljau_point(v, 0.4)


class TestPowerSum:
    def test_binary_exponentiation_matches_npower(self, backend):
        nodes = RNG.uniform(-1, 1, 5) + 1j * RNG.uniform(-1, 1, 5)
        weights = RNG.uniform(-1, 1, 5) + 1j * RNG.uniform(-1, 1, 5)
        svals = np.linspace(0.0, 1.0, 9)
        for power in (0, 1, 7, 30):
            got = backend.power_sum_grid(nodes, weights, svals, power)
            base = (1.0 - svals[None, :]) + svals[None, :] * nodes[:, None]
            want = weights @ base**power
            np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-12)

    def test_backend_parity(self):
        nodes = np.exp(1j * RNG.uniform(0, 2 * np.pi, 12))
        weights = (RNG.uniform(size=12) + 0j) / 12
        svals = np.linspace(0.0, 1.0, 21)
        ref = knp.power_sum_grid(nodes, weights, svals, 22)
        for mod in MODS:
            np.testing.assert_allclose(mod.power_sum_grid(nodes, weights, svals, 22), ref, atol=1e-13)


class TestPascalPoly:
    def test_backend_parity(self):
        z = RNG.uniform(-1, 1, 15)
        zr = RNG.uniform(-1, 1, 15)
        svals = np.linspace(0.0, 1.0, 33)
        ref = knp.pascal_poly_grid(z, zr, svals)
        for mod in MODS:
            np.testing.assert_allclose(mod.pascal_poly_grid(z, zr, svals), ref, atol=1e-13)

    def test_split_uses_reversed_coefficients(self, backend):
        z = np.array([1.0, 0.0, 0.0])
        zr = np.array([5.0, 0.0, 0.0])
        out = backend.pascal_poly_grid(z, zr, np.array([0.25, 0.75]))
        np.testing.assert_allclose(out, [1.0, 5.0])


class TestAberth:
    def test_roots_against_numpy(self, backend):
        true_roots = np.array([-2.0, -0.5, 0.25, 1.0, 3.0])
        coeffs = np.poly(true_roots)[::-1].astype(np.complex128)  # ascending, monic
        roots, _, ok = backend.aberth(coeffs, 1e-13, 200)
        assert ok
        np.testing.assert_allclose(np.sort(roots.real), true_roots, atol=1e-10)
        np.testing.assert_allclose(roots.imag, 0.0, atol=1e-10)

    def test_complex_conjugate_pairs(self, backend):
        true_roots = np.array([1j, -1j, 2.0 + 1j, 2.0 - 1j, 0.5])
        coeffs = np.poly(true_roots)[::-1].astype(np.complex128)
        roots, _, ok = backend.aberth(coeffs, 1e-13, 200)
        assert ok
        got = np.sort_complex(roots)
        np.testing.assert_allclose(got, np.sort_complex(true_roots), atol=1e-10)

    def test_linear(self, backend):
        roots, sweeps, ok = backend.aberth(np.array([-3.0 + 0j, 1.0 + 0j]), 1e-13, 10)
        assert ok and sweeps == 0
        np.testing.assert_allclose(roots, [3.0])

    def test_determinism(self, backend):
        coeffs = np.append(RNG.uniform(-1, 1, 12), 1.0).astype(np.complex128)
        r1, _, _ = backend.aberth(coeffs, 1e-13, 200)
        r2, _, _ = backend.aberth(coeffs, 1e-13, 200)
        np.testing.assert_array_equal(r1, r2)

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kelilemma.errors import InvalidStateError, ResourceError
from kelilemma.states import (
    density_from_matrix,
    load_pair,
    pair_from_dict,
    pair_to_dict,
    random_commuting_pair,
    random_density,
    tensor_power,
)


class TestDensityFromMatrix:
    def test_unchanged(self):
        d = density_from_matrix(np.diag([0.7, 0.3]))
        assert not d.regularized
        np.testing.assert_allclose(d.matrix, np.diag([0.7, 0.3]))

    def test_maximally_mixed(self):
        d = density_from_matrix(np.eye(2) / 2)
        assert not d.regularized
        np.testing.assert_allclose(d.matrix, np.eye(2) / 2)

    def test_clipping(self):
        d = density_from_matrix(np.diag([1.0, 0.0]), floor=1e-6)
        assert d.regularized
        assert d.eigenvalues.min() >= 1e-6
        assert abs(np.trace(d.matrix).real - 1) <= 1e-12
        np.testing.assert_allclose(np.diag(d.matrix).real, [1 - 1e-6, 1e-6], atol=1e-12)

    @pytest.mark.parametrize("m, inv", [
        (np.diag([0.0, 0.0]), "trace"),
        (np.diag([-0.5, 0.2]), "trace"),
        (np.diag([0.8, 0.8]), "trace"),
        (np.array([[0.5, 0.3], [0.0, 0.5]]), "hermitian"),
        (np.array([[np.nan, 0], [0, 1]]), "finite"),
    ])
    def test_invalid(self, m, inv):
        with pytest.raises(InvalidStateError) as exc:
            density_from_matrix(m)
        assert exc.value.invariant == inv


class TestRandom:
    def test_determinism(self):
        a, b = random_density(2, 42, 1e-8), random_density(2, 42, 1e-8)
        assert np.array_equal(a.matrix, b.matrix)

    def test_dim_one(self):
        assert np.array_equal(random_density(1, 3).matrix, [[1.0]])
        p = random_commuting_pair(1, 3)
        assert np.allclose(p.rho.matrix, 1) and np.allclose(p.sigma.matrix, 1)

    def test_commuting_determinism(self):
        a, b = random_commuting_pair(4, 9), random_commuting_pair(4, 9)
        assert np.array_equal(a.rho.matrix, b.rho.matrix)
        assert np.array_equal(a.sigma.matrix, b.sigma.matrix)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**63 - 1), dim=st.integers(1, 6))
def test_random_state_invariants(seed, dim):
    d = random_density(dim, seed, 1e-8)
    assert d.eigenvalues.min() >= 1e-8
    assert abs(np.trace(d.matrix).real - 1) <= 1e-10
    pair = random_commuting_pair(dim, seed)
    r, s = pair.rho.matrix, pair.sigma.matrix
    assert np.max(np.abs(r @ s - s @ r)) <= 1e-10
    for st_ in (pair.rho, pair.sigma):
        assert st_.eigenvalues.min() >= 1e-10
        assert abs(np.trace(st_.matrix).real - 1) <= 1e-10


class TestTensorPower:
    def test_e1_square(self, e1):
        np.testing.assert_allclose(tensor_power(e1.rho, 2).matrix,
                                   np.diag([0.49, 0.21, 0.21, 0.09]), atol=1e-15)

    def test_power_one(self, e1):
        np.testing.assert_allclose(tensor_power(e1.sigma, 1).matrix, e1.sigma.matrix)

    @pytest.mark.parametrize("dim, n", [(2, 3), (3, 2), (2, 5)])
    def test_eigenvalue_products(self, dim, n):
        d = random_density(dim, 11)
        w = d.eigenvalues
        prods = w
        for _ in range(n - 1):
            prods = np.multiply.outer(prods, w).ravel()
        big = tensor_power(d, n)
        np.testing.assert_allclose(big.eigenvalues, np.sort(prods), atol=1e-9)
        assert abs(np.trace(big.matrix).real - 1) <= 1e-9

    def test_guard(self, e1):
        with pytest.raises(ResourceError, match="convolution"):
            tensor_power(e1.rho, 13)


class TestPairFile:
    def test_round_trip(self, tmp_path, e1):
        path = tmp_path / "pair.json"
        path.write_text(json.dumps(pair_to_dict(e1)))
        back = load_pair(path)
        np.testing.assert_allclose(back.rho.matrix, e1.rho.matrix)
        np.testing.assert_allclose(back.sigma.matrix, e1.sigma.matrix)

    def test_complex_entries(self):
        doc = {"dim": 2, "rho": [[[0.5, 0], [0.1, 0.2]], [[0.1, -0.2], [0.5, 0]]],
               "sigma": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}
        pair = pair_from_dict(doc)
        assert pair.rho.matrix[0, 1] == pytest.approx(0.1 + 0.2j)

    @pytest.mark.parametrize("doc, inv", [
        ({"dim": 2, "rho": [[[1, 0]]]}, "shape"),
        ({"dim": 2, "rho": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
          "sigma": [[[1, 0]]]}, "shape"),
        ({"dim": 0, "rho": [], "sigma": []}, "dim"),
        ({"dim": 2, "rho": [[[0.5, 0], [0.3, 0]], [[0, 0], [0.5, 0]]],
          "sigma": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}, "hermitian"),
        ({"dim": 2, "rho": [[[0.6, 0], [0, 0]], [[0, 0], [0.6, 0]]],
          "sigma": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}, "trace"),
        ({"dim": 2, "rho": [[[1.2, 0], [0, 0]], [[0, 0], [-0.2, 0]]],
          "sigma": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}, "positivity"),
    ])
    def test_reports_invariant(self, doc, inv):
        with pytest.raises(InvalidStateError) as exc:
            pair_from_dict(doc)
        assert exc.value.invariant == inv

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(InvalidStateError):
            load_pair(path)

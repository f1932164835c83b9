import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kelilemma.errors import ResourceError
from kelilemma.measure import AtomicMeasure, convolve, convolve_power, tail_mass
from kelilemma.modular import modular_spectrum, spectral_distribution

LN = np.log


@pytest.fixture
def nu_sigma(e1):
    return spectral_distribution(modular_spectrum(e1), "sigma")


def brute_force_power(m, n):
    """Enumerate all n-tuples of atoms (oracle for small n)."""
    pos = np.zeros(1)
    mass = np.ones(1)
    for _ in range(n):
        pos = np.add.outer(pos, m.positions).ravel()
        mass = np.multiply.outer(mass, m.masses).ravel()
    return pos, mass


class TestConstruction:
    def test_merges_and_sorts(self):
        m = AtomicMeasure.from_atoms([1.0, 0.0, 1.0 + 1e-14], [0.25, 0.5, 0.25])
        np.testing.assert_allclose(m.positions, [0.0, 1.0 + 5e-15])
        np.testing.assert_allclose(m.masses, [0.5, 0.5])

    def test_pruning_goes_to_defect(self):
        m = AtomicMeasure.from_atoms([0, 1, 2], [0.5, 0.5 - 1e-9, 1e-9], prune_tol=1e-6)
        assert len(m) == 2 and m.defect == pytest.approx(1e-9)
        assert m.mass + m.defect == pytest.approx(m.total, abs=1e-12)

    @pytest.mark.parametrize("pos, mass", [([0, 1], [0.5]), ([0], [-1.0]), ([np.nan], [1.0])])
    def test_invalid(self, pos, mass):
        with pytest.raises(ValueError):
            AtomicMeasure.from_atoms(pos, mass)


class TestConvolve:
    def test_dirac_identity(self, nu_sigma):
        out = convolve(AtomicMeasure.dirac(), nu_sigma)
        np.testing.assert_array_equal(out.positions, nu_sigma.positions)
        np.testing.assert_array_equal(out.masses, nu_sigma.masses)
        assert out.defect == nu_sigma.defect

    def test_e1_square(self, nu_sigma):
        out = convolve(nu_sigma, nu_sigma)
        np.testing.assert_allclose(out.positions, [2 * LN(0.5), LN(0.875), 2 * LN(1.75)],
                                   atol=1e-14)
        np.testing.assert_allclose(out.masses, [0.36, 0.48, 0.16], atol=1e-15)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), ka=st.integers(1, 6), kb=st.integers(1, 6))
    def test_moments_add(self, seed, ka, kb):
        r = np.random.default_rng(seed)
        a = AtomicMeasure.from_atoms(r.normal(size=ka), r.dirichlet(np.ones(ka)))
        b = AtomicMeasure.from_atoms(r.normal(size=kb), r.dirichlet(np.ones(kb)))
        c = convolve(a, b)
        assert c.mean() == pytest.approx(a.mean() + b.mean(), abs=1e-9)
        assert c.variance() == pytest.approx(a.variance() + b.variance(), abs=1e-9)

    def test_defect_accounting(self):
        a = AtomicMeasure.from_atoms([0, 1], [0.6, 0.4 - 1e-3], defect=1e-3, total=1.0)
        b = AtomicMeasure.from_atoms([0, 2], [0.5, 0.5 - 2e-3], defect=2e-3, total=1.0)
        c = convolve(a, b)
        assert c.mass + c.defect == pytest.approx(1.0, abs=1e-12)

    def test_budget(self, nu_sigma):
        with pytest.raises(ResourceError, match="prune_tol"):
            convolve(nu_sigma, nu_sigma, budget=3)


class TestConvolvePower:
    def test_n1(self, nu_sigma):
        assert convolve_power(nu_sigma, 1) is nu_sigma

    def test_n2(self, nu_sigma):
        a, b = convolve_power(nu_sigma, 2), convolve(nu_sigma, nu_sigma)
        np.testing.assert_array_equal(a.positions, b.positions)
        np.testing.assert_array_equal(a.masses, b.masses)

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_brute_force_oracle(self, n):
        r = np.random.default_rng(n)
        base = AtomicMeasure.from_atoms(r.normal(size=3), r.dirichlet(np.ones(3)))
        pos, mass = brute_force_power(base, n)
        m = convolve_power(base, n)
        for thr in np.linspace(pos.min() - 0.1, pos.max() + 0.1, 23):
            iv = tail_mass(m, thr)
            assert iv.lower == pytest.approx(mass[pos > thr].sum(), abs=1e-12)

    def test_e1_n10(self, nu_sigma):
        m = convolve_power(nu_sigma, 10)
        assert m.mass == pytest.approx(1.0, abs=1e-12)
        assert m.mean() == pytest.approx(10 * nu_sigma.mean(), abs=1e-9)

    def test_mass_conservation_n50(self):
        base = AtomicMeasure.from_atoms([-1.3, -0.2, 0.4, 1.1], [0.1, 0.2, 0.3, 0.4])
        for n in (1, 7, 20, 33, 50):
            m = convolve_power(base, n)
            assert m.mass == pytest.approx(1.0, abs=1e-11)
            assert m.mean() == pytest.approx(n * base.mean(), rel=1e-8)
            assert m.variance() == pytest.approx(n * base.variance(), rel=1e-8)

    def test_pruning_keeps_enclosure(self):
        base = AtomicMeasure.from_atoms([-1.3, -0.2, 0.4, 1.1], [0.1, 0.2, 0.3, 0.4])
        exact = convolve_power(base, 30)
        pruned = convolve_power(base, 30, prune_tol=1e-8)
        assert len(pruned) < len(exact)
        assert pruned.mass + pruned.defect == pytest.approx(1.0, abs=1e-12)
        for thr in np.linspace(-20, 20, 41):
            truth = tail_mass(exact, thr).lower
            iv = tail_mass(pruned, thr)
            assert iv.lower - 1e-12 <= truth <= iv.upper + 1e-12

    def test_bad_n(self, nu_sigma):
        with pytest.raises(ValueError):
            convolve_power(nu_sigma, 0)


class TestTailMass:
    def test_e1(self, nu_sigma):
        iv = tail_mass(nu_sigma, LN(0.6), strict=True)
        assert iv.lower == pytest.approx(0.4) and iv.upper == pytest.approx(0.4)

    def test_outside_support(self):
        m = AtomicMeasure.from_atoms([0, 1], [0.5, 0.5 - 1e-4], defect=1e-4, total=1.0)
        below = tail_mass(m, -5)
        assert below.lower == pytest.approx(m.mass) and below.upper == pytest.approx(1.0)
        above = tail_mass(m, 5)
        assert above.lower == 0 and above.upper == pytest.approx(1e-4)

    def test_boundary_atom_is_undecided(self, nu_sigma):
        iv = tail_mass(nu_sigma, LN(1.75))
        assert iv.lower == 0 and iv.upper == pytest.approx(0.4)

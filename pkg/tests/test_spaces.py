import math

import pytest

from convolab import (
    GridFunction,
    SpaceNorm,
    associate_space,
    make_grid,
    quadrature,
    random_mixture,
    sample,
    space_norm,
    verify_axioms,
)


class TestSpaceNorm:
    def test_unit_indicator_l2(self):
        g = make_grid(8.0, 4096)
        chi = sample("indicator(0,1)", g)
        assert space_norm(SpaceNorm(2.0), chi) == pytest.approx(1.0, abs=2 * g.dx)

    def test_unit_indicator_sup(self, std_grid):
        chi = sample("indicator(0,1)", std_grid)
        assert space_norm(SpaceNorm(math.inf), chi) == 1.0

    def test_weighted_indicator_closed_form(self):
        # oracle: (int_0^1 x dx)^(1/3) = 2^(-1/3) = 0.7937005259840998
        g = make_grid(8.0, 4096)
        chi = sample("indicator(0,1)", g)
        got = space_norm(SpaceNorm(3.0, 1.0), chi)
        assert got == pytest.approx(0.7937005259840998, abs=2 * g.dx)

    def test_invalid_spaces(self):
        with pytest.raises(ValueError):
            SpaceNorm(0.5)
        with pytest.raises(ValueError):
            SpaceNorm(2.0, 1.0)  # needs gamma < p - 1
        with pytest.raises(ValueError):
            SpaceNorm(3.0, -1.0)
        with pytest.raises(ValueError):
            SpaceNorm(math.inf, 1.0)

    def test_muckenhoupt_boundary_admits_interior(self):
        SpaceNorm(3.0, 1.0)  # -1 < 1 < 2 holds
        SpaceNorm(1.0, -0.5)


class TestAssociateSpace:
    def test_self_dual(self):
        dual = associate_space(SpaceNorm(2.0))
        assert dual == SpaceNorm(2.0, 0.0)

    def test_dual_exponent(self):
        dual = associate_space(SpaceNorm(3.0))
        assert dual.p == pytest.approx(1.5)
        assert dual.gamma == 0.0

    def test_weighted_dual(self):
        dual = associate_space(SpaceNorm(3.0, 1.0))
        assert dual.p == pytest.approx(1.5)
        assert dual.gamma == pytest.approx(-0.5)

    @pytest.mark.parametrize("p", [1.0, math.inf])
    def test_endpoints_unsupported(self, p):
        with pytest.raises(ValueError):
            associate_space(SpaceNorm(p))

    @pytest.mark.parametrize("space", [SpaceNorm(2.0), SpaceNorm(3.0, 1.0),
                                       SpaceNorm(1.5)])
    def test_hoelder_pairing_random(self, space, std_grid, rng):
        dual = associate_space(space)
        for _ in range(100):
            f = random_mixture(std_grid, rng)
            g = random_mixture(std_grid, rng)
            pairing = abs(quadrature(GridFunction(std_grid,
                                                  f.values * g.values)))
            bound = space_norm(space, f) * space_norm(dual, g)
            assert pairing <= bound * (1 + 1e-9) + 1e-12


class TestAxiomHarness:
    @pytest.mark.parametrize("p,gamma", [(2.0, 0.0), (3.0, 1.0), (1.5, 0.0)])
    def test_all_axioms_pass(self, p, gamma):
        checks = verify_axioms(SpaceNorm(p, gamma), trials=50, seed=7)
        assert [c.axiom for c in checks] == ["A1", "A2", "A3", "A4", "A5"]
        assert all(c.passed for c in checks)

    def test_homogeneity_exact(self, std_grid, rng):
        f = random_mixture(std_grid, rng)
        space = SpaceNorm(2.0)
        assert space_norm(space, 2.0 * f) == pytest.approx(
            2.0 * space_norm(space, f), rel=1e-12
        )

    def test_lattice_monotone(self, std_grid, rng):
        f = random_mixture(std_grid, rng)
        half = 0.5 * f
        space = SpaceNorm(2.0)
        assert space_norm(space, half) <= space_norm(space, f)

    def test_trials_validated(self):
        with pytest.raises(ValueError):
            verify_axioms(SpaceNorm(2.0), trials=0, seed=1)

    def test_report_is_json_ready(self):
        checks = verify_axioms(SpaceNorm(2.0), trials=5, seed=3)
        for c in checks:
            d = c.to_json()
            assert set(d) == {"axiom", "pass", "worst_slack"}

"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings.  Tolerances are pinned here and nowhere else.
"""

import math
import time
from contextlib import contextmanager

import numpy as np

from convolab import (
    GridFunction,
    LimitSweepConfig,
    SpaceNorm,
    band_limited_probe,
    conjugated_apply,
    density_experiment,
    dft_pair,
    limit_operator_sweep,
    make_grid,
    make_mollifier,
    maximal_function,
    mollify_sweep,
    multiplier_norm_lower_bound,
    parse_symbol,
    sample,
    space_norm,
    symbol_norms,
    tail_sup,
    verify_axioms,
)

L2 = SpaceNorm(2.0)


@contextmanager
def criterion(number, budget_s, description):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        print(f"[criterion {number:2d}] {status}  {description} "
              f"({elapsed:.2f} s, budget {budget_s:.0f} s)")
    assert elapsed < budget_s, f"criterion {number} exceeded {budget_s}s budget"


def test_criterion_01_indicator_variation_constants():
    with criterion(1, 1.0, "indicator symbols have norms (1, 2, 3) exactly"):
        rng = np.random.default_rng(1)
        for _ in range(10):
            c = float(rng.uniform(-12, 10))
            d = c + float(rng.uniform(0.05, 6))
            sup, var, vn = symbol_norms(parse_symbol(f"indicator({c},{d})"))
            assert abs(sup - 1.0) <= 1e-12
            assert abs(var - 2.0) <= 1e-12
            assert abs(vn - 3.0) <= 1e-12


def test_criterion_02_round_trip_and_parseval():
    with criterion(2, 1.0, "transform round trip and Parseval to 1e-10"):
        rng = np.random.default_rng(2)
        for n in (64, 256, 1024):
            g = make_grid(8.0, n)
            f = GridFunction(g, rng.normal(size=n) + 1j * rng.normal(size=n))
            back = dft_pair(dft_pair(f, "forward"), "inverse")
            assert np.max(np.abs(back.values - f.values)) < 1e-10
            hat = dft_pair(f, "forward")
            lhs = float(np.sum(np.abs(hat.values) ** 2)) * g.dxi
            rhs = 2 * math.pi * float(np.sum(np.abs(f.values) ** 2)) * g.dx
            assert abs(lhs - rhs) <= 1e-10 * rhs


def test_criterion_03_modulation_shift_identity():
    with criterion(3, 5.0, "conjugation equals the shifted symbol on 50 triples"):
        g = make_grid(8.0, 256)
        rng = np.random.default_rng(3)
        symbols = [parse_symbol(s) for s in
                   ("indicator(-1,1)", "arctan", "rational_decay(1)",
                    "const(0.7)", "shift(indicator(2,3),-1)")]
        done = 0
        while done < 50:
            a = symbols[done % len(symbols)]
            lo = float(rng.uniform(-12, 8))
            band = (lo, lo + float(rng.uniform(0.5, 4.0)))
            h = int(rng.integers(1, 60)) * g.dxi
            if max(abs(band[0]), band[1] + h) >= g.freq_edge:
                continue
            f = band_limited_probe(g, band, "random", seed=done)
            res = conjugated_apply(a, h, f)
            assert res.on_lattice
            assert res.identity_residual < 1e-10
            done += 1


def test_criterion_04_limit_operator_decay():
    with criterion(4, 10.0, "conjugated norms annihilate/decay within the tail bound"):
        g = make_grid(8.0, 256)
        f = band_limited_probe(g, (1.0, 2.0))
        nf = space_norm(L2, f)

        # compactly supported symbol: exact annihilation once the shifted
        # band leaves the support (inf(band) + h > 1 holds for every h > 0)
        shifts = tuple(m * g.dxi for m in range(1, 121))
        cfg = LimitSweepConfig(parse_symbol("indicator(-1,1)"), f,
                               (1.0, 2.0), shifts, L2)
        for row in limit_operator_sweep(cfg):
            assert row.norm < 1e-10
            assert row.within_bound

        # decaying symbol: doubling the shift quarters the norm
        a = parse_symbol("rational_decay(1)")
        doubling = tuple(round(v / g.dxi) * g.dxi for v in (8.0, 16.0, 32.0))
        rows = limit_operator_sweep(
            LimitSweepConfig(a, f, (1.0, 2.0), doubling, L2)
        )
        for r1, r2 in zip(rows, rows[1:]):
            assert 0.25 / 2 <= r2.norm / r1.norm <= 0.25 * 2
        for row in rows:
            bound = 3.0 * tail_sup(a, 1.0 + row.shift) * nf
            assert row.norm <= bound + 1e-8


def test_criterion_05_maximal_operator():
    with criterion(5, 30.0, "fast scan == interval oracle; profile of M chi"):
        rng = np.random.default_rng(5)
        sizes = (64, 128, 256, 512)
        for trial in range(200):
            n = sizes[trial % len(sizes)]
            g = make_grid(8.0, n)
            vals = rng.normal(size=n)
            if trial % 9 == 0:
                vals = np.abs(vals)
            if trial % 7 == 0:
                vals = (rng.uniform(size=n) > 0.5).astype(float)
            f = GridFunction(g, vals)
            fast = maximal_function(f, "fast").values.real
            oracle = maximal_function(f, "oracle").values.real
            assert np.max(np.abs(fast - oracle)) <= 1e-12

        g = make_grid(8.0, 512)
        m = maximal_function(sample("indicator(-1,1)", g), "fast").values.real
        for target in (-4.0, -2.0, -1.5, 1.5, 2.0, 4.0):
            j = int(np.argmin(np.abs(g.t - target)))
            assert abs(m[j] - 2.0 / (1.0 + abs(g.t[j]))) <= 2 * g.dx
        outside = np.abs(g.t) > 1.0
        assert np.all(1.0 / np.abs(g.t[outside]) <= m[outside] + 1e-12)


def test_criterion_06_mollification():
    with criterion(6, 10.0, "pointwise domination and second-order convergence"):
        g = make_grid(16.0, 1024)
        deltas = [1.0 / 2**i for i in range(7)]  # 1 .. 1/64
        probe = sample("gaussian", g)
        for kind in ("gaussian", "bump_spectrum"):
            phi = make_mollifier(kind, g)
            rows = mollify_sweep(probe, phi, deltas, L2)
            assert all(r.pointwise_ok for r in rows)
            errors = [r.error for r in rows]
            assert all(b < a for a, b in zip(errors, errors[1:]))
            assert errors[-1] < 1e-3


def test_criterion_07_band_limited_kernel():
    with criterion(7, 2.0, "mollifier spectra vanish outside their bands"):
        g = make_grid(16.0, 1024)
        phi = make_mollifier("bump_spectrum", g)
        hat = dft_pair(phi.kernel, "forward").values
        assert np.max(np.abs(hat[np.abs(g.xi) > 1.0])) < 1e-9
        smooth = sample("bump", g)
        for delta in (1.0, 0.5):
            from convolab import convolve

            hat = dft_pair(convolve(smooth, phi.scaled(delta)), "forward").values
            outside = np.abs(g.xi) > 1.0 / delta
            assert np.max(np.abs(hat[outside])) < 1e-9


def test_criterion_08_density():
    with criterion(8, 10.0, "band-limited approximant within eps = 0.1"):
        g = make_grid(16.0, 4096)
        chi = sample("indicator(-1,1)", g)
        result = density_experiment(chi, 0.1, L2)
        assert result.achieved < 0.1
        assert result.out_of_band_mass < 1e-9


def test_criterion_09_stechkin_at_p2():
    with criterion(9, 5.0, "multiplier norm below the variation norm at p=2"):
        g = make_grid(8.0, 256)
        for label in ("indicator(-1,1)", "arctan", "rational_decay(1)"):
            a = parse_symbol(label)
            lower = multiplier_norm_lower_bound(a, L2, trials=10, seed=9, grid=g)
            assert lower <= symbol_norms(a).v_norm + 1e-8
            diagonal = float(np.max(np.abs(a(g.xi))))
            assert abs(lower - diagonal) <= 1e-10


def test_criterion_10_axiom_harness():
    with criterion(10, 10.0, "lattice-norm axioms hold on all three spaces"):
        for p, gamma in ((2.0, 0.0), (3.0, 1.0), (1.5, 0.0)):
            checks = verify_axioms(SpaceNorm(p, gamma), trials=50, seed=10)
            assert all(c.passed for c in checks), (p, gamma, checks)

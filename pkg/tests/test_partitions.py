import math
from fractions import Fraction

import numpy as np
import pytest

from gendiff import (
    DegenerateFrequency,
    DomainMismatch,
    InvalidInput,
    OutOfCell,
    Partition,
    StructuralViolation,
    dist_to_int,
    partition_gamma,
    quadratic_dominates,
    refine,
    refinement_stats,
    sine_lower_bound_check,
    sine_zeros,
    snap_zero_pair,
    theta,
)
from gendiff.partitions import refinement_for, refinement_stats_exact, sine_bound_scan

PI = math.pi


def test_theta_values():
    assert theta(8) == 5
    assert theta(10) == 6
    assert theta(1) == 1
    with pytest.raises(InvalidInput):
        theta(0)


def test_sine_zeros_even():
    zs = sine_zeros(9, 1)
    assert np.allclose(zs, [0, PI / 8, PI / 4, 3 * PI / 8, PI / 2], atol=1e-15)
    zs = sine_zeros(9, -1)
    assert np.allclose(zs, [0, PI / 10, 2 * PI / 10, 3 * PI / 10, 4 * PI / 10, PI / 2],
                       atol=1e-15)


def test_sine_zeros_trivial_and_degenerate():
    assert sine_zeros(1, 0) == [0.0]
    with pytest.raises(DegenerateFrequency):
        sine_zeros(4, 4)


def test_partition_gamma_breakpoints():
    p = partition_gamma(9, 1)
    assert p.breaks == (Fraction(0), Fraction(1, 16), Fraction(3, 16),
                        Fraction(5, 16), Fraction(7, 16), Fraction(1, 2))
    p = partition_gamma(9, -1)
    assert p.cell_count == 6
    assert p.breaks == (Fraction(0), Fraction(1, 20), Fraction(3, 20),
                        Fraction(5, 20), Fraction(7, 20), Fraction(9, 20),
                        Fraction(1, 2))
    p = partition_gamma(2, 1)
    assert p.breaks == (Fraction(0), Fraction(1, 2))


def test_zero_placement_in_cells():
    for n, gamma in [(9, 1), (9, -1), (12, 0), (7, -3), (2, 1), (-15, 4)]:
        r = abs(n - gamma)
        p = partition_gamma(n, gamma)
        zs = sine_zeros(n, gamma)
        cells = p.cells_radians()
        assert len(zs) == len(cells)
        for j, (z, (lo, hi)) in enumerate(zip(zs, cells)):
            assert lo - 1e-15 <= z <= hi + 1e-15
            if j == 0:
                assert abs(z - lo) <= 1e-15
            elif r % 2 == 0 and j == len(cells) - 1:
                assert abs(z - hi) <= 1e-15
            else:
                assert abs(z - 0.5 * (lo + hi)) <= 1e-15


def test_refine_figure_case():
    ref = refine(partition_gamma(9, 1), partition_gamma(9, -1))
    assert ref.base.cell_count == 10
    assert len(ref.provenance) == 10
    assert ref.base.cell_count <= 5 + 6 - 1


def test_refine_self_gives_diagonal_provenance():
    p = partition_gamma(11, 2)
    ref = refine(p, p)
    assert ref.base.breaks == p.breaks
    assert ref.provenance == tuple((j, j) for j in range(p.cell_count))


def test_refine_with_trivial_partition():
    p2 = partition_gamma(9, -1)
    single = Partition((Fraction(0), Fraction(1, 2)))
    ref = refine(single, p2)
    assert ref.base.breaks == p2.breaks
    assert ref.provenance == tuple((0, k) for k in range(p2.cell_count))


def test_refine_endpoint_mismatch():
    with pytest.raises(DomainMismatch):
        refine(Partition((Fraction(0), Fraction(1, 4))),
               Partition((Fraction(0), Fraction(1, 2))))


def test_refinement_stats_examples():
    st = refinement_stats(9, 1, -1)
    assert st.count == 10 and st.count_bound == 20
    assert st.max_length <= PI / 10 + 1e-15
    st = refinement_stats(2, 1, 0)
    assert st.count_bound == 4
    assert st.length_bound == pytest.approx(PI / 2)
    with pytest.raises(DegenerateFrequency):
        refinement_stats(1, 1, 0)


def test_refinement_stats_alpha_equals_beta():
    p = partition_gamma(13, 4)
    cnt, bound, max_frac, _ = refinement_stats_exact(13, 4, 4)
    assert cnt == p.cell_count
    assert cnt <= bound == 2 * 9


def test_count_and_length_bounds_sample():
    # exact combinatorial bounds on a sample; the full 2 <= |n| <= 500 sweep
    # runs in the acceptance suite
    for alpha, beta in [(1, -1), (0, 3), (-2, 2)]:
        for n in range(-60, 61):
            if n in (alpha, beta):
                continue
            cnt, cbound, max_frac, len_frac = refinement_stats_exact(n, alpha, beta)
            assert cnt <= cbound
            assert max_frac <= len_frac  # exact Fractions, no tolerance


def test_exact_stats_match_fraction_refinement():
    for n, alpha, beta in [(9, 1, -1), (2, 1, 0), (-7, 0, 3), (13, -2, 2), (3, 0, 1)]:
        ref = refinement_for(n, alpha, beta)
        cnt, _, max_frac, _ = refinement_stats_exact(n, alpha, beta)
        assert cnt == ref.base.cell_count
        assert max_frac == max(hi - lo for lo, hi in ref.base.cells())


def test_dist_to_int():
    assert dist_to_int(0.3) == pytest.approx(0.3)
    assert dist_to_int(-1.25) == pytest.approx(0.25)
    assert dist_to_int(7) == 0.0
    rng = np.random.default_rng(31)
    xs = rng.uniform(-50, 50, 1000)
    ds = np.abs(xs - np.round(xs))
    assert all(abs(dist_to_int(x) - d) <= 1e-15 for x, d in zip(xs, ds))
    assert all(0 <= dist_to_int(x) <= 0.5 for x in xs)


def test_sine_dist_inequality():
    rng = np.random.default_rng(32)
    xs = rng.uniform(-100, 100, 100_000)
    lhs = np.abs(np.sin(PI * xs))
    rhs = 2 * np.abs(xs - np.round(xs))
    assert np.all(lhs >= rhs - 1e-12)


def test_sine_lower_bound_at_zero():
    lhs, rhs, holds = sine_lower_bound_check(9, 1, -1, 1, 1, PI / 8)
    assert rhs == 0.0 and lhs <= 1e-30 and holds


def test_sine_lower_bound_at_endpoint():
    # left endpoint of cell (1,1), equidistant between consecutive zeros of sin 8x
    lhs, rhs, holds = sine_lower_bound_check(9, 1, -1, 1, 1, PI / 16)
    assert holds and lhs > rhs


def test_sine_lower_bound_out_of_cell():
    with pytest.raises(OutOfCell):
        sine_lower_bound_check(9, 1, -1, 1, 1, 1.5)
    with pytest.raises(OutOfCell):
        sine_lower_bound_check(9, 1, -1, 0, 4, 0.01)  # (0,4) not a refinement cell


def test_sine_lower_bound_sampled_cells():
    rng = np.random.default_rng(33)
    for n in (-17, 5, 9, 40):
        ref = refinement_for(n, 1, -1)
        for (lo_f, hi_f), (j, k) in zip(ref.base.cells(), ref.provenance):
            lo, hi = float(lo_f) * PI, float(hi_f) * PI
            for x in rng.uniform(lo, hi, 8):
                lhs, rhs, holds = sine_lower_bound_check(n, 1, -1, j, k, x)
                assert holds, (n, j, k, x, lhs, rhs)


def test_snap_zero_pair_cases():
    assert snap_zero_pair((0.2, 0.3), 0.25, 0.35) == (0.25, 0.3)
    assert snap_zero_pair((0.2, 0.3), 0.1, 0.4) == (0.2, 0.3)
    cell = (PI / 16, 3 * PI / 20)
    assert snap_zero_pair(cell, PI / 8, PI / 10) == (PI / 8, PI / 10)
    assert snap_zero_pair((0.2, 0.3), 0.1, 0.25) == (0.2, 0.25)
    assert snap_zero_pair((0.2, 0.3), 0.4, 0.25) == (0.3, 0.25)


def test_snap_zero_pair_same_side_violation():
    with pytest.raises(StructuralViolation):
        snap_zero_pair((0.2, 0.3), 0.05, 0.1)


def test_snapped_product_inequality():
    rng = np.random.default_rng(34)
    for n in (7, 9, -23):
        ref = refinement_for(n, 1, -1)
        r1, r2 = abs(n - 1), abs(n + 1)
        for (lo_f, hi_f), (j, k) in zip(ref.base.cells(), ref.provenance):
            lo, hi = float(lo_f) * PI, float(hi_f) * PI
            za, zb = PI * j / r1, PI * k / r2
            zap, zbp = snap_zero_pair((lo, hi), za, zb)
            xs = rng.uniform(lo, hi, 200)
            orig = (xs - za) ** 2 * (xs - zb) ** 2
            snapped = (xs - zap) ** 2 * (xs - zbp) ** 2
            assert np.all(orig >= snapped - 1e-12)


def test_quadratic_dominates():
    assert quadratic_dominates(0.0, 0.1, 0.2, 0.3)
    assert quadratic_dominates(0.4, 0.4, 0.9, 0.9)
    rng = np.random.default_rng(35)
    for _ in range(1000):
        c, a, b, d = np.sort(rng.uniform(0, 1, 4))
        if not a < b:
            continue
        assert quadratic_dominates(c, a, b, d)
    with pytest.raises(InvalidInput):
        quadratic_dominates(0.5, 0.4, 0.6, 0.7)


def test_sine_bound_scan_clean():
    checked, violations = sine_bound_scan(9, 1, -1, 500, seed=1)
    assert violations == 0 and checked >= 500 * 10

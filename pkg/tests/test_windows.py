from math import comb

import pytest

from pfgr import windows
from pfgr.windows import (WindowBundle, default_bounds, exceptional_report,
                          ext_table_X1, ext_table_X2, gr_ext, hom0_frakX,
                          window_generators, witten_index_candidates)

T = WindowBundle


def test_window_generators_counts():
    assert len(window_generators(3, 7)) == 21
    assert window_generators(1, 1) == [T(0, 0)]
    assert len(window_generators(2, 5)) == 10
    with pytest.raises(ValueError):
        window_generators(0, 3)


def test_default_bounds():
    assert default_bounds(7) == (3, 7)
    assert default_bounds(5) == (2, 5)


def test_x1_worked_examples():
    table = ext_table_X1(T(0, 0), T(0, 0), n=7, p_cutoff=0)
    assert table == {(0, 0): 1}
    table = ext_table_X1(T(0, 0), T(1, 0), n=7, p_cutoff=0)
    assert table == {(0, 0): 7}


def test_x1_fibre_multiplicity():
    # degree-one fibre coordinates contribute n copies of each twist
    table = ext_table_X1(T(0, 0), T(0, 1), n=7, p_cutoff=1)
    assert table[(0, 0)] == 21      # sections of the wedge twist
    assert table[(1, 0)] == 196 * 7  # sections of the square twist, 7 copies


def test_x2_boundary_case():
    # Hom(T00 -> T06): the extreme determinant power, pushed to O(-6)
    table, nu = ext_table_X2(T(0, 0), T(0, 6), n=7, x_cutoff=0)
    assert table == {} and nu == 6
    # the reverse order has plenty of sections and a negative det power
    table, nu = ext_table_X2(T(0, 6), T(0, 0), n=7, x_cutoff=0)
    assert table == {(0, 0): comb(12, 6)} and nu == -6


def test_x2_trivial_pair():
    table, nu = ext_table_X2(T(0, 0), T(0, 0), n=7, x_cutoff=0)
    assert table == {(0, 0): 1} and nu == 0


def test_x2_det_power_bound_sample():
    for b1 in (T(0, 0), T(2, 6), T(1, 3)):
        for b2 in (T(0, 0), T(2, 6), T(0, 5)):
            _, nu = ext_table_X2(b1, b2, n=7, x_cutoff=12)
            assert nu <= 6


def test_hom0_frakX_identity():
    assert hom0_frakX(T(1, 3), T(1, 3), n=7)[(0, 0)] == 1


def test_hom0_frakX_single_p_degree():
    # frozen: invariants of det (x) (V (x) det^-1) give one copy of V
    table = hom0_frakX(T(0, 1), T(0, 0), n=7, x_cutoff=4, p_cutoff=4)
    assert table[(0, 1)] == 7


def test_hom0_frakX_wedge_coordinates():
    table = hom0_frakX(T(0, 0), T(0, 1), n=7, x_cutoff=4, p_cutoff=4)
    assert table[(2, 0)] == 21


def test_hom0_cross_checks_single_pair():
    b1, b2 = T(1, 0), T(2, 1)
    frak = hom0_frakX(b1, b2, n=7, x_cutoff=12, p_cutoff=6)
    x1 = ext_table_X1(b1, b2, n=7, p_cutoff=6)
    for d_p in range(7):
        d_x = b2.l - b1.l + 2 * (b2.m - b1.m) + 2 * d_p
        if d_x > 12:
            continue
        assert frak.get((d_x, d_p), 0) == x1.get((d_p, 0), 0)
    x2, _ = ext_table_X2(b1, b2, n=7, x_cutoff=12)
    for d_x in range(13):
        bal = b1.l - b2.l + 2 * (b1.m - b2.m) + d_x
        if bal % 2 or bal < 0 or bal // 2 > 6:
            continue
        assert frak.get((d_x, bal // 2), 0) == x2.get((d_x, 0), 0)


def test_gr_ext_unitriangularity():
    gens = sorted(window_generators(3, 7), key=lambda b: (b.m, b.l))
    for i, b1 in enumerate(gens):
        for j, b2 in enumerate(gens):
            h0 = gr_ext(b1, b2, 7).get(0, 0)
            if i == j:
                assert h0 == 1
            elif j < i:
                assert h0 == 0


def test_report_defaults_pass():
    rep = exceptional_report(n=7, dp_cutoff=6, dx_cutoff=6, hom0_dp_cutoff=4)
    assert rep.passed
    assert rep.size == 21
    assert (rep.l_bound, rep.m_bound) == (3, 7)


def test_report_oversized_rectangle_fails():
    rep = exceptional_report(3, 8, n=7, dp_cutoff=2, dx_cutoff=2, hom0_dp_cutoff=2)
    assert not rep.passed
    names = {c.name for c in rep.failures()}
    assert "strong_exceptionality_gr" in names
    # the witness names an offending pair with its nonvanishing table
    bad = [c for c in rep.checks if c.name == "strong_exceptionality_gr"][0]
    assert bad.witness["violations"]


def test_report_smaller_grassmannian_passes():
    rep = exceptional_report(n=5, dp_cutoff=6, dx_cutoff=6, hom0_dp_cutoff=4)
    assert rep.passed
    assert rep.size == 10
    assert (rep.l_bound, rep.m_bound) == (2, 5)


def test_witten_index_candidates():
    assert witten_index_candidates(7) == {"rectangle": 3, "index": 3}
    assert witten_index_candidates(5) == {"rectangle": 2, "index": 2}
    # for even dimension the two candidate counts genuinely differ and are
    # reported side by side
    assert witten_index_candidates(6) == {"rectangle": 3, "index": 2}

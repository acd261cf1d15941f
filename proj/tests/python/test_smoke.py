import math
from fractions import Fraction

import numpy as np
import pytest

import fdrelay


def config(**kw):
    base = dict(n_t=2, m_r=2, m_t=2, n_r=2, c_rr=0.05)
    base.update(kw)
    return fdrelay.SystemConfig(**base)


def test_schemes_listed():
    assert fdrelay.schemes() == ["receive_zf", "transmit_zf", "OP", "MM", "PR", "LI"]


def test_exact_outage_is_a_probability_and_falls_with_power():
    c = config()
    p = [fdrelay.outage_exact("MM", c.with_power_db(db)) for db in (0, 10, 20)]
    assert all(0.0 <= x <= 1.0 for x in p)
    assert p[0] > p[1] > p[2]


def test_simulation_agrees_with_exact():
    c = config(n_r=1)
    grid = [5.0, 10.0]
    sim = fdrelay.simulate("receive_zf", c, grid, trials=200_000, seed=3)
    for db, (p_hat, stderr, events) in zip(grid, sim):
        exact = fdrelay.outage_exact("receive_zf", c.with_power_db(db))
        se = math.sqrt(exact * (1 - exact) / 200_000)
        assert abs(p_hat - exact) <= 4 * se
        assert events == round(p_hat * 200_000)


def test_constants():
    c = config()
    assert fdrelay.optimal_alpha("PR", c) == Fraction(2, 3)
    assert fdrelay.diversity_order("PR", c) == Fraction(4, 3)
    assert fdrelay.diversity_order("receive_zf", config(n_r=1)) == 2


def test_precoder_nulls_the_loop():
    c = config(m_r=3, c_rr=1.0)
    h_sr, h_rd, h_rr = fdrelay.sample_channels(c, 7, 0)
    assert h_sr.shape == (3, 2) and h_rd.shape == (2, 2) and h_rr.shape == (3, 2)
    sol = fdrelay.zf_precoder("receive_zf", h_sr, h_rd, h_rr, 10.0, 10.0)
    leak = np.vdot(sol["w_r"], h_rr @ sol["w_t"])
    assert abs(leak) <= 1e-9 * np.linalg.norm(sol["w"]) ** 2 * np.linalg.norm(h_rr)


def test_wishart_cdf_reduces_to_chi_square():
    # Vector channel: the largest eigenvalue is Gamma(2, 1).
    x = 1.7
    assert fdrelay.wishart_maxeig_cdf(1, 2, x) == pytest.approx(1 - math.exp(-x) * (1 + x))


def test_errors_map_to_python_exceptions():
    with pytest.raises(fdrelay.UnsupportedConfigError):
        fdrelay.outage_exact("receive_zf", config(m_r=1))
    with pytest.raises(fdrelay.DomainError):
        fdrelay.SystemConfig(n_t=0, m_r=1, m_t=1, n_r=1)
    with pytest.raises(fdrelay.Error):
        fdrelay.outage_asymptotic("PR", config(alpha=1.0))


def test_cli_constants():
    code, out, err = fdrelay.run_cli(["constants", "--nt", "2", "--mr", "2", "--mt", "2", "--nr", "2"])
    assert code == 0 and err == ""
    assert "2/3" in out.splitlines()[2]

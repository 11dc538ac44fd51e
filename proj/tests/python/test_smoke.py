import json
import math

import numpy as np
import pytest

archinf = pytest.importorskip("archinf")


def test_pi_recurrence_and_product_identity():
    d = 0.3
    pi = archinf.figarch_pi(d, 1000)
    prod = math.prod(1 - d / k for k in range(1, 1001))
    assert abs((1 - sum(pi)) - prod) < 1e-12
    assert pi[0] == pytest.approx(d)


def test_iarch_normalization():
    seq = archinf.CoeffSequence.figarch0d0(0.5, 100_000)
    assert archinf.a_norm_p(seq, 1.0, J=100_000) == pytest.approx(1.0, abs=1e-5)
    assert math.isinf(archinf.a_norm_p(seq, 0.6, J=100_000))


def test_gaussian_moments():
    g = archinf.InnovationDist.parse("gaussian")
    assert archinf.mu_p(g, 0.5) == pytest.approx(math.sqrt(2 / math.pi))
    assert archinf.z2_log_z2(g) == pytest.approx(2 - np.euler_gamma - math.log(2))


def test_check_verdicts():
    g = archinf.InnovationDist.parse("gaussian")
    high = archinf.check_cs(archinf.CoeffSequence.figarch0d0(0.9, 100_000), g, J=100_000)
    low = archinf.check_cs(archinf.CoeffSequence.figarch0d0(0.5, 100_000), g, J=100_000)
    assert high["verdict"] == "EXISTS_BY_IARCH_CONDITION"
    assert low["verdict"] == "INCONCLUSIVE"


def test_d_star_and_rademacher():
    res = archinf.find_d_star(archinf.InnovationDist.parse("gaussian"), J=100_000)
    assert res["lower_bound"] < res["d_star"] < 1
    with pytest.raises(archinf.PreconditionError):
        archinf.find_d_star(archinf.InnovationDist.parse("rademacher"))


def test_simulation_is_deterministic_and_engines_agree():
    seq = archinf.CoeffSequence.figarch0d0(0.9, 200)
    g = archinf.InnovationDist.parse("student:5")
    s1, x1 = archinf.simulate(seq, g, n=500, J=200, seed=7)
    s2, x2 = archinf.simulate(seq, g, n=500, J=200, seed=7)
    assert np.array_equal(s1, s2) and np.array_equal(x1, x2)
    assert np.all(s1 >= 1.0)
    assert archinf.engine_discrepancy(seq, g, 20, list(range(1, 11))) <= 1e-9


def test_domain_errors():
    with pytest.raises(ValueError):
        archinf.CoeffSequence.figarch0d0(1.5, 10)
    with pytest.raises(archinf.DomainError):
        archinf.mu_p(archinf.InnovationDist.parse("gaussian"), 0.0)


def test_cli_entry_point():
    code, out, err = archinf.run_cli(["check", "--d", "0.9", "--J", "100000", "--quiet"])
    assert code == 0
    assert json.loads(out)["verdict"] == "EXISTS_BY_IARCH_CONDITION"
    assert archinf.run_cli(["check", "--d", "1.5", "--quiet"])[0] == 3
    assert archinf.run_cli(["verify", "--d", "0.9", "--p", "0.5", "--quiet"])[0] == 3

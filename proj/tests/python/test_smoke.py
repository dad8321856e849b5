import csv
import io
import json
import math

import pytest

import mevgame as mg


def test_swap_preserves_product():
    pool = mg.PoolState(1e6, 1e6, 0.003)
    r = mg.swap_x_for_y(pool, 10_000.0)
    assert r.output == pytest.approx(9871.580343970613, rel=1e-12)
    assert r.new_pool.x * r.new_pool.y == pytest.approx(1e12, rel=1e-14)


def test_attack_binds_at_the_slippage_limit():
    pool = mg.PoolState(5e6, 5e6, 0.003)
    params = mg.AttackParams(1e5, 0.01, pool)
    outcome = mg.decide_attack(params)
    assert outcome.executed
    assert outcome.attack_input == pytest.approx(mg.max_attack_input(params))
    expected = mg.swap_x_for_y(pool, 1e5).output
    assert outcome.victim_output == pytest.approx(0.99 * expected, rel=1e-9)
    assert mg.min_victim_size(pool) == pytest.approx(15090.406626096947, rel=1e-12)


def test_reference_point_equilibrium():
    market = mg.MarketConfig(omega=0.01)
    trader = mg.TraderParams(0.05, 0.01)
    v = mg.classify_nash(market, trader)
    assert v.nash == "pool_w"
    assert v.fee_p0 == pytest.approx(688.05076509843868, rel=1e-12)
    assert mg.fees(market, trader).regime == "both_attacked"
    assert mg.is_epsilon_equilibrium([(0.5, 0.0), (0.5, 1.0)], market, trader, 0.02)


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        mg.PoolState(0.0, 1.0, 0.003)
    with pytest.raises(ValueError):
        mg.TraderParams(0.05, 1.5)
    with pytest.raises(mg.ConfigError):
        mg.sweep_csv('{"alpha": {"steps": 0}}')


def test_sweep_csv_schema():
    text = mg.sweep_csv('{"alpha": {"min": 0.01, "max": 0.2, "steps": 4}, "s": {"min": 0.01, "max": 0.1, "steps": 3}}')
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 12
    assert list(rows[0].keys()) == [
        "alpha", "s", "omega", "F0", "F1", "grad_f", "delta_f",
        "clamped", "nash", "regime", "attack_soph", "attack_retail",
    ]
    for row in rows:
        assert row["nash"] in {"pool_n", "pool_w", "all"}
        float(row["delta_f"])


def test_point_json_and_verification():
    doc = json.loads(mg.point_json(mg.MarketConfig(p=0.3), mg.TraderParams(0.05, 0.01)))
    assert doc["verdict"]["nash"] == "pool_w"
    assert not doc["oracle_divergence_flag"]
    assert mg.verify(50, 7)


def test_two_point_distribution_close_to_homogeneous_for_large_k():
    market = mg.MarketConfig(omega=0.01)
    hom = mg.classify_nash(market, mg.TraderParams(0.05, 0.01))
    het = mg.classify_nash_two_point(market, 0.05, 1e6, 0.01)
    assert het.nash == hom.nash
    assert math.isclose(het.fee_p1, hom.fee_p1, rel_tol=1e-6)

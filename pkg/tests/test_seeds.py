import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wronski import poly, seeds
from wronski.combinat import ballot_sequences
from wronski.errors import NonPositiveParameter, NotPermitted


def test_initial_pair():
    p = seeds.initial_pair(4)
    assert (p.k1, p.k2) == (3, 4)
    assert np.allclose(p.q1, [0, 0, 0, 1])
    assert np.allclose(p.q2, [0, 0, 0, 0, 1])
    assert p.order == 6  # Wronskian is a pure power of z


def test_permitted_rule():
    p = seeds.initial_pair(3)
    assert seeds.permitted(1, p)          # k1 = 2 > 0
    assert not seeds.permitted(2, p)      # k2 = k1 + 1
    p = seeds.apply_F(1, 0.1, p)
    assert seeds.permitted(2, p)          # now k2 > k1 + 1


def test_apply_F_errors():
    p = seeds.initial_pair(3)
    with pytest.raises(NotPermitted):
        seeds.apply_F(2, 0.1, p)
    with pytest.raises(NonPositiveParameter):
        seeds.apply_F(1, -1.0, p)


def test_apply_F_drops_exponent_and_keeps_monic():
    p = seeds.initial_pair(3)
    q = seeds.apply_F(1, 0.25, p)
    assert (q.k1, q.k2) == (1, 3)
    assert q.q1[1] == 0.25 and q.q1[2] == 1.0


def test_lowest_coeff_formula():
    p = seeds.apply_F(1, 0.3, seeds.initial_pair(3))
    w = p.wronskian()
    k = p.order
    assert w[k] == pytest.approx(seeds.lowest_coeff(p))
    assert seeds.lowest_coeff(p) == pytest.approx((p.k2 - p.k1) * 1.0 * 0.3)


def _check_seed(pair, d):
    w = pair.wronskian()
    assert pair.order == 0  # all 2d-2 roots away from the origin
    r = poly.roots(w)
    assert r.size == 2 * d - 2
    assert np.abs(r.imag).max() < 1e-9 * (1 + np.abs(r).max())
    x = np.sort(r.real)
    assert x[0] > -1 and x[-1] < 0
    assert np.unique(np.round(x, 14)).size == x.size


def test_seed_from_ballot_all_branches():
    for d in (2, 3, 4):
        for sigma in ballot_sequences(d):
            pair = seeds.seed_from_ballot(sigma, d)
            _check_seed(pair, d)
            assert pair.sigma == sigma


@given(st.sampled_from(ballot_sequences(5)))
@settings(max_examples=14, deadline=None)
def test_seed_from_ballot_d5(sigma):
    _check_seed(seeds.seed_from_ballot(sigma, 5), 5)


def test_schedule_validation():
    with pytest.raises(ValueError):
        seeds.SeedSchedule(ratio=1.5)

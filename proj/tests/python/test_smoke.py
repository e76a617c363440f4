# Copyright 2026 The dpdm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the _dpdm extension module."""

import math
import os
import sys

import pytest

if "DPDM_MODULE_DIR" in os.environ:
    sys.path.insert(0, os.environ["DPDM_MODULE_DIR"])

dpdm = pytest.importorskip("_dpdm")


@pytest.fixture
def worked_example():
    return dpdm.example_network()


def test_critical_tree_structure(worked_example):
    tree = dpdm.build_critical_tree(worked_example)
    # b (2) is critical to f (6) and g (7); depth runs seller(0) -> g(3).
    assert tree.parent[6] == 2
    assert tree.parent[7] == 6
    assert tree.d_max == 3
    assert tree.reachable == set(range(1, 8))


def test_layered_distribution_golden(worked_example):
    # gamma_3 = 1/8 and g is alone in layer 3, so Pr_g = 1/8 exactly.
    ctx = dpdm.AuctionContext(worked_example, epsilon=0.01, v_max=20.0)
    dist = dpdm.distribution("lay", ctx)
    assert dist.prob[7] == pytest.approx(0.125, abs=1e-12)
    assert dist.total() == pytest.approx(1.0, abs=1e-12)


def test_recursive_distribution_normalizes(worked_example):
    ctx = dpdm.AuctionContext(worked_example, epsilon=0.1, v_max=20.0)
    dist = dpdm.distribution("rec", ctx)
    assert sum(dist.prob.values()) == pytest.approx(1.0, abs=1e-12)
    assert dist.no_sale == pytest.approx(0.0, abs=1e-12)


def test_payment_between_zero_and_value(worked_example):
    ctx = dpdm.AuctionContext(worked_example, epsilon=0.1, v_max=20.0)
    for winner in (1, 3, 6):
        p = dpdm.winner_payment("rec", ctx, winner)
        v = worked_example.profiles[winner].valuation
        assert 0.0 <= p <= v
        # The identity p*Pr = v*Pr - integral implies p < v at finite eps.
        assert p < v


def test_auction_outcome_consistency(worked_example):
    ctx = dpdm.AuctionContext(worked_example, epsilon=0.5, v_max=20.0)
    out = dpdm.run_auction("rec", ctx, seed=7)
    assert out.winner is not None
    v = worked_example.profiles[out.winner].valuation
    assert out.social_welfare == pytest.approx(v)
    assert out.seller_revenue == pytest.approx(out.payment)
    assert out.utilities[out.winner] == pytest.approx(v - out.payment)
    rerun = dpdm.run_auction("rec", ctx, seed=7)
    assert rerun.winner == out.winner
    assert rerun.payment == out.payment


def test_idm_baseline(worked_example):
    out = dpdm.idm_outcome(dpdm.AuctionContext(worked_example, epsilon=1.0))
    assert out.winner == 6
    assert out.payment == pytest.approx(14.0)


def test_expected_welfare_matches_manual_sum(worked_example):
    ctx = dpdm.AuctionContext(worked_example, epsilon=0.1, v_max=20.0)
    dist = dpdm.distribution("emd", ctx)
    manual = sum(
        p * worked_example.profiles[i].valuation for i, p in dist.prob.items()
    )
    assert dpdm.expected_social_welfare(dist, ctx) == pytest.approx(manual)


def test_property_suite_passes():
    reports = dpdm.run_property_suite("norm", max_nodes=3)
    assert reports
    assert all(r.passed for r in reports)
    assert all(r.summary().startswith("PASS") for r in reports)


def test_hand_built_profile():
    gp = dpdm.GlobalProfile()
    gp.seller_neighbors = {1, 3}
    gp.add(1, 1.0, {2})
    gp.add(2, 2.0)
    gp.add(3, 3.0)
    ctx = dpdm.AuctionContext(gp, epsilon=1.0, v_max=10.0)
    dist = dpdm.distribution("rec", ctx)
    assert dist.prob[3] == pytest.approx(0.6652409557748219, abs=1e-13)
    assert math.isclose(dist.total(), 1.0, abs_tol=1e-12)


def test_edge_list_roundtrip(tmp_path):
    path = tmp_path / "toy.edges"
    path.write_text("0 1\n1 2\n")
    graph = dpdm.load_edge_list(str(path), False)
    gp = dpdm.make_global_profile(graph, 0, [0.0, 5.0, 9.0])
    tree = dpdm.build_critical_tree(gp)
    assert tree.depth[2] == 2

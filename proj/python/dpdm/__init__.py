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

"""Differentially private diffusion auctions on social networks."""

from ._dpdm import (
    AuctionContext,
    AuctionOutcome,
    CriticalTree,
    GlobalProfile,
    Profile,
    ProfileDigraph,
    PropertyReport,
    WinDistribution,
    build_critical_tree,
    build_profile_digraph,
    distribution,
    example_network,
    expected_social_welfare,
    idm_outcome,
    load_edge_list,
    make_global_profile,
    run_auction,
    run_property_suite,
    run_sweep,
    win_probability,
    winner_payment,
)

__all__ = [
    "AuctionContext",
    "AuctionOutcome",
    "CriticalTree",
    "GlobalProfile",
    "Profile",
    "ProfileDigraph",
    "PropertyReport",
    "WinDistribution",
    "build_critical_tree",
    "build_profile_digraph",
    "distribution",
    "example_network",
    "expected_social_welfare",
    "idm_outcome",
    "load_edge_list",
    "make_global_profile",
    "run_auction",
    "run_property_suite",
    "run_sweep",
    "win_probability",
    "winner_payment",
]

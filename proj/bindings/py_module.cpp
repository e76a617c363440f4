// Copyright 2026 The dpdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Python bindings. Mechanisms are addressed by their CLI names
// ("rec", "lay", "emd", "emwd", "idm") rather than an enum class.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpdm/experiments.hpp"
#include "dpdm/verification.hpp"

namespace py = pybind11;
using namespace dpdm;

namespace {

AuctionContext make_context(const GlobalProfile& profiles, double epsilon,
                            double v_max, double a) {
  return AuctionContext::build(profiles, {epsilon, v_max, ScoreKind::kLinear},
                               GammaSequence::geometric(a));
}

}  // namespace

PYBIND11_MODULE(_dpdm, m) {
  m.doc() = "Differentially private diffusion auctions on social networks";

  py::class_<Profile>(m, "Profile")
      .def(py::init([](double valuation, std::set<BuyerId> neighbors) {
             return Profile{valuation, std::move(neighbors)};
           }),
           py::arg("valuation"), py::arg("neighbors") = std::set<BuyerId>{})
      .def_readwrite("valuation", &Profile::valuation)
      .def_readwrite("neighbors", &Profile::neighbors);

  py::class_<GlobalProfile>(m, "GlobalProfile")
      .def(py::init<>())
      .def_readwrite("seller_neighbors", &GlobalProfile::seller_neighbors)
      .def_readwrite("profiles", &GlobalProfile::profiles)
      .def("add", [](GlobalProfile& gp, BuyerId id, double valuation,
                     std::set<BuyerId> neighbors) {
             gp.profiles[id] = Profile{valuation, std::move(neighbors)};
           },
           py::arg("id"), py::arg("valuation"),
           py::arg("neighbors") = std::set<BuyerId>{});

  py::class_<ProfileDigraph>(m, "ProfileDigraph")
      .def_readonly("nodes", &ProfileDigraph::nodes)
      .def_readonly("adj", &ProfileDigraph::adj)
      .def_readonly("warnings", &ProfileDigraph::warnings);

  py::class_<CriticalTree>(m, "CriticalTree")
      .def_readonly("parent", &CriticalTree::parent)
      .def_readonly("children", &CriticalTree::children)
      .def_readonly("depth", &CriticalTree::depth)
      .def_readonly("d_max", &CriticalTree::d_max)
      .def_readonly("reachable", &CriticalTree::reachable);

  py::class_<WinDistribution>(m, "WinDistribution")
      .def_readonly("prob", &WinDistribution::prob)
      .def_readonly("no_sale", &WinDistribution::no_sale)
      .def("probability_of", &WinDistribution::probability_of)
      .def("total", &WinDistribution::total);

  py::class_<AuctionOutcome>(m, "AuctionOutcome")
      .def_property_readonly("winner",
                             [](const AuctionOutcome& o) -> py::object {
                               if (!o.winner) return py::none();
                               return py::int_(*o.winner);
                             })
      .def_readonly("payment", &AuctionOutcome::payment)
      .def_readonly("utilities", &AuctionOutcome::utilities)
      .def_readonly("seller_revenue", &AuctionOutcome::seller_revenue)
      .def_readonly("social_welfare", &AuctionOutcome::social_welfare);

  py::class_<AuctionContext>(m, "AuctionContext")
      .def(py::init(&make_context), py::arg("profiles"), py::arg("epsilon"),
           py::arg("v_max") = 100.0, py::arg("a") = 2.0)
      .def_readonly("digraph", &AuctionContext::digraph)
      .def_readonly("tree", &AuctionContext::tree);

  py::class_<PropertyReport>(m, "PropertyReport")
      .def_readonly("property", &PropertyReport::property)
      .def_readonly("instances", &PropertyReport::instances)
      .def_readonly("max_violation", &PropertyReport::max_violation)
      .def_readonly("worst_instance", &PropertyReport::worst_instance)
      .def_readonly("passed", &PropertyReport::pass)
      .def("summary", &PropertyReport::summary);

  py::class_<EdgeList>(m, "EdgeList")
      .def_readonly("nodes", &EdgeList::nodes)
      .def_readonly("edges", &EdgeList::edges)
      .def_readonly("tag", &EdgeList::tag);

  m.def("build_profile_digraph", &build_profile_digraph, py::arg("reports"));
  m.def("build_critical_tree",
        [](const GlobalProfile& gp) {
          return build_critical_tree(build_profile_digraph(gp));
        },
        py::arg("reports"));

  m.def("distribution",
        [](const std::string& mech, const AuctionContext& ctx) {
          return distribution(mechanism_from_string(mech), ctx);
        },
        py::arg("mechanism"), py::arg("context"));
  m.def("win_probability",
        [](const std::string& mech, const AuctionContext& ctx, BuyerId w,
           double value) {
          return win_probability(mechanism_from_string(mech), ctx, w, value);
        },
        py::arg("mechanism"), py::arg("context"), py::arg("buyer"),
        py::arg("value"));
  m.def("winner_payment",
        [](const std::string& mech, const AuctionContext& ctx, BuyerId w) {
          return winner_payment(mechanism_from_string(mech), ctx, w);
        },
        py::arg("mechanism"), py::arg("context"), py::arg("winner"));
  m.def("run_auction",
        [](const std::string& mech, const AuctionContext& ctx,
           std::uint64_t seed) {
          Rng rng(seed);
          if (mechanism_from_string(mech) == Mechanism::kIdm) {
            return idm_outcome(ctx.digraph, ctx.profiles, ctx.tree);
          }
          return run_auction(mechanism_from_string(mech), ctx.profiles,
                             ctx.cfg, ctx.gamma, rng);
        },
        py::arg("mechanism"), py::arg("context"), py::arg("seed"));
  m.def("idm_outcome",
        [](const AuctionContext& ctx) {
          return idm_outcome(ctx.digraph, ctx.profiles, ctx.tree);
        },
        py::arg("context"));
  m.def("expected_social_welfare",
        [](const WinDistribution& dist, const AuctionContext& ctx) {
          std::map<BuyerId, double> vals;
          for (const auto& [id, p] : ctx.profiles.profiles)
            vals[id] = p.valuation;
          return expected_social_welfare(dist, vals);
        },
        py::arg("distribution"), py::arg("context"));

  m.def("example_network", &example_network, py::arg("v_g") = 7.0);
  m.def("run_property_suite",
        [](const std::string& suite, int max_nodes,
           std::vector<double> epsilons, double a, std::uint64_t seed) {
          SuiteOptions options;
          options.max_nodes = max_nodes;
          if (!epsilons.empty()) options.epsilons = std::move(epsilons);
          options.a = a;
          options.seed = seed;
          return run_property_suite(suite, options);
        },
        py::arg("suite") = "all", py::arg("max_nodes") = 5,
        py::arg("epsilons") = std::vector<double>{}, py::arg("a") = 2.0,
        py::arg("seed") = 2026);

  m.def("load_edge_list", &load_edge_list, py::arg("path"),
        py::arg("directed") = false);
  m.def("make_global_profile", &make_global_profile, py::arg("graph"),
        py::arg("seller"), py::arg("valuations"));
  m.def("run_sweep",
        [](const std::string& config_path) {
          return rows_to_csv(run_sweep(parse_sweep_config(config_path)));
        },
        py::arg("config_path"));
}

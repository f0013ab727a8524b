// SPDX-License-Identifier: Apache-2.0
#include "pmat/eval/folds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "pmat/common.hpp"
#include "pmat/rng.hpp"

namespace pmat::eval {

namespace {

constexpr double kValidationShare = 1.0 / 6.0;

std::vector<std::string> distinct_sorted(std::span<const std::string> infants) {
  std::vector<std::string> ids(infants.begin(), infants.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

FoldPlan grouped_kfold(std::span<const std::string> infants, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw Error("fold count must be at least 1");
  auto ids = distinct_sorted(infants);
  if (ids.size() < k) {
    throw Error("need at least " + std::to_string(k) + " infants for " + std::to_string(k) + " folds, have " +
                std::to_string(ids.size()));
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  if (k == 1) {
    plan.folds.push_back({ids, ids, ids});
    return plan;
  }

  Rng order(mix_seed(seed, 0));
  order.shuffle(std::span<std::string>(ids));
  plan.folds.resize(k);
  for (std::size_t i = 0; i < ids.size(); ++i) plan.folds[i % k].test.push_back(ids[i]);

  for (std::size_t f = 0; f < k; ++f) {
    auto& fold = plan.folds[f];
    std::vector<std::string> rest;
    for (std::size_t g = 0; g < k; ++g) {
      if (g != f) rest.insert(rest.end(), plan.folds[g].test.begin(), plan.folds[g].test.end());
    }
    std::sort(rest.begin(), rest.end());
    Rng split(mix_seed(seed, 1 + f));
    split.shuffle(std::span<std::string>(rest));
    const auto n_val = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(static_cast<double>(rest.size()) * kValidationShare)));
    if (n_val >= rest.size()) {
      throw Error("fold " + std::to_string(f + 1) + " has no infants left for fitting");
    }
    fold.validation.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(n_val));
    fold.fit.assign(rest.begin() + static_cast<std::ptrdiff_t>(n_val), rest.end());
  }
  return plan;
}

void check_group_integrity(const FoldPlan& plan, std::span<const std::string> infants) {
  const auto ids = distinct_sorted(infants);
  if (plan.folds.size() != plan.k) throw Error("fold plan holds the wrong number of folds");
  if (plan.in_sample()) return;
  std::map<std::string, std::size_t> tested;
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const auto& fold = plan.folds[f];
    std::set<std::string> seen;
    for (const auto* role : {&fold.test, &fold.fit, &fold.validation}) {
      for (const auto& id : *role) {
        if (!seen.insert(id).second) {
          throw Error("infant " + id + " appears in two roles of fold " + std::to_string(f + 1));
        }
      }
    }
    if (seen.size() != ids.size()) throw Error("fold " + std::to_string(f + 1) + " does not cover every infant");
    for (const auto& id : fold.test) ++tested[id];
  }
  for (const auto& id : ids) {
    const auto it = tested.find(id);
    if (it == tested.end() || it->second != 1) throw Error("infant " + id + " is not tested exactly once");
  }
  if (tested.size() != ids.size()) throw Error("fold plan tests unknown infants");
}

nlohmann::json to_json(const FoldAssignment& f) {
  return {{"test", f.test}, {"fit", f.fit}, {"validation", f.validation}};
}

}  // namespace pmat::eval

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace pmat::eval {

/// Infant roles of one fold.
struct FoldAssignment {
  std::vector<std::string> test;
  std::vector<std::string> fit;
  std::vector<std::string> validation;
};

/// k = 1 is an in-sample smoke mode: every infant takes all three roles and
/// the caller splits validation off at snippet level.
struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<FoldAssignment> folds;

  bool in_sample() const { return k == 1; }
};

/// Sorts and shuffles the distinct infant ids, deals them round-robin into k
/// test groups, then per fold shuffles the rest and takes the first
/// max(1, round(rest / 6)) as validation and the others as fit.
/// Throws Error if k == 0, there are fewer infants than k, or a fold would
/// have no fit infants.
FoldPlan grouped_kfold(std::span<const std::string> infants, std::size_t k, std::uint64_t seed);

/// Throws Error if any infant holds two roles within a fold (k > 1) or if the
/// test groups do not partition the infants.
void check_group_integrity(const FoldPlan& plan, std::span<const std::string> infants);

nlohmann::json to_json(const FoldAssignment& f);

}  // namespace pmat::eval

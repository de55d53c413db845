// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_LAWS_HPP
#define ENRIFACT_LAWS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <enrifact/factor.hpp>

namespace enrifact {

struct LawResult {
   std::string id;
   std::string statement;
   std::size_t instances = 0;
   std::size_t failures = 0;
   Json counterexample;   // first failing instance
   Json info;             // law-specific extras, or null

   bool holds() const noexcept { return failures == 0; }
};

Json to_json(const LawResult& r);

struct LawOptions {
   std::uint64_t seed = 20240917;
   std::size_t random_classes = 20;    // seeded classes H per category
   std::size_t pasted_squares = 200;   // pasting-law samples per category
   std::vector<std::string> only;      // law IDs; empty runs everything
};

/// Stable law IDs, in report order.
const std::vector<std::string>& law_ids();

/// Runs the invariant suite on one category. Every law reports how many
/// instances it checked; unknown IDs in `only` throw UsageError.
std::vector<LawResult> run_laws(const Workspace& ws, const LawOptions& options = {});

}  // namespace enrifact

#endif

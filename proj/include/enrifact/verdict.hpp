// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_VERDICT_HPP
#define ENRIFACT_VERDICT_HPP

#include <string>
#include <utility>

#include <json.hpp>

namespace enrifact {

using Json = nlohmann::json;

/// Outcome of a decision procedure. A verdict that fails always carries a
/// counterexample; existential properties that hold carry a witness.
/// Payloads name objects and morphisms by their string IDs so that every
/// claim can be re-checked through lookups alone.
struct Verdict {
   bool holds = false;
   std::string reason;
   Json witness;          // null when absent
   Json counterexample;   // null when absent

   static Verdict pass(std::string reason, Json witness = nullptr) {
      return Verdict{true, std::move(reason), std::move(witness), nullptr};
   }
   static Verdict fail(std::string reason, Json counterexample) {
      return Verdict{false, std::move(reason), nullptr, std::move(counterexample)};
   }

   explicit operator bool() const noexcept { return holds; }
};

Json to_json(const Verdict& v);

}  // namespace enrifact

#endif

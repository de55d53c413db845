// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_REPORT_HPP
#define ENRIFACT_REPORT_HPP

#include <string>
#include <string_view>

#include <enrifact/document.hpp>
#include <enrifact/error.hpp>

namespace enrifact {

inline constexpr std::string_view engine_name = "enrifact";
inline constexpr std::string_view engine_version = "1.0.0";

enum ExitCode : int { exit_holds = 0, exit_fails = 1, exit_invalid = 2, exit_usage = 3 };

/// Exit code for an engine error: UsageError maps to 3, everything else to 2.
int exit_code_for(ErrorCode code) noexcept;

/// A command request: {"command": name, "args": {...}}. Commands and their
/// arguments:
///   validate      {}
///   classify      {enriched}
///   orth          {e, m, enriched}
///   closure       {seed: [ids], side: "left"|"right", enriched}
///   factorize     {g, right_class: "monos"|"v-monos"|"strong-monos"|"injections"|[ids]}
///   check-system  {left: [ids], right: [ids], enriched}
///   canonical     {}
///   laws          {only: [law ids], seed}
///   fwc           {}
/// Missing booleans default to false. Malformed requests and unknown IDs in
/// arguments throw UsageError; an invalid document throws its own code.
struct CommandResult {
   int exit_code = exit_holds;
   Json report;
};

CommandResult execute(const Document& doc, const Json& request);

/// Report for a failure before or during execution.
CommandResult error_result(const Json& request, const Json& input, ErrorCode code, const std::string& detail);

/// The "input" block of a report: name, kind and hashes of the document.
Json input_summary(const Document& doc);

/// SHA-256 of the canonical report with the timing field removed.
std::string report_hash(const Json& report);

/// "json": canonical compact text. "text": a readable rendering.
/// Both end with a newline. Throws UsageError on another format.
std::string render(const Json& report, std::string_view format);

}  // namespace enrifact

#endif

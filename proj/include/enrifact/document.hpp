// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_DOCUMENT_HPP
#define ENRIFACT_DOCUMENT_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <enrifact/enriched.hpp>

namespace enrifact {

inline constexpr int document_version = 1;

enum class DocumentKind { category, monoidal, enriched, generator };

std::string_view to_string(DocumentKind kind) noexcept;

/// A parsed document. `body` is always in canonical form: object keys sorted
/// bytewise, set-like arrays sorted by ID.
struct Document {
   DocumentKind kind = DocumentKind::category;
   std::string name;
   Json body;
};

/// Throws SyntaxError (with byte offset), SchemaError (with JSON pointer) or
/// DuplicateID. A present meta.hash must match the content.
Document parse_document(std::string_view text);

/// Canonical text: compact JSON, sorted keys, meta.hash filled in.
std::string serialize(const Document& doc);

/// Hex SHA-256 of the canonical serialization without meta.hash.
std::string content_hash(const Document& doc);

Document make_document(std::string name, const RawCategory& raw);
Document make_document(std::string name, const RawMonoidal& raw);
Document make_document(std::string name, const RawEnriched& raw);

/// Runs generator directives (recursively); concrete documents come back
/// unchanged. Directives: finset, quantale_chain, quantale, poset, walking,
/// thin_enriched, self_enriched, opposite. Throws DirectiveError.
Document expand(const Document& doc);

/// Reverses every morphism; the name gains or loses an "op:" prefix.
/// Monoidal documents have no opposite here (DirectiveError).
Document opposite(const Document& doc);

/// A validated document. Every kind is presented as an enriched category:
/// ordinary categories and the base of V are regarded as enriched in sets.
struct Loaded {
   DocumentKind kind = DocumentKind::category;
   std::shared_ptr<const EnrichedCategory> category;
   std::shared_ptr<const MonoidalClosedStructure> values;   // monoidal documents only
};

Loaded load(const Document& doc);

RawCategory category_from_json(const Json& body);
RawMonoidal monoidal_from_json(const Json& body);
RawEnriched enriched_from_json(const Json& body);
Json to_json(const RawCategory& raw);
Json to_json(const RawMonoidal& raw);
Json to_json(const RawEnriched& raw);

}  // namespace enrifact

#endif

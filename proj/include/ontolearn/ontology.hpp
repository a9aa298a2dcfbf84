#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ontolearn/graph.hpp"

namespace ontolearn {

// ---------------------------------------------------------------------------
// Didactic part: chunks, their learning materials, and precedence.
// ---------------------------------------------------------------------------

struct Chunk {
    std::string id;
    std::string label;
    std::string discipline_id;
    std::string dci;

    bool operator==(const Chunk&) const = default;
};

enum class ContentKind { Text, Presentation, Video, Test };

std::string_view to_string(ContentKind kind);
std::optional<ContentKind> parse_content_kind(std::string_view text);

struct ContentMapping {
    std::string chunk_id;
    ContentKind content_kind = ContentKind::Text;
    std::string content_ref;
    // Owner of the material; may name another discipline.
    std::string discipline_id;

    bool operator==(const ContentMapping&) const = default;
};

enum class DidacticRelationKind { Precedes };

struct DidacticRelation {
    DidacticRelationKind kind = DidacticRelationKind::Precedes;
    std::string from_chunk;
    std::string to_chunk;

    bool operator==(const DidacticRelation&) const = default;
};

struct DidacticOntology {
    std::string discipline_id;
    std::vector<Chunk> chunks;
    std::vector<ContentMapping> mappings;
    std::vector<DidacticRelation> relations;

    bool operator==(const DidacticOntology&) const = default;
};

// ---------------------------------------------------------------------------
// Content part: domain objects with attributes and relations.
// ---------------------------------------------------------------------------

using AttributeValue = std::variant<std::string, std::int64_t, double>;

// Display text of a value; numbers print in their shortest JSON form.
std::string value_text(const AttributeValue& value);

struct Attribute {
    std::string name;
    AttributeValue value;
    std::optional<std::string> unit;

    bool operator==(const Attribute&) const = default;
};

struct ContentObject {
    std::string id;
    std::string category;
    std::string label;
    std::vector<Attribute> attributes;

    const Attribute* attribute(std::string_view name) const;

    bool operator==(const ContentObject&) const = default;
};

struct ContentRelation {
    std::string kind;
    std::string from;
    std::string to;

    bool operator==(const ContentRelation&) const = default;
};

struct ContentOntology {
    std::vector<ContentObject> objects;
    std::vector<ContentRelation> relations;

    bool operator==(const ContentOntology&) const = default;
};

struct Binding {
    std::string chunk_id;
    std::string object_id;

    bool operator==(const Binding&) const = default;
};

// One discipline: the didactic ontology paired with its content ontology and
// the explicit chunk -> object bindings that link them. Immutable once loaded.
struct MetaOntology {
    std::string discipline_id;
    DidacticOntology didactic;
    ContentOntology content;
    std::vector<Binding> bindings;

    const Chunk* find_chunk(std::string_view chunk_id) const;
    const ContentObject* find_object(std::string_view object_id) const;
    std::vector<const Chunk*> chunks_with_dci(std::string_view dci) const;
    // Bound objects in ascending id order.
    std::vector<const ContentObject*> bound_objects(std::string_view chunk_id) const;
    std::vector<ContentMapping> mappings_for(std::string_view chunk_id) const;

    bool operator==(const MetaOntology&) const = default;
};

// Sorts every collection and drops exact duplicates, giving the set-semantics
// normal form used for equality after a round trip.
MetaOntology canonicalized(MetaOntology m);
bool equivalent(const MetaOntology& a, const MetaOntology& b);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class Severity { Error, Warning };

struct Violation {
    Severity severity = Severity::Error;
    std::string rule;     // "duplicate id", "cycle", "dangling binding", ...
    std::string entity;   // offending entity, e.g. "chunk c01"
    std::string message;

    std::string to_string() const;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool empty() const noexcept { return violations.empty(); }
    bool has_errors() const;
    std::vector<Violation> errors() const;
};

// Checks every invariant of the data model. Orphan content objects are
// reported as warnings; everything else is an error.
ValidationReport validate(const MetaOntology& m);

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

// Precedence graph with vertices numbered in ascending chunk id order.
struct PrecedenceGraph {
    std::vector<std::string> chunk_ids;
    graph::Digraph graph;

    std::optional<std::size_t> vertex(std::string_view chunk_id) const;
};

PrecedenceGraph build_precedence_graph(const DidacticOntology& didactic);

// All chunks with a precedes path to `chunk_id`, prerequisites first, ties
// by ascending id. Throws UnknownChunk.
std::vector<Chunk> prerequisite_closure(const MetaOntology& m, std::string_view chunk_id);

struct SharedChunk {
    Chunk in_a;
    Chunk in_b;

    bool operator==(const SharedChunk&) const = default;
};

// Chunk pairs across two disciplines whose normalized labels match, ordered
// by (a id, b id). Throws SameDiscipline.
std::vector<SharedChunk> shared_chunks(const MetaOntology& a, const MetaOntology& b);

}  // namespace ontolearn

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontolearn/ontology.hpp"
#include "ontolearn/question.hpp"

namespace ontolearn {

// The only distractor policy: same category, same attribute name, different
// value (for MA: same category as the related objects, not related).
inline constexpr std::string_view kSameCategoryPool = "same_category_attribute";

struct GenerationSpec {
    std::uint64_t seed = 0;
    std::map<QuestionType, std::int64_t> counts;
    std::vector<std::string> scope;  // empty means every chunk of the discipline
    std::string distractor_pool{kSameCategoryPool};
    std::map<QuestionType, Points> default_weight;  // missing types weigh 1

    Points weight_for(QuestionType t) const;
};

GenerationSpec generation_spec_from_json(const nlohmann::json& doc);
nlohmann::json generation_spec_to_json(const GenerationSpec& spec);
GenerationSpec load_generation_spec(const std::string& path);

// Builds exactly spec.counts[t] questions of every type t, blocks ordered
// TF, SA, MA, Mapping. Scoped chunks are visited round-robin in id order,
// each contributing its next unused fact. The result is a pure function of
// (m, spec).
//
// Throws UnknownChunk for an unresolved scope entry, InsufficientFacts naming
// the type and chunk when the scope cannot supply the requested count, and
// ValidationError for a malformed spec.
QuestionBank generate_bank(const MetaOntology& m, const GenerationSpec& spec);

}  // namespace ontolearn

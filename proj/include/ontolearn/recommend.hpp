#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ontolearn/grading.hpp"
#include "ontolearn/ontology.hpp"

namespace ontolearn {

struct Recommendation {
    std::string discipline_id;
    std::string chunk_id;
    std::string label;
    std::vector<ContentMapping> content;
    std::string reason;      // failed DCI that pulled this chunk in
    std::size_t rank = 0;    // 1-based position in the returned list
    bool no_materials = false;

    bool operator==(const Recommendation&) const = default;
};

struct RecommendOptions {
    // Also pull in the full home prerequisite closure of every failed chunk.
    bool deep = false;
};

// For every failed DCI: the home chunks carrying it, plus every chunk of the
// other disciplines whose label matches one of them. Home discipline first,
// then others by discipline id; inside a discipline prerequisites precede
// dependents, ties by chunk id. Ontologies sharing the home discipline id are
// skipped. Throws UnresolvedDci.
std::vector<Recommendation> recommend(const GradeReport& report, const MetaOntology& home,
                                      const std::vector<const MetaOntology*>& others,
                                      const RecommendOptions& options = {});

std::vector<Recommendation> recommend(const GradeReport& report, const MetaOntology& home,
                                      const std::vector<MetaOntology>& others,
                                      const RecommendOptions& options = {});

nlohmann::json recommendation_to_json(const Recommendation& r);
nlohmann::json recommendations_to_json(const std::vector<Recommendation>& list);
Recommendation recommendation_from_json(const nlohmann::json& value);

}  // namespace ontolearn

#pragma once

#include <string>

#include "json.hpp"
#include "ontolearn/ontology.hpp"

namespace ontolearn {

// Decodes one discipline document. Schema problems (wrong types, unknown or
// missing keys, unknown enum values) throw ParseError; invariants are not
// checked here.
MetaOntology ontology_from_json(const nlohmann::json& doc);
nlohmann::json ontology_to_json(const MetaOntology& m);

// Reads and decodes without validating. Throws IoError / ParseError.
MetaOntology read_ontology(const std::string& path);

// Reads, decodes, and validates. Error-severity violations throw
// ValidationError naming each one; orphan warnings are tolerated.
MetaOntology load_ontology(const std::string& path);

void save_ontology(const MetaOntology& m, const std::string& path);

}  // namespace ontolearn

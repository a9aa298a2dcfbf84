#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ontolearn {

// Case-folds ASCII letters, trims, and collapses internal whitespace runs to
// a single space. Bytes outside ASCII pass through unchanged.
std::string normalize_label(std::string_view label);

// A concept index is one or more dot-separated non-negative integers ("1.2").
bool is_valid_dci(std::string_view dci);

// Numeric components of a valid DCI; throws ParseError otherwise.
std::vector<unsigned long long> dci_components(std::string_view dci);

// Orders DCIs component-wise ("1.2" < "1.10" < "2"). Invalid strings sort
// after valid ones, lexicographically.
bool dci_less(std::string_view a, std::string_view b);

struct DciLess {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const { return dci_less(a, b); }
};

}  // namespace ontolearn

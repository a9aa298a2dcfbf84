#include "ontolearn/text.hpp"

#include <charconv>

#include "ontolearn/error.hpp"

namespace ontolearn {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string normalize_label(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    bool pending_space = false;
    for (char c : label) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        out.push_back(c);
    }
    return out;
}

bool is_valid_dci(std::string_view dci) {
    if (dci.empty()) return false;
    bool in_number = false;
    for (char c : dci) {
        if (c >= '0' && c <= '9') {
            in_number = true;
        } else if (c == '.' && in_number) {
            in_number = false;
        } else {
            return false;
        }
    }
    return in_number;
}

std::vector<unsigned long long> dci_components(std::string_view dci) {
    if (!is_valid_dci(dci)) {
        throw Error(ErrorKind::ParseError, "malformed DCI '" + std::string(dci) + "'");
    }
    std::vector<unsigned long long> parts;
    std::size_t start = 0;
    while (start <= dci.size()) {
        auto dot = dci.find('.', start);
        if (dot == std::string_view::npos) dot = dci.size();
        unsigned long long value = 0;
        auto [ptr, ec] = std::from_chars(dci.data() + start, dci.data() + dot, value);
        if (ec != std::errc{}) {
            throw Error(ErrorKind::ParseError, "DCI component out of range in '" + std::string(dci) + "'");
        }
        parts.push_back(value);
        start = dot + 1;
    }
    return parts;
}

bool dci_less(std::string_view a, std::string_view b) {
    const bool va = is_valid_dci(a);
    const bool vb = is_valid_dci(b);
    if (va != vb) return va;
    if (!va) return a < b;
    auto pa = dci_components(a);
    auto pb = dci_components(b);
    if (pa != pb) return pa < pb;
    // "1.01" and "1.1" share components; fall back to text for a strict order.
    return a < b;
}

}  // namespace ontolearn

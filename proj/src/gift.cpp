#include "ontolearn/gift.hpp"

#include <cstdio>
#include <sstream>

#include "json_reader.hpp"
#include "ontolearn/error.hpp"

namespace ontolearn {

std::string gift_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '~':
            case '=':
            case '#':
            case '{':
            case '}':
            case ':':
            case '\\':
                out.push_back('\\');
                out.push_back(c);
                break;
            case '\n':
            case '\r':
                out.push_back(' ');
                break;
            default:
                out.push_back(c);
        }
    }
    return out;
}

namespace {

// Moodle accepts up to five decimals in answer weights.
std::string percent(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.5f", value);
    std::string text = buffer;
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
    return text;
}

void write_question(const Question& q, std::ostream& out) {
    out << "// " << q.id << " DCI=" << q.dci << " difficulty=" << to_string(q.difficulty)
        << " competence=" << to_string(q.competence) << " type=" << to_string(q.qtype) << " weight=" << q.weight
        << "\n";
    out << "::" << gift_escape(q.id + " DCI " + q.dci + " level " + std::string(to_string(q.difficulty))) << "::"
        << gift_escape(q.stem);

    switch (q.qtype) {
        case QuestionType::TF:
            out << " {" << (std::get<TrueFalse>(q.answer_key).value ? "T" : "F") << "}\n";
            break;
        case QuestionType::SA: {
            const auto correct = std::get<SingleChoice>(q.answer_key).index;
            out << " {\n";
            for (std::size_t i = 0; i < q.options.size(); ++i) {
                out << (i == correct ? "=" : "~") << gift_escape(q.options[i]) << "\n";
            }
            out << "}\n";
            break;
        }
        case QuestionType::MA: {
            const auto& key = std::get<MultipleChoice>(q.answer_key).indices;
            const std::string right = percent(100.0 / static_cast<double>(key.size()));
            out << " {\n";
            for (std::size_t i = 0; i < q.options.size(); ++i) {
                out << "~%" << (key.count(i) ? right : std::string("-100")) << "%" << gift_escape(q.options[i]) << "\n";
            }
            out << "}\n";
            break;
        }
        case QuestionType::Mapping: {
            const auto& key = std::get<Matching>(q.answer_key).right_for_left;
            out << " {\n";
            for (std::size_t i = 0; i < q.match_items.size(); ++i) {
                out << "=" << gift_escape(q.match_items[i]) << " -> " << gift_escape(q.options[key[i]]) << "\n";
            }
            out << "}\n";
            break;
        }
    }
}

}  // namespace

void write_gift(const QuestionBank& bank, std::ostream& out) {
    bool first = true;
    for (const auto& q : bank.questions) {
        if (!first) out << "\n";
        first = false;
        write_question(q, out);
    }
}

std::string to_gift(const QuestionBank& bank) {
    std::ostringstream out;
    write_gift(bank, out);
    return out.str();
}

void export_gift(const QuestionBank& bank, const std::string& path) {
    if (bank.questions.empty()) throw Error(ErrorKind::ValidationError, "cannot export an empty bank");
    detail::write_text_file(path, to_gift(bank));
}

}  // namespace ontolearn

#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "ontolearn/question.hpp"

namespace ontolearn {

// Backslash-escapes the GIFT control characters ~ = # { } : and backslash.
std::string gift_escape(std::string_view text);

// Moodle GIFT rendering. Each question gets a comment line carrying its DCI
// and difficulty, then a `::name::` marker followed by the stem and answers:
//   TF       {T} / {F}
//   SA       one =correct line and ~distractor lines
//   MA       ~%w%option lines, positive weights on correct options
//   Mapping  =left -> right lines
std::string to_gift(const QuestionBank& bank);
void write_gift(const QuestionBank& bank, std::ostream& out);

// Throws ValidationError on an empty bank and IoError if the file cannot be
// written.
void export_gift(const QuestionBank& bank, const std::string& path);

}  // namespace ontolearn

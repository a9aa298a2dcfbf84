#include "ontolearn/generator.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <set>

#include "json_reader.hpp"
#include "ontolearn/error.hpp"
#include "ontolearn/random.hpp"
#include "ontolearn/text.hpp"

namespace ontolearn {

using detail::JsonObject;
using nlohmann::json;

Points GenerationSpec::weight_for(QuestionType t) const {
    auto it = default_weight.find(t);
    return it == default_weight.end() ? 1 : it->second;
}

namespace {

std::map<QuestionType, std::int64_t> per_type_integers(const JsonObject& o, std::string_view key) {
    std::map<QuestionType, std::int64_t> out;
    if (!o.has(key)) return out;
    JsonObject inner(o.at(key), o.child_path(key));
    for (const auto& item : inner.raw().items()) {
        const auto t = parse_question_type(item.key());
        if (!t) inner.fail("unknown question type '" + item.key() + "'");
        out[*t] = inner.integer(item.key());
    }
    return out;
}

}  // namespace

GenerationSpec generation_spec_from_json(const json& doc_value) {
    JsonObject doc(doc_value, "$");
    doc.allow_only({"seed", "counts", "scope", "distractor_pool", "default_weight"});
    GenerationSpec spec;
    if (doc.has("seed")) {
        const auto& s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
            doc.fail_at("seed", "expected a non-negative integer");
        }
        spec.seed = s.get<std::uint64_t>();
    }
    spec.counts = per_type_integers(doc, "counts");
    for (const auto& v : doc.array_or_empty("scope")) {
        if (!v.is_string()) doc.fail_at("scope", "expected chunk id strings");
        spec.scope.push_back(v.get<std::string>());
    }
    spec.distractor_pool = doc.string_or("distractor_pool", std::string(kSameCategoryPool));
    spec.default_weight = per_type_integers(doc, "default_weight");
    return spec;
}

json generation_spec_to_json(const GenerationSpec& spec) {
    json counts = json::object();
    for (const auto& [t, n] : spec.counts) counts[std::string(to_string(t))] = n;
    json weights = json::object();
    for (const auto& [t, w] : spec.default_weight) weights[std::string(to_string(t))] = w;
    return {{"seed", spec.seed},
            {"counts", counts},
            {"scope", spec.scope},
            {"distractor_pool", spec.distractor_pool},
            {"default_weight", weights}};
}

GenerationSpec load_generation_spec(const std::string& path) {
    return generation_spec_from_json(detail::read_document(path));
}

namespace {

// Stream labels keep candidate selection and per-question draws independent.
constexpr std::uint64_t kSelectionStream = 1;
constexpr std::uint64_t kQuestionStream = 2;

std::string display_value(const Attribute& a) {
    std::string text = value_text(a.value);
    if (a.unit && !a.unit->empty()) text += " " + *a.unit;
    return text;
}

// One generatable fact. Which fields are used depends on the question type.
struct Fact {
    const ContentObject* object = nullptr;
    const Attribute* attribute = nullptr;           // TF, SA, Mapping
    std::vector<std::string> distractor_values;     // TF, SA
    std::string relation;                           // MA
    std::vector<const ContentObject*> related;      // MA
    std::vector<const ContentObject*> others;       // MA distractors, Mapping partners
};

class FactIndex {
public:
    explicit FactIndex(const MetaOntology& m) : m_(m) {
        for (const auto& o : m.content.objects) by_category_[o.category].push_back(&o);
        for (auto& [_, objects] : by_category_) {
            std::sort(objects.begin(), objects.end(),
                      [](const ContentObject* a, const ContentObject* b) { return a->id < b->id; });
        }
    }

    std::vector<Fact> facts(QuestionType t, const ContentObject& o) const {
        switch (t) {
            case QuestionType::TF:
            case QuestionType::SA: return value_facts(o);
            case QuestionType::MA: return relation_facts(o);
            case QuestionType::Mapping: return mapping_facts(o);
        }
        return {};
    }

private:
    // Sibling values: same category, same attribute name, different value.
    std::vector<std::string> sibling_values(const ContentObject& o, const Attribute& a) const {
        const std::string own = normalize_label(display_value(a));
        std::map<std::string, std::string> by_normalized;
        for (const auto* p : by_category_.at(o.category)) {
            if (p->id == o.id) continue;
            const auto* pa = p->attribute(a.name);
            if (!pa) continue;
            const auto text = display_value(*pa);
            const auto norm = normalize_label(text);
            if (norm == own || norm.empty()) continue;
            by_normalized.emplace(norm, text);
        }
        std::vector<std::string> out;
        for (auto& [_, text] : by_normalized) out.push_back(text);
        return out;
    }

    std::vector<Fact> value_facts(const ContentObject& o) const {
        std::vector<Fact> out;
        for (const auto& a : o.attributes) {
            if (normalize_label(display_value(a)).empty()) continue;
            auto distractors = sibling_values(o, a);
            if (distractors.empty()) continue;
            Fact f;
            f.object = &o;
            f.attribute = &a;
            f.distractor_values = std::move(distractors);
            out.push_back(std::move(f));
        }
        std::sort(out.begin(), out.end(), [](const Fact& x, const Fact& y) { return x.attribute->name < y.attribute->name; });
        return out;
    }

    std::vector<Fact> relation_facts(const ContentObject& o) const {
        std::map<std::string, std::set<std::string>> targets;
        for (const auto& r : m_.content.relations) {
            if (r.from == o.id && r.to != o.id) targets[r.kind].insert(r.to);
        }
        std::vector<Fact> out;
        for (const auto& [kind, ids] : targets) {
            Fact f;
            f.object = &o;
            f.relation = kind;
            std::set<std::string> labels;
            std::set<std::string> categories;
            for (const auto& id : ids) {
                const auto* target = m_.find_object(id);
                if (!target || !labels.insert(normalize_label(target->label)).second) continue;
                f.related.push_back(target);
                categories.insert(target->category);
            }
            if (f.related.empty()) continue;
            for (const auto& category : categories) {
                for (const auto* p : by_category_.at(category)) {
                    if (p->id == o.id || ids.count(p->id)) continue;
                    if (!labels.insert(normalize_label(p->label)).second) continue;
                    f.others.push_back(p);
                }
            }
            std::sort(f.others.begin(), f.others.end(),
                      [](const ContentObject* a, const ContentObject* b) { return a->id < b->id; });
            if (f.others.empty()) continue;
            out.push_back(std::move(f));
        }
        return out;
    }

    // Partners share the anchor's category and attribute, with labels and
    // values pairwise distinct so the matching has exactly one solution.
    std::vector<Fact> mapping_facts(const ContentObject& o) const {
        std::vector<Fact> out;
        for (const auto& a : o.attributes) {
            std::set<std::string> labels{normalize_label(o.label)};
            std::set<std::string> values{normalize_label(display_value(a))};
            if (values.begin()->empty()) continue;
            Fact f;
            f.object = &o;
            f.attribute = &a;
            for (const auto* p : by_category_.at(o.category)) {
                if (p->id == o.id) continue;
                const auto* pa = p->attribute(a.name);
                if (!pa) continue;
                const auto value = normalize_label(display_value(*pa));
                const auto label = normalize_label(p->label);
                if (value.empty() || values.count(value) || labels.count(label)) continue;
                values.insert(value);
                labels.insert(label);
                f.others.push_back(p);
            }
            if (f.others.size() < 2) continue;
            out.push_back(std::move(f));
        }
        std::sort(out.begin(), out.end(), [](const Fact& x, const Fact& y) { return x.attribute->name < y.attribute->name; });
        return out;
    }

    const MetaOntology& m_;
    std::map<std::string, std::vector<const ContentObject*>> by_category_;
};

std::string question_id(std::size_t index) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "q%04zu", index + 1);
    return buffer;
}

Question build_question(QuestionType t, const Fact& fact, const Chunk& chunk, std::mt19937_64& rng) {
    Question q;
    q.qtype = t;
    q.competence = competence_for(t);
    q.difficulty = difficulty_for(t);
    q.dci = chunk.dci;
    q.chunk_id = chunk.id;
    const auto& object = *fact.object;

    switch (t) {
        case QuestionType::TF: {
            const bool asserts_truth = uniform_below(rng, 2) == 0;
            const std::string shown =
                asserts_truth ? display_value(*fact.attribute)
                              : fact.distractor_values[uniform_below(rng, fact.distractor_values.size())];
            q.stem = "True or false: the " + fact.attribute->name + " of " + object.label + " is " + shown + ".";
            q.options = {"True", "False"};
            q.answer_key = TrueFalse{asserts_truth};
            break;
        }
        case QuestionType::SA: {
            const std::string correct = display_value(*fact.attribute);
            auto options = stable_sample(fact.distractor_values, 3, rng);
            options.push_back(correct);
            stable_shuffle(options, rng);
            const auto at = std::find(options.begin(), options.end(), correct) - options.begin();
            q.stem = "Which value of " + fact.attribute->name + " belongs to " + object.label + "?";
            q.options = std::move(options);
            q.answer_key = SingleChoice{static_cast<std::size_t>(at)};
            break;
        }
        case QuestionType::MA: {
            auto right = stable_sample(fact.related, 4, rng);
            auto wrong = stable_sample(fact.others, 3, rng);
            std::vector<std::pair<const ContentObject*, bool>> options;
            for (const auto* p : right) options.emplace_back(p, true);
            for (const auto* p : wrong) options.emplace_back(p, false);
            stable_shuffle(options, rng);
            MultipleChoice key;
            for (std::size_t i = 0; i < options.size(); ++i) {
                q.options.push_back(options[i].first->label);
                if (options[i].second) key.indices.insert(i);
            }
            q.stem = "Which of the following stand in relation \"" + fact.relation + "\" to " + object.label + "?";
            q.answer_key = std::move(key);
            break;
        }
        case QuestionType::Mapping: {
            auto members = stable_sample(fact.others, 4, rng);
            members.push_back(&object);
            stable_shuffle(members, rng);
            std::vector<std::size_t> right_order(members.size());
            for (std::size_t i = 0; i < right_order.size(); ++i) right_order[i] = i;
            stable_shuffle(right_order, rng);
            // right_order[j] = member shown at right position j
            Matching key;
            key.right_for_left.resize(members.size());
            for (std::size_t j = 0; j < right_order.size(); ++j) key.right_for_left[right_order[j]] = j;
            for (const auto* p : members) q.match_items.push_back(p->label);
            for (std::size_t j : right_order) q.options.push_back(display_value(*members[j]->attribute(fact.attribute->name)));
            q.stem = "Match each " + object.category + " with its " + fact.attribute->name + ".";
            q.answer_key = std::move(key);
            break;
        }
    }
    return q;
}

[[noreturn]] void insufficient(QuestionType t, std::string_view chunk_id, const std::string& why) {
    throw Error(ErrorKind::InsufficientFacts,
                "qtype=" + std::string(to_string(t)) + " chunk=" + std::string(chunk_id) + ": " + why);
}

}  // namespace

QuestionBank generate_bank(const MetaOntology& m, const GenerationSpec& spec) {
    if (spec.distractor_pool != kSameCategoryPool) {
        throw Error(ErrorKind::ValidationError, "unknown distractor pool policy '" + spec.distractor_pool + "'");
    }
    std::int64_t total = 0;
    for (const auto& [t, n] : spec.counts) {
        if (n < 0) throw Error(ErrorKind::ValidationError, "negative count for " + std::string(to_string(t)));
        total += n;
    }
    for (const auto& [t, w] : spec.default_weight) {
        if (w <= 0) throw Error(ErrorKind::ValidationError, "non-positive weight for " + std::string(to_string(t)));
    }

    std::vector<const Chunk*> scope;
    if (spec.scope.empty()) {
        for (const auto& c : m.didactic.chunks) scope.push_back(&c);
    } else {
        for (const auto& id : spec.scope) {
            const auto* c = m.find_chunk(id);
            if (!c) throw Error(ErrorKind::UnknownChunk, "scope chunk '" + id + "' not in '" + m.discipline_id + "'");
            scope.push_back(c);
        }
    }
    std::sort(scope.begin(), scope.end(), [](const Chunk* a, const Chunk* b) { return a->id < b->id; });
    scope.erase(std::unique(scope.begin(), scope.end(),
                            [](const Chunk* a, const Chunk* b) { return a->id == b->id; }),
                scope.end());

    QuestionBank bank;
    bank.discipline_id = m.discipline_id;
    if (total == 0) return bank;

    QuestionType first_requested = QuestionType::TF;
    for (auto t : kAllQuestionTypes) {
        if (spec.counts.count(t) && spec.counts.at(t) > 0) {
            first_requested = t;
            break;
        }
    }
    if (scope.empty()) insufficient(first_requested, "<none>", "no chunks in scope");
    for (const auto* c : scope) {
        if (m.bound_objects(c->id).empty()) insufficient(first_requested, c->id, "no bound content objects");
    }

    const FactIndex index(m);

    // Serial selection: which (chunk, fact) feeds each question slot.
    struct Slot {
        QuestionType type;
        const Chunk* chunk;
        Fact fact;
    };
    std::vector<Slot> slots;
    for (auto t : kAllQuestionTypes) {
        const auto wanted = spec.counts.count(t) ? spec.counts.at(t) : 0;
        if (wanted == 0) continue;

        std::vector<std::pair<const Chunk*, std::deque<Fact>>> queues;
        for (const auto* c : scope) {
            std::vector<Fact> facts;
            for (const auto* o : m.bound_objects(c->id)) {
                auto more = index.facts(t, *o);
                facts.insert(facts.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
            }
            std::mt19937_64 rng(derive_seed(spec.seed, {kSelectionStream, static_cast<std::uint64_t>(t), stable_hash(c->id)}));
            stable_shuffle(facts, rng);
            if (!facts.empty()) queues.emplace_back(c, std::deque<Fact>(facts.begin(), facts.end()));
        }
        if (queues.empty()) {
            insufficient(t, scope.front()->id, "no chunk in scope can supply a question of this type");
        }

        std::int64_t produced = 0;
        std::size_t cursor = 0;
        std::size_t idle = 0;
        while (produced < wanted) {
            auto& [chunk, queue] = queues[cursor];
            cursor = (cursor + 1) % queues.size();
            if (queue.empty()) {
                if (++idle == queues.size()) {
                    insufficient(t, queues.back().first->id,
                                 "requested " + std::to_string(wanted) + ", scope supplies only " +
                                     std::to_string(produced) + " distinct facts");
                }
                continue;
            }
            idle = 0;
            slots.push_back({t, chunk, std::move(queue.front())});
            queue.pop_front();
            ++produced;
        }
    }

    // Per-slot construction only depends on (seed, slot index).
    bank.questions.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        std::mt19937_64 rng(derive_seed(spec.seed, {kQuestionStream, i}));
        auto q = build_question(slots[i].type, slots[i].fact, *slots[i].chunk, rng);
        q.id = question_id(i);
        q.weight = spec.weight_for(slots[i].type);
        bank.questions.push_back(std::move(q));
    }
    return bank;
}

}  // namespace ontolearn

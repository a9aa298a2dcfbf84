#include "ontolearn/ontology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"

#include "ontolearn/error.hpp"
#include "ontolearn/text.hpp"

namespace ontolearn {

std::string_view to_string(ContentKind kind) {
    switch (kind) {
        case ContentKind::Text: return "text";
        case ContentKind::Presentation: return "presentation";
        case ContentKind::Video: return "video";
        case ContentKind::Test: return "test";
    }
    return "text";
}

std::optional<ContentKind> parse_content_kind(std::string_view text) {
    if (text == "text") return ContentKind::Text;
    if (text == "presentation") return ContentKind::Presentation;
    if (text == "video") return ContentKind::Video;
    if (text == "test") return ContentKind::Test;
    return std::nullopt;
}

std::string value_text(const AttributeValue& value) {
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
    return nlohmann::json(std::get<double>(value)).dump();
}

const Attribute* ContentObject::attribute(std::string_view name) const {
    for (const auto& a : attributes) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

const Chunk* MetaOntology::find_chunk(std::string_view chunk_id) const {
    for (const auto& c : didactic.chunks) {
        if (c.id == chunk_id) return &c;
    }
    return nullptr;
}

const ContentObject* MetaOntology::find_object(std::string_view object_id) const {
    for (const auto& o : content.objects) {
        if (o.id == object_id) return &o;
    }
    return nullptr;
}

std::vector<const Chunk*> MetaOntology::chunks_with_dci(std::string_view dci) const {
    std::vector<const Chunk*> out;
    for (const auto& c : didactic.chunks) {
        if (c.dci == dci) out.push_back(&c);
    }
    std::sort(out.begin(), out.end(), [](const Chunk* x, const Chunk* y) { return x->id < y->id; });
    return out;
}

std::vector<const ContentObject*> MetaOntology::bound_objects(std::string_view chunk_id) const {
    std::set<std::string> ids;
    for (const auto& b : bindings) {
        if (b.chunk_id == chunk_id) ids.insert(b.object_id);
    }
    std::vector<const ContentObject*> out;
    for (const auto& id : ids) {
        if (const auto* o = find_object(id)) out.push_back(o);
    }
    return out;
}

std::vector<ContentMapping> MetaOntology::mappings_for(std::string_view chunk_id) const {
    std::vector<ContentMapping> out;
    for (const auto& m : didactic.mappings) {
        if (m.chunk_id == chunk_id) out.push_back(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

namespace {

auto key(const Chunk& c) { return std::tie(c.id, c.label, c.discipline_id, c.dci); }
auto key(const ContentMapping& m) {
    return std::tie(m.chunk_id, m.content_kind, m.content_ref, m.discipline_id);
}
auto key(const DidacticRelation& r) { return std::tie(r.kind, r.from_chunk, r.to_chunk); }
auto key(const ContentRelation& r) { return std::tie(r.kind, r.from, r.to); }
auto key(const Binding& b) { return std::tie(b.chunk_id, b.object_id); }
auto key(const Attribute& a) { return std::tie(a.name, a.value, a.unit); }

bool object_less(const ContentObject& x, const ContentObject& y) {
    if (std::tie(x.id, x.category, x.label) != std::tie(y.id, y.category, y.label)) {
        return std::tie(x.id, x.category, x.label) < std::tie(y.id, y.category, y.label);
    }
    return std::lexicographical_compare(
        x.attributes.begin(), x.attributes.end(), y.attributes.begin(), y.attributes.end(),
        [](const Attribute& a, const Attribute& b) { return key(a) < key(b); });
}

template <typename T>
void sort_unique(std::vector<T>& items) {
    std::sort(items.begin(), items.end(), [](const T& a, const T& b) { return key(a) < key(b); });
    items.erase(std::unique(items.begin(), items.end()), items.end());
}

}  // namespace

MetaOntology canonicalized(MetaOntology m) {
    sort_unique(m.didactic.chunks);
    sort_unique(m.didactic.mappings);
    sort_unique(m.didactic.relations);
    std::sort(m.content.objects.begin(), m.content.objects.end(), object_less);
    m.content.objects.erase(std::unique(m.content.objects.begin(), m.content.objects.end()),
                            m.content.objects.end());
    sort_unique(m.content.relations);
    sort_unique(m.bindings);
    return m;
}

bool equivalent(const MetaOntology& a, const MetaOntology& b) {
    return canonicalized(a) == canonicalized(b);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::string Violation::to_string() const {
    std::string out = severity == Severity::Error ? "error: " : "warning: ";
    out += rule;
    out += ": ";
    out += entity;
    if (!message.empty()) {
        out += ": ";
        out += message;
    }
    return out;
}

bool ValidationReport::has_errors() const {
    return std::any_of(violations.begin(), violations.end(),
                       [](const Violation& v) { return v.severity == Severity::Error; });
}

std::vector<Violation> ValidationReport::errors() const {
    std::vector<Violation> out;
    std::copy_if(violations.begin(), violations.end(), std::back_inserter(out),
                 [](const Violation& v) { return v.severity == Severity::Error; });
    return out;
}

namespace {

class ReportBuilder {
public:
    void error(std::string rule, std::string entity, std::string message = {}) {
        report_.violations.push_back({Severity::Error, std::move(rule), std::move(entity), std::move(message)});
    }
    void warning(std::string rule, std::string entity, std::string message = {}) {
        report_.violations.push_back({Severity::Warning, std::move(rule), std::move(entity), std::move(message)});
    }
    ValidationReport take() { return std::move(report_); }

private:
    ValidationReport report_;
};

std::string in_quotes(std::string_view s) { return "'" + std::string(s) + "'"; }

template <typename Range, typename IdOf>
std::set<std::string> report_duplicates(ReportBuilder& out, const Range& items, IdOf id_of,
                                        std::string_view entity_kind) {
    std::map<std::string, int> seen;
    for (const auto& item : items) ++seen[id_of(item)];
    std::set<std::string> ids;
    for (const auto& [id, count] : seen) {
        ids.insert(id);
        if (count > 1) {
            out.error("duplicate id", std::string(entity_kind) + " " + in_quotes(id),
                      "appears " + std::to_string(count) + " times");
        }
    }
    return ids;
}

}  // namespace

ValidationReport validate(const MetaOntology& m) {
    ReportBuilder out;

    if (m.didactic.discipline_id != m.discipline_id) {
        out.error("discipline mismatch", "didactic ontology",
                  "discipline " + in_quotes(m.didactic.discipline_id) + " differs from " + in_quotes(m.discipline_id));
    }

    // Chunks.
    const auto chunk_ids = report_duplicates(out, m.didactic.chunks, [](const Chunk& c) { return c.id; }, "chunk");
    for (const auto& c : m.didactic.chunks) {
        const std::string entity = "chunk " + in_quotes(c.id);
        if (c.id.empty()) out.error("empty id", entity);
        if (normalize_label(c.label).empty()) out.error("empty label", entity);
        if (!is_valid_dci(c.dci)) out.error("invalid dci", entity, "dci " + in_quotes(c.dci));
        if (c.discipline_id != m.discipline_id) {
            out.error("discipline mismatch", entity,
                      "discipline " + in_quotes(c.discipline_id) + " differs from " + in_quotes(m.discipline_id));
        }
    }

    for (const auto& mapping : m.didactic.mappings) {
        if (!chunk_ids.count(mapping.chunk_id)) {
            out.error("dangling mapping", "content mapping " + in_quotes(mapping.content_ref),
                      "chunk " + in_quotes(mapping.chunk_id) + " does not exist");
        }
    }

    for (const auto& r : m.didactic.relations) {
        const std::string entity = "precedes " + in_quotes(r.from_chunk) + " -> " + in_quotes(r.to_chunk);
        if (r.from_chunk == r.to_chunk) {
            out.error("self precedes", entity);
        }
        for (const auto* end : {&r.from_chunk, &r.to_chunk}) {
            if (!chunk_ids.count(*end)) {
                out.error("dangling relation", entity, "chunk " + in_quotes(*end) + " does not exist");
            }
        }
    }

    // Cycle detection over the resolvable part of the graph. Self-loops are
    // already reported above.
    {
        const auto pg = build_precedence_graph(m.didactic);
        for (const auto& cycle : graph::find_cycles(pg.graph)) {
            if (cycle.size() == 1) continue;
            std::string path;
            for (std::size_t v : cycle) path += pg.chunk_ids[v] + " -> ";
            path += pg.chunk_ids[cycle.front()];
            out.error("cycle", "chunk " + in_quotes(pg.chunk_ids[cycle.front()]), path);
        }
    }

    // Content objects.
    const auto object_ids =
        report_duplicates(out, m.content.objects, [](const ContentObject& o) { return o.id; }, "object");
    for (const auto& o : m.content.objects) {
        const std::string entity = "object " + in_quotes(o.id);
        if (o.id.empty()) out.error("empty id", entity);
        std::map<std::string, int> names;
        for (const auto& a : o.attributes) {
            if (a.name.empty()) out.error("empty attribute name", entity);
            ++names[a.name];
        }
        for (const auto& [name, count] : names) {
            if (count > 1 && !name.empty()) {
                out.error("duplicate attribute", entity, "attribute " + in_quotes(name) + " appears " +
                                                             std::to_string(count) + " times");
            }
        }
    }

    for (const auto& r : m.content.relations) {
        const std::string entity = r.kind + " " + in_quotes(r.from) + " -> " + in_quotes(r.to);
        for (const auto* end : {&r.from, &r.to}) {
            if (!object_ids.count(*end)) {
                out.error("dangling content relation", entity, "object " + in_quotes(*end) + " does not exist");
            }
        }
    }

    for (const auto& b : m.bindings) {
        const std::string entity = "binding (" + in_quotes(b.chunk_id) + ", " + in_quotes(b.object_id) + ")";
        if (!chunk_ids.count(b.chunk_id)) {
            out.error("dangling binding", entity, "chunk " + in_quotes(b.chunk_id) + " does not exist");
        }
        if (!object_ids.count(b.object_id)) {
            out.error("dangling binding", entity, "object " + in_quotes(b.object_id) + " does not exist");
        }
    }

    // Orphans: objects not reachable from any binding through content
    // relations (followed in either direction).
    {
        std::map<std::string, std::vector<std::string>> adjacent;
        for (const auto& r : m.content.relations) {
            adjacent[r.from].push_back(r.to);
            adjacent[r.to].push_back(r.from);
        }
        std::set<std::string> reached;
        std::vector<std::string> pending;
        for (const auto& b : m.bindings) {
            if (chunk_ids.count(b.chunk_id) && object_ids.count(b.object_id) && reached.insert(b.object_id).second) {
                pending.push_back(b.object_id);
            }
        }
        while (!pending.empty()) {
            const std::string id = pending.back();
            pending.pop_back();
            for (const auto& next : adjacent[id]) {
                if (reached.insert(next).second) pending.push_back(next);
            }
        }
        for (const auto& id : object_ids) {
            if (!reached.count(id)) {
                out.warning("orphan object", "object " + in_quotes(id), "not reachable from any chunk binding");
            }
        }
    }

    return out.take();
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

std::optional<std::size_t> PrecedenceGraph::vertex(std::string_view chunk_id) const {
    auto it = std::lower_bound(chunk_ids.begin(), chunk_ids.end(), chunk_id);
    if (it == chunk_ids.end() || *it != chunk_id) return std::nullopt;
    return static_cast<std::size_t>(it - chunk_ids.begin());
}

PrecedenceGraph build_precedence_graph(const DidacticOntology& didactic) {
    PrecedenceGraph pg;
    for (const auto& c : didactic.chunks) pg.chunk_ids.push_back(c.id);
    std::sort(pg.chunk_ids.begin(), pg.chunk_ids.end());
    pg.chunk_ids.erase(std::unique(pg.chunk_ids.begin(), pg.chunk_ids.end()), pg.chunk_ids.end());
    pg.graph = graph::Digraph(pg.chunk_ids.size());

    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& r : didactic.relations) {
        const auto from = pg.vertex(r.from_chunk);
        const auto to = pg.vertex(r.to_chunk);
        if (from && to) edges.emplace(*from, *to);
    }
    for (const auto& [from, to] : edges) pg.graph.add_edge(from, to);
    return pg;
}

std::vector<Chunk> prerequisite_closure(const MetaOntology& m, std::string_view chunk_id) {
    const auto pg = build_precedence_graph(m.didactic);
    const auto target = pg.vertex(chunk_id);
    if (!target) {
        throw Error(ErrorKind::UnknownChunk, "chunk '" + std::string(chunk_id) + "' not in discipline '" +
                                                 m.discipline_id + "'");
    }
    std::vector<Chunk> out;
    for (std::size_t v : graph::ancestors_in_order(pg.graph, *target)) {
        out.push_back(*m.find_chunk(pg.chunk_ids[v]));
    }
    return out;
}

std::vector<SharedChunk> shared_chunks(const MetaOntology& a, const MetaOntology& b) {
    if (a.discipline_id == b.discipline_id) {
        throw Error(ErrorKind::SameDiscipline, "both ontologies belong to '" + a.discipline_id + "'");
    }
    std::multimap<std::string, const Chunk*> by_label;
    for (const auto& c : b.didactic.chunks) by_label.emplace(normalize_label(c.label), &c);

    std::vector<SharedChunk> out;
    for (const auto& c : a.didactic.chunks) {
        auto [lo, hi] = by_label.equal_range(normalize_label(c.label));
        for (auto it = lo; it != hi; ++it) out.push_back({c, *it->second});
    }
    std::sort(out.begin(), out.end(), [](const SharedChunk& x, const SharedChunk& y) {
        return std::tie(x.in_a.id, x.in_b.id) < std::tie(y.in_a.id, y.in_b.id);
    });
    return out;
}

}  // namespace ontolearn

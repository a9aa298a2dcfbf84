#include "ontolearn/recommend.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json_reader.hpp"
#include "ontolearn/error.hpp"

namespace ontolearn {

using nlohmann::json;

namespace {

// chunk id -> originating DCI, first writer wins.
using Picked = std::map<std::string, std::string>;

void append_discipline(std::vector<Recommendation>& out, const MetaOntology& m, const Picked& picked) {
    if (picked.empty()) return;
    const auto pg = build_precedence_graph(m.didactic);
    std::vector<std::size_t> vertices;
    for (const auto& [chunk_id, _] : picked) vertices.push_back(*pg.vertex(chunk_id));
    for (std::size_t v : graph::order_subset(pg.graph, vertices)) {
        const auto& chunk_id = pg.chunk_ids[v];
        const auto* chunk = m.find_chunk(chunk_id);
        Recommendation r;
        r.discipline_id = m.discipline_id;
        r.chunk_id = chunk_id;
        r.label = chunk->label;
        r.content = m.mappings_for(chunk_id);
        std::sort(r.content.begin(), r.content.end(), [](const ContentMapping& a, const ContentMapping& b) {
            return std::tie(a.discipline_id, a.content_kind, a.content_ref) <
                   std::tie(b.discipline_id, b.content_kind, b.content_ref);
        });
        r.reason = picked.at(chunk_id);
        r.no_materials = r.content.empty();
        out.push_back(std::move(r));
    }
}

}  // namespace

std::vector<Recommendation> recommend(const GradeReport& report, const MetaOntology& home,
                                      const std::vector<const MetaOntology*>& others,
                                      const RecommendOptions& options) {
    std::vector<std::string> failed = report.failed_dcis;
    std::sort(failed.begin(), failed.end(), DciLess{});
    failed.erase(std::unique(failed.begin(), failed.end()), failed.end());

    Picked home_picked;
    Picked failed_chunks;
    std::vector<std::pair<std::string, std::string>> in_dci_order;  // (dci, chunk id)
    for (const auto& dci : failed) {
        const auto chunks = home.chunks_with_dci(dci);
        if (chunks.empty()) {
            throw Error(ErrorKind::UnresolvedDci, "DCI '" + dci + "' has no chunk in '" + home.discipline_id + "'");
        }
        for (const auto* c : chunks) {
            home_picked.emplace(c->id, dci);
            failed_chunks.emplace(c->id, dci);
            in_dci_order.emplace_back(dci, c->id);
        }
    }
    if (options.deep) {
        for (const auto& [dci, chunk_id] : in_dci_order) {
            for (const auto& prerequisite : prerequisite_closure(home, chunk_id)) {
                home_picked.emplace(prerequisite.id, dci);
            }
        }
    }

    std::vector<const MetaOntology*> foreign;
    for (const auto* m : others) {
        if (m && m->discipline_id != home.discipline_id) foreign.push_back(m);
    }
    std::sort(foreign.begin(), foreign.end(),
              [](const MetaOntology* a, const MetaOntology* b) { return a->discipline_id < b->discipline_id; });

    std::vector<Recommendation> out;
    append_discipline(out, home, home_picked);
    for (const auto* m : foreign) {
        Picked picked;
        for (const auto& pair : shared_chunks(home, *m)) {
            auto hit = failed_chunks.find(pair.in_a.id);
            if (hit == failed_chunks.end()) continue;
            auto [it, inserted] = picked.emplace(pair.in_b.id, hit->second);
            if (!inserted && DciLess{}(hit->second, it->second)) it->second = hit->second;
        }
        append_discipline(out, *m, picked);
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

std::vector<Recommendation> recommend(const GradeReport& report, const MetaOntology& home,
                                      const std::vector<MetaOntology>& others, const RecommendOptions& options) {
    std::vector<const MetaOntology*> pointers;
    for (const auto& m : others) pointers.push_back(&m);
    return recommend(report, home, pointers, options);
}

json recommendation_to_json(const Recommendation& r) {
    json content = json::array();
    for (const auto& c : r.content) {
        content.push_back({{"chunk_id", c.chunk_id},
                           {"content_kind", std::string(to_string(c.content_kind))},
                           {"content_ref", c.content_ref},
                           {"discipline_id", c.discipline_id}});
    }
    return {{"chunk", {{"discipline_id", r.discipline_id}, {"chunk_id", r.chunk_id}, {"label", r.label}}},
            {"content", std::move(content)},
            {"reason", r.reason},
            {"rank", r.rank},
            {"no_materials", r.no_materials}};
}

json recommendations_to_json(const std::vector<Recommendation>& list) {
    json items = json::array();
    for (const auto& r : list) items.push_back(recommendation_to_json(r));
    return items;
}

Recommendation recommendation_from_json(const json& value) {
    detail::JsonObject o(value, "$.recommendation");
    o.allow_only({"chunk", "content", "reason", "rank", "no_materials"});
    detail::JsonObject chunk(o.at("chunk"), o.child_path("chunk"));
    chunk.allow_only({"discipline_id", "chunk_id", "label"});
    Recommendation r;
    r.discipline_id = chunk.string("discipline_id");
    r.chunk_id = chunk.string("chunk_id");
    r.label = chunk.string("label");
    for (const auto& item : o.array("content")) {
        detail::JsonObject c(item, o.child_path("content"));
        c.allow_only({"chunk_id", "content_kind", "content_ref", "discipline_id"});
        const auto kind = parse_content_kind(c.string("content_kind"));
        if (!kind) c.fail_at("content_kind", "unknown content kind");
        r.content.push_back({c.string("chunk_id"), *kind, c.string("content_ref"), c.string("discipline_id")});
    }
    r.reason = o.string("reason");
    r.rank = static_cast<std::size_t>(o.integer("rank"));
    r.no_materials = o.boolean("no_materials");
    return r;
}

}  // namespace ontolearn

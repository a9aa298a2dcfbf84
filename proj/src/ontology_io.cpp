#include "ontolearn/ontology_io.hpp"

#include "json_reader.hpp"

namespace ontolearn {

using detail::index_path;
using detail::JsonObject;
using nlohmann::json;

namespace {

Chunk chunk_from(const json& value, const std::string& path, const std::string& discipline) {
    JsonObject o(value, path);
    o.allow_only({"id", "label", "discipline_id", "dci"});
    return {o.string("id"), o.string("label"), o.string_or("discipline_id", discipline), o.string("dci")};
}

ContentMapping mapping_from(const json& value, const std::string& path, const std::string& discipline) {
    JsonObject o(value, path);
    o.allow_only({"chunk_id", "content_kind", "content_ref", "discipline_id"});
    const auto kind_text = o.string("content_kind");
    const auto kind = parse_content_kind(kind_text);
    if (!kind) o.fail_at("content_kind", "unknown content kind '" + kind_text + "'");
    return {o.string("chunk_id"), *kind, o.string("content_ref"), o.string_or("discipline_id", discipline)};
}

DidacticRelation relation_from(const json& value, const std::string& path) {
    JsonObject o(value, path);
    o.allow_only({"kind", "from_chunk", "to_chunk"});
    if (o.string("kind") != "precedes") o.fail_at("kind", "unknown didactic relation '" + o.string("kind") + "'");
    return {DidacticRelationKind::Precedes, o.string("from_chunk"), o.string("to_chunk")};
}

Attribute attribute_from(const json& value, const std::string& path) {
    JsonObject o(value, path);
    o.allow_only({"name", "value", "unit"});
    Attribute a;
    a.name = o.string("name");
    const auto& v = o.at("value");
    if (v.is_string()) {
        a.value = v.get<std::string>();
    } else if (v.is_number_integer()) {
        a.value = v.get<std::int64_t>();
    } else if (v.is_number_float()) {
        a.value = v.get<double>();
    } else {
        o.fail_at("value", "expected a string or number");
    }
    if (o.has("unit")) a.unit = o.string("unit");
    return a;
}

ContentObject object_from(const json& value, const std::string& path) {
    JsonObject o(value, path);
    o.allow_only({"id", "category", "label", "attributes"});
    ContentObject obj{o.string("id"), o.string("category"), o.string("label"), {}};
    const auto& attrs = o.array_or_empty("attributes");
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        obj.attributes.push_back(attribute_from(attrs[i], index_path(o.child_path("attributes"), i)));
    }
    return obj;
}

ContentRelation content_relation_from(const json& value, const std::string& path) {
    JsonObject o(value, path);
    o.allow_only({"kind", "from", "to"});
    return {o.string("kind"), o.string("from"), o.string("to")};
}

Binding binding_from(const json& value, const std::string& path) {
    JsonObject o(value, path);
    o.allow_only({"chunk_id", "object_id"});
    return {o.string("chunk_id"), o.string("object_id")};
}

template <typename Fn>
void each(const JsonObject& doc, std::string_view key, Fn&& fn) {
    const auto& items = doc.array_or_empty(key);
    for (std::size_t i = 0; i < items.size(); ++i) fn(items[i], index_path(doc.child_path(key), i));
}

}  // namespace

MetaOntology ontology_from_json(const json& value) {
    JsonObject doc(value, "$");
    doc.allow_only({"discipline_id", "chunks", "content_mappings", "didactic_relations", "objects",
                    "content_relations", "bindings"});
    MetaOntology m;
    m.discipline_id = doc.string("discipline_id");
    m.didactic.discipline_id = m.discipline_id;
    each(doc, "chunks", [&](const json& v, const std::string& p) {
        m.didactic.chunks.push_back(chunk_from(v, p, m.discipline_id));
    });
    each(doc, "content_mappings", [&](const json& v, const std::string& p) {
        m.didactic.mappings.push_back(mapping_from(v, p, m.discipline_id));
    });
    each(doc, "didactic_relations",
         [&](const json& v, const std::string& p) { m.didactic.relations.push_back(relation_from(v, p)); });
    each(doc, "objects", [&](const json& v, const std::string& p) { m.content.objects.push_back(object_from(v, p)); });
    each(doc, "content_relations", [&](const json& v, const std::string& p) {
        m.content.relations.push_back(content_relation_from(v, p));
    });
    each(doc, "bindings", [&](const json& v, const std::string& p) { m.bindings.push_back(binding_from(v, p)); });
    return m;
}

json ontology_to_json(const MetaOntology& m) {
    json doc = json::object();
    doc["discipline_id"] = m.discipline_id;

    json chunks = json::array();
    for (const auto& c : m.didactic.chunks) {
        chunks.push_back({{"id", c.id}, {"label", c.label}, {"discipline_id", c.discipline_id}, {"dci", c.dci}});
    }
    doc["chunks"] = std::move(chunks);

    json mappings = json::array();
    for (const auto& mp : m.didactic.mappings) {
        mappings.push_back({{"chunk_id", mp.chunk_id},
                            {"content_kind", std::string(to_string(mp.content_kind))},
                            {"content_ref", mp.content_ref},
                            {"discipline_id", mp.discipline_id}});
    }
    doc["content_mappings"] = std::move(mappings);

    json relations = json::array();
    for (const auto& r : m.didactic.relations) {
        relations.push_back({{"kind", "precedes"}, {"from_chunk", r.from_chunk}, {"to_chunk", r.to_chunk}});
    }
    doc["didactic_relations"] = std::move(relations);

    json objects = json::array();
    for (const auto& o : m.content.objects) {
        json attrs = json::array();
        for (const auto& a : o.attributes) {
            json attr = {{"name", a.name}};
            std::visit([&](const auto& v) { attr["value"] = v; }, a.value);
            if (a.unit) attr["unit"] = *a.unit;
            attrs.push_back(std::move(attr));
        }
        objects.push_back({{"id", o.id}, {"category", o.category}, {"label", o.label}, {"attributes", std::move(attrs)}});
    }
    doc["objects"] = std::move(objects);

    json content_relations = json::array();
    for (const auto& r : m.content.relations) {
        content_relations.push_back({{"kind", r.kind}, {"from", r.from}, {"to", r.to}});
    }
    doc["content_relations"] = std::move(content_relations);

    json bindings = json::array();
    for (const auto& b : m.bindings) bindings.push_back({{"chunk_id", b.chunk_id}, {"object_id", b.object_id}});
    doc["bindings"] = std::move(bindings);
    return doc;
}

MetaOntology read_ontology(const std::string& path) { return ontology_from_json(detail::read_document(path)); }

MetaOntology load_ontology(const std::string& path) {
    auto m = read_ontology(path);
    const auto report = validate(m);
    if (report.has_errors()) {
        std::string detail = path;
        for (const auto& v : report.errors()) detail += "; " + v.rule + ": " + v.entity + (v.message.empty() ? "" : " (" + v.message + ")");
        throw Error(ErrorKind::ValidationError, detail);
    }
    return m;
}

void save_ontology(const MetaOntology& m, const std::string& path) {
    detail::write_text_file(path, ontology_to_json(m).dump(2) + "\n");
}

}  // namespace ontolearn

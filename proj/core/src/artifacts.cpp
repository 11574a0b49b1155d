#include "unjoin/artifacts.hpp"

#include <fstream>

#include "unjoin/errors.hpp"

namespace unjoin {

using nlohmann::json;

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (!in) break;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

json attribute_set_to_json(AttributeSet s, const std::vector<std::string>& names) {
    json arr = json::array();
    for (int i : s.indices()) arr.push_back(names[static_cast<std::size_t>(i)]);
    return arr;
}

AttributeSet attribute_set_from_json(const json& arr, const Relation& rel) {
    AttributeSet s;
    for (const auto& name : arr) {
        auto idx = rel.attribute_index(name.get<std::string>());
        if (!idx)
            throw StructureError("unknown attribute name: " + name.get<std::string>());
        s.insert(*idx);
    }
    return s;
}

json mvd_to_json(const Mvd& mvd, const std::vector<std::string>& names) {
    json obj;
    obj["key"] = attribute_set_to_json(mvd.key(), names);
    json deps = json::array();
    for (const auto& d : mvd.dependents()) deps.push_back(attribute_set_to_json(d, names));
    obj["dependents"] = std::move(deps);
    return obj;
}

Mvd mvd_from_json(const json& obj, const Relation& rel) {
    AttributeSet key = attribute_set_from_json(obj.at("key"), rel);
    std::vector<AttributeSet> deps;
    for (const auto& d : obj.at("dependents"))
        deps.push_back(attribute_set_from_json(d, rel));
    return Mvd(key, std::move(deps));
}

json mvds_artifact_to_json(const MvdsArtifact& a) {
    json meta;
    meta["input"] = a.input_path;
    meta["input_checksum"] = a.input_checksum;
    meta["attribute_count"] = a.attribute_count;
    meta["row_count"] = a.row_count;
    meta["epsilon"] = a.epsilon;
    meta["block_size"] = a.block_size;
    meta["dedup"] = a.dedup;
    meta["truncated"] = a.truncated;
    meta["attributes"] = a.attribute_names;
    if (a.wall_ms >= 0) meta["wall_ms"] = a.wall_ms;

    json mvds = json::array();
    for (const MinedMvd& m : a.mvds) {
        json rec = mvd_to_json(m.mvd, a.attribute_names);
        rec["j_bits"] = m.j_bits;
        json wit = json::array();
        for (auto [x, y] : m.witnesses)
            wit.push_back(json::array({a.attribute_names[static_cast<std::size_t>(x)],
                                       a.attribute_names[static_cast<std::size_t>(y)]}));
        rec["pair_witnesses"] = std::move(wit);
        mvds.push_back(std::move(rec));
    }

    json out;
    out["meta"] = std::move(meta);
    out["mvds"] = std::move(mvds);
    return out;
}

MvdsArtifact mvds_artifact_from_json(const json& j, const Relation& rel) {
    MvdsArtifact a;
    const json& meta = j.at("meta");
    a.input_path = meta.at("input").get<std::string>();
    a.input_checksum = meta.at("input_checksum").get<std::string>();
    a.attribute_count = meta.at("attribute_count").get<int>();
    a.row_count = meta.at("row_count").get<std::uint64_t>();
    a.epsilon = meta.at("epsilon").get<double>();
    a.block_size = meta.at("block_size").get<int>();
    a.dedup = meta.at("dedup").get<bool>();
    a.truncated = meta.at("truncated").get<bool>();
    a.attribute_names = meta.at("attributes").get<std::vector<std::string>>();
    if (meta.contains("wall_ms")) a.wall_ms = meta.at("wall_ms").get<long long>();
    for (const auto& rec : j.at("mvds")) {
        MinedMvd m{mvd_from_json(rec, rel), rec.at("j_bits").get<double>(), {}};
        if (rec.contains("pair_witnesses")) {
            for (const auto& w : rec.at("pair_witnesses")) {
                auto ia = rel.attribute_index(w.at(0).get<std::string>());
                auto ib = rel.attribute_index(w.at(1).get<std::string>());
                if (!ia || !ib) throw StructureError("unknown attribute in pair_witnesses");
                m.witnesses.emplace_back(*ia, *ib);
            }
        }
        a.mvds.push_back(std::move(m));
    }
    return a;
}

json schema_report_to_json(const SchemaReport& report, const JoinTree& tree,
                           const std::vector<Mvd>& support,
                           const std::vector<std::string>& names, bool pareto_flag,
                           bool include_pareto_flag) {
    json obj;
    obj["schema_id"] = report.schema_id;
    json rels = json::array();
    for (AttributeSet r : report.relations) rels.push_back(attribute_set_to_json(r, names));
    obj["relations"] = std::move(rels);
    json edges = json::array();
    for (auto [a, b] : tree.edges) edges.push_back(json::array({a, b}));
    obj["tree_edges"] = std::move(edges);
    obj["j_bits"] = report.j_bits;
    if (report.spurious_count <= static_cast<unsigned __int128>(UINT64_MAX))
        obj["spurious_count"] = static_cast<std::uint64_t>(report.spurious_count);
    else
        obj["spurious_count"] = u128_to_string(report.spurious_count);
    obj["spurious_pct"] = report.spurious_pct;
    obj["cell_savings_pct"] = report.cell_savings_pct;
    obj["relation_count"] = report.relation_count;
    obj["width"] = report.width;
    obj["int_width"] = report.int_width;
    json sup = json::array();
    for (const Mvd& m : support) sup.push_back(mvd_to_json(m, names));
    obj["support"] = std::move(sup);
    if (include_pareto_flag) obj["pareto"] = pareto_flag;
    return obj;
}

std::string to_stable_string(const json& j) {
    // nlohmann prints doubles with shortest round-trip representation and
    // objects with sorted keys; both are deterministic.
    return j.dump();
}

}  // namespace unjoin

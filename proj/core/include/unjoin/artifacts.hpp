#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "unjoin/metrics.hpp"
#include "unjoin/miner.hpp"
#include "unjoin/mvd.hpp"
#include "unjoin/relation.hpp"
#include "unjoin/schema_synth.hpp"

namespace unjoin {

/// FNV-1a over the raw file bytes, rendered as 16 hex digits. Embedded in
/// artifacts so mining output cannot silently be combined with a different
/// input file.
std::string file_checksum(const std::string& path);

nlohmann::json attribute_set_to_json(AttributeSet s, const std::vector<std::string>& names);
AttributeSet attribute_set_from_json(const nlohmann::json& arr, const Relation& rel);

nlohmann::json mvd_to_json(const Mvd& mvd, const std::vector<std::string>& names);
Mvd mvd_from_json(const nlohmann::json& obj, const Relation& rel);

struct MvdsArtifact {
    std::string input_path;
    std::string input_checksum;
    int attribute_count = 0;
    std::uint64_t row_count = 0;
    double epsilon = 0.0;
    int block_size = 0;
    bool dedup = true;
    bool truncated = false;
    std::vector<std::string> attribute_names;
    std::vector<MinedMvd> mvds;
    /// Milliseconds of wall time; negative means "not recorded" (the
    /// default, keeping artifacts byte-identical across runs).
    long long wall_ms = -1;
};

nlohmann::json mvds_artifact_to_json(const MvdsArtifact& a);
MvdsArtifact mvds_artifact_from_json(const nlohmann::json& j, const Relation& rel);

/// One line of schemes.jsonl / an evaluation report.
nlohmann::json schema_report_to_json(const SchemaReport& report, const JoinTree& tree,
                                     const std::vector<Mvd>& support,
                                     const std::vector<std::string>& names,
                                     bool pareto_flag, bool include_pareto_flag);

/// Serializes a JSON value with a fixed, locale-independent float format so
/// repeated runs produce byte-identical artifacts.
std::string to_stable_string(const nlohmann::json& j);

}  // namespace unjoin

#include "unjoin/relation.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "unjoin/csv.hpp"
#include "unjoin/errors.hpp"

namespace unjoin {

namespace {

struct RowHash {
    std::size_t operator()(const std::vector<std::string>* row) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over all fields
        for (const auto& f : *row) {
            for (char c : f) {
                h ^= static_cast<unsigned char>(c);
                h *= 1099511628211ULL;
            }
            h ^= 0xff;  // field separator
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};
struct RowEq {
    bool operator()(const std::vector<std::string>* a,
                    const std::vector<std::string>* b) const noexcept {
        return *a == *b;
    }
};

}  // namespace

Relation Relation::load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open file: " + path);
    CsvReader reader(in, options.delimiter);

    std::vector<std::string> names;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> record;

    if (options.has_header) {
        if (!reader.next_record(record))
            throw CsvError(path + ": empty file");
        names = record;
    }
    while (reader.next_record(record)) {
        if (!names.empty() && record.size() != names.size())
            throw CsvError(path + ": ragged row " + std::to_string(rows.size() + 1) +
                           " (expected " + std::to_string(names.size()) + " fields, got " +
                           std::to_string(record.size()) + ")");
        if (!rows.empty() && record.size() != rows.front().size())
            throw CsvError(path + ": ragged row " + std::to_string(rows.size() + 1));
        rows.push_back(record);
    }
    if (rows.empty()) throw CsvError(path + ": zero data rows");
    if (names.empty()) {
        names.resize(rows.front().size());
        for (std::size_t i = 0; i < names.size(); ++i)
            names[i] = "col" + std::to_string(i);
    }
    if (names.size() == 1 && names[0].empty() && rows.front().size() == 1 &&
        rows.front()[0].empty())
        throw CsvError(path + ": zero columns");
    if (names.size() > AttributeSet::kMaxAttributes)
        throw CsvError(path + ": too many columns (limit " +
                       std::to_string(AttributeSet::kMaxAttributes) + ")");
    return encode(std::move(names), std::move(rows), options.null_token, options.dedup);
}

Relation Relation::from_rows(std::vector<std::string> attribute_names,
                             const std::vector<std::vector<std::string>>& rows,
                             bool dedup) {
    if (attribute_names.empty()) throw CsvError("zero columns");
    if (rows.empty()) throw CsvError("zero data rows");
    if (attribute_names.size() > AttributeSet::kMaxAttributes)
        throw CsvError("too many columns");
    for (const auto& r : rows)
        if (r.size() != attribute_names.size()) throw CsvError("ragged row");
    auto copy = rows;
    return encode(std::move(attribute_names), std::move(copy), "", dedup);
}

Relation Relation::encode(std::vector<std::string> names,
                          std::vector<std::vector<std::string>>&& rows,
                          const std::string& null_token, bool dedup) {
    // Null tokens become an ordinary distinct value; mapping them to one
    // canonical spelling per column is enough since comparison is by code.
    if (!null_token.empty()) {
        for (auto& row : rows)
            for (auto& field : row)
                if (field == null_token) field.clear();
    }

    std::vector<const std::vector<std::string>*> kept;
    kept.reserve(rows.size());
    if (dedup) {
        std::unordered_set<const std::vector<std::string>*, RowHash, RowEq> seen;
        seen.reserve(rows.size() * 2);
        for (const auto& row : rows)
            if (seen.insert(&row).second) kept.push_back(&row);
    } else {
        for (const auto& row : rows) kept.push_back(&row);
    }

    Relation rel;
    rel.names_ = std::move(names);
    rel.row_count_ = kept.size();
    const std::size_t n = rel.names_.size();
    rel.columns_.assign(n, {});
    rel.dictionaries_.assign(n, {});
    rel.domain_sizes_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        auto& col = rel.columns_[a];
        auto& dict = rel.dictionaries_[a];
        col.reserve(kept.size());
        std::unordered_map<std::string, std::uint32_t> codes;
        for (const auto* row : kept) {
            const std::string& v = (*row)[a];
            auto [it, inserted] = codes.emplace(v, static_cast<std::uint32_t>(dict.size()));
            if (inserted) dict.push_back(v);
            col.push_back(it->second);
        }
        rel.domain_sizes_[a] = static_cast<std::uint32_t>(dict.size());
    }
    return rel;
}

std::optional<int> Relation::attribute_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<std::uint32_t> Relation::row_projection(std::uint64_t row,
                                                    AttributeSet attrs) const {
    std::vector<std::uint32_t> key;
    key.reserve(static_cast<std::size_t>(attrs.size()));
    for (int a : attrs.indices()) key.push_back(code(row, a));
    return key;
}

std::map<std::vector<std::uint32_t>, std::uint64_t>
Relation::project_counts(AttributeSet attrs) const {
    if (!all_attributes().is_superset_of(attrs))
        throw StructureError("projection uses attribute indices outside the relation");
    std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
    for (std::uint64_t r = 0; r < row_count_; ++r)
        ++counts[row_projection(r, attrs)];
    return counts;
}

std::uint64_t Relation::distinct_count(AttributeSet attrs) const {
    if (attrs.empty()) return row_count_ == 0 ? 0 : 1;
    if (attrs.size() == 1) return domain_size(attrs.lowest());
    return project_counts(attrs).size();
}

}  // namespace unjoin

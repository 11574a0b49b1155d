#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unjoin/attribute_set.hpp"

namespace unjoin {

struct CsvOptions {
    bool has_header = true;
    char delimiter = ',';
    /// Fields equal to this token become one dedicated per-column value.
    std::string null_token;
    /// Drop duplicate rows, keeping first occurrences. With distinct rows the
    /// empirical distribution is uniform and H of the full attribute set is
    /// exactly log2 of the row count.
    bool dedup = true;
};

/// An immutable, dictionary-encoded table. Each column stores dense integer
/// codes assigned in first-occurrence order; row ids are 0..N-1 in file
/// order. Values are compared byte-for-byte; no type inference.
class Relation {
public:
    /// Loads a CSV file. Throws CsvError on I/O failure, ragged rows, zero
    /// columns, zero data rows, or more than 64 columns.
    static Relation load_csv(const std::string& path, const CsvOptions& options = {});

    /// Builds a relation from in-memory string rows (used by tests and
    /// generators). Same encoding rules as load_csv.
    static Relation from_rows(std::vector<std::string> attribute_names,
                              const std::vector<std::vector<std::string>>& rows,
                              bool dedup = true);

    int attribute_count() const { return static_cast<int>(names_.size()); }
    std::uint64_t row_count() const { return row_count_; }
    const std::vector<std::string>& attribute_names() const { return names_; }
    const std::string& attribute_name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    std::optional<int> attribute_index(const std::string& name) const;
    AttributeSet all_attributes() const { return AttributeSet::universe(attribute_count()); }

    std::uint32_t code(std::uint64_t row, int attr) const {
        return columns_[static_cast<std::size_t>(attr)][row];
    }
    const std::vector<std::uint32_t>& column(int attr) const {
        return columns_[static_cast<std::size_t>(attr)];
    }
    /// Number of distinct values in a column.
    std::uint32_t domain_size(int attr) const {
        return domain_sizes_[static_cast<std::size_t>(attr)];
    }
    /// Original string for a value code (dictionary lookup).
    const std::string& value(int attr, std::uint32_t code) const {
        return dictionaries_[static_cast<std::size_t>(attr)][code];
    }

    /// Group-by counts over a projection: map from projected code tuple (in
    /// ascending attribute order) to its frequency. The empty set yields a
    /// single group of size N. Throws StructureError if attrs has indices
    /// >= attribute_count().
    std::map<std::vector<std::uint32_t>, std::uint64_t>
    project_counts(AttributeSet attrs) const;

    /// Number of distinct tuples in the projection onto attrs.
    std::uint64_t distinct_count(AttributeSet attrs) const;

    /// Projected code tuple of one row, ascending attribute order.
    std::vector<std::uint32_t> row_projection(std::uint64_t row, AttributeSet attrs) const;

private:
    Relation() = default;
    static Relation encode(std::vector<std::string> names,
                           std::vector<std::vector<std::string>>&& rows,
                           const std::string& null_token, bool dedup);

    std::vector<std::string> names_;
    std::vector<std::vector<std::uint32_t>> columns_;   // [attr][row]
    std::vector<std::vector<std::string>> dictionaries_;  // [attr][code] -> value
    std::vector<std::uint32_t> domain_sizes_;
    std::uint64_t row_count_ = 0;
};

}  // namespace unjoin

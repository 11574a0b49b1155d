#pragma once

#include <istream>
#include <string>
#include <vector>

namespace unjoin {

/// RFC-4180 style reader: quoted fields may contain the delimiter, newlines
/// and doubled quotes. Accepts LF and CRLF line endings. The delimiter is
/// configurable; everything is treated as opaque UTF-8 bytes.
class CsvReader {
public:
    explicit CsvReader(std::istream& in, char delimiter = ',');

    /// Reads the next record into `fields`. Returns false at end of input.
    /// Throws CsvError on a malformed quoted field.
    bool next_record(std::vector<std::string>& fields);

private:
    std::istream& in_;
    char delimiter_;
};

}  // namespace unjoin

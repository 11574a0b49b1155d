#include "unjoin/csv.hpp"

#include "unjoin/errors.hpp"

namespace unjoin {

CsvReader::CsvReader(std::istream& in, char delimiter)
    : in_(in), delimiter_(delimiter) {}

bool CsvReader::next_record(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == std::istream::traits_type::eof()) return false;

    std::string field;
    bool in_quotes = false;
    bool quoted_field = false;
    while (true) {
        if (c == std::istream::traits_type::eof()) {
            if (in_quotes) throw CsvError("unterminated quoted field");
            fields.push_back(std::move(field));
            return true;
        }
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                int peek = in_.peek();
                if (peek == '"') {
                    in_.get();
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"' && field.empty() && !quoted_field) {
            in_quotes = true;
            quoted_field = true;
        } else if (ch == delimiter_) {
            fields.push_back(std::move(field));
            field.clear();
            quoted_field = false;
        } else if (ch == '\n') {
            fields.push_back(std::move(field));
            return true;
        } else if (ch == '\r') {
            if (in_.peek() == '\n') in_.get();
            fields.push_back(std::move(field));
            return true;
        } else {
            // Bytes after a closing quote are kept verbatim (lenient mode).
            field += ch;
        }
        c = in_.get();
    }
}

}  // namespace unjoin

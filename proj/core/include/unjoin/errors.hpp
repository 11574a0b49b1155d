#pragma once

#include <stdexcept>
#include <string>

namespace unjoin {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV ingestion failures: unreadable file, ragged rows, empty input.
struct CsvError : Error {
    using Error::Error;
};

/// Entropy oracle construction/usage failures (bad block size, memory budget).
struct OracleError : Error {
    using Error::Error;
};

/// Malformed MVDs, join trees, or schemas.
struct StructureError : Error {
    using Error::Error;
};

/// A set of MVDs handed to schema synthesis is not pairwise combinable.
struct IncompatibleMvdsError : StructureError {
    using StructureError::StructureError;
};

/// Exact join-size counting exceeded 128-bit integer range.
struct JoinCountOverflow : Error {
    using Error::Error;
};

}  // namespace unjoin

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace peerbench {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A required field is missing or has the wrong JSON type.
class SchemaError : public Error {
public:
    using Error::Error;
};

// A numeric field is outside its declared range.
class RangeError : public Error {
public:
    using Error::Error;
};

// (venue, year, raw rating) has no entry in the rating map.
class MappingError : public Error {
public:
    using Error::Error;
};

// Caller violated a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Provider transport failed after bounded retries.
class GatewayError : public Error {
public:
    using Error::Error;
};

// Offline mode and the request is not in the cache.
class CacheMissError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

// Judge output stayed malformed after the one repair round-trip.
// Carries the raw text for postmortem.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string raw)
        : Error(what), raw_text(std::move(raw)) {}
    std::string raw_text;
};

// Judge returned a category label outside the 8-label set.
class TaxonomyError : public Error {
public:
    using Error::Error;
};

// Text is below the configured minimum token count.
class LengthError : public Error {
public:
    using Error::Error;
};

// Tokenization produced no tokens.
class EmptyDocumentError : public Error {
public:
    using Error::Error;
};

// A metric has no defined value on this input (e.g. zero variance).
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

}  // namespace peerbench

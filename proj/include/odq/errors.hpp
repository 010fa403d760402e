#pragma once

#include <stdexcept>
#include <string>

namespace odq {

/// Base class for every error raised by the assessment engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document (standard spec, alias map, manifest, dataset).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally well-formed input that violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Format is scoreable but has no ingestion path (PDF, TXT, XLS, RDF, Unknown).
class UnsupportedFormatError : public Error {
public:
    using Error::Error;
};

/// Two co-occurring dataset paths were aliased onto the same standard path.
class AliasCollisionError : public Error {
public:
    using Error::Error;
};

/// Local weight derivation was asked for an empty feature set.
class EmptyFeatureSetError : public Error {
public:
    using Error::Error;
};

/// A column with zero value slots cannot be profiled.
class EmptyColumnError : public Error {
public:
    using Error::Error;
};

/// Value-level dimensions are undefined for datasets without records.
class EmptyDatasetError : public Error {
public:
    using Error::Error;
};

/// A remote or local source could not be retrieved.
class FetchError : public Error {
public:
    using Error::Error;
};

} // namespace odq

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace soldesc {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    using Error::Error;
};

// --- AST ingestion ---

struct MalformedJson : Error {
    using Error::Error;
};

struct MissingNodeType : Error {
    using Error::Error;
};

struct MalformedSrc : Error {
    using Error::Error;
};

struct NotSourceUnit : Error {
    using Error::Error;
};

struct MissingCoreAttribute : Error {
    MissingCoreAttribute(std::int64_t node_id, const std::string& attribute)
        : Error("node " + std::to_string(node_id) + ": missing core attribute '" + attribute + "'"),
          node_id(node_id),
          attribute(attribute) {}

    std::int64_t node_id;
    std::string attribute;
};

// --- Lexicon ---

struct DuplicateWord : Error {
    using Error::Error;
};

struct UnknownTag : Error {
    using Error::Error;
};

// --- Grammar / PCFG ---

struct UnknownSymbol : Error {
    using Error::Error;
};

struct NoStartSymbol : Error {
    using Error::Error;
};

struct EmptyTreebank : Error {
    using Error::Error;
};

struct ForeignSymbol : Error {
    using Error::Error;
};

/// The token sequence is not generable from the start symbol.
struct NoDerivation : Error {
    using Error::Error;
};

// --- Templates ---

struct ArityMismatch : Error {
    using Error::Error;
};

// --- Metrics ---

struct LengthMismatch : Error {
    using Error::Error;
};

struct EmptyCorpus : Error {
    using Error::Error;
};

struct EmptySentence : Error {
    using Error::Error;
};

struct EmptyBins : Error {
    using Error::Error;
};

// --- CLI / pipeline ---

struct CompilerUnavailable : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace soldesc

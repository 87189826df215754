#pragma once

#include <stdexcept>
#include <string>

namespace skelgraph {

// File could not be opened, read, or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bytes do not match the expected serialized format.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid operation parameter.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Caller violated an operation contract.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// Graph does not admit the requested computation.
struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degenerate or insufficient data for a statistical computation.
struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Manifest rows malformed or not covering the inputs.
struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace skelgraph

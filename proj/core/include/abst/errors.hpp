#ifndef ABST_ERRORS_HPP
#define ABST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abst {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed value or contract breach (length mismatch, zero binomial where
/// a nonzero one is required, ...).
class structural_error : public error {
public:
    using error::error;
};

/// Input file or literal could not be parsed.
class parse_error : public error {
public:
    using error::error;
};

/// Semantic failure detected at run time: step caps exceeded, presentation
/// does not define a finite p-group, invalid module specification, ...
class diagnostic_error : public error {
public:
    using error::error;
};

}  // namespace abst

#endif

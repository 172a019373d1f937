#pragma once

#include <stdexcept>
#include <string>

namespace gnum {

/// A mathematical precondition does not hold (e.g. balls not nested, a
/// point not strictly interior). Distinct from parse/IO failures so the
/// CLI can map the two to different exit codes.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A post-condition verification failed; carries the first violating
/// (stage, index) pair when known (0 = not applicable).
struct verification_error : std::runtime_error {
    long stage;
    long index;
    verification_error(const std::string& what, long stage_ = 0, long index_ = 0)
        : std::runtime_error(what), stage(stage_), index(index_) {}
};

/// The operation's restricted input class does not cover this value
/// (e.g. a scaling net outside the eventually-piecewise-monomial class).
struct unsupported_shape_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gnum

#pragma once

#include <stdexcept>

namespace hvc {

// Malformed or truncated file content (PGM, HVCF, manifest, scheme files).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hvc

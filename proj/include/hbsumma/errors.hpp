#pragma once

#include <stdexcept>
#include <string>

namespace hbsumma {

// Thrown when a numerical guarantee cannot be met: a tail bound is not
// certifiable, a quadrature fails to reach its tolerance, a factorization
// does not validate. Distinct from std::invalid_argument (precondition
// violations) so the CLI can map them to different exit codes.
class certification_error : public std::runtime_error {
public:
    explicit certification_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hbsumma

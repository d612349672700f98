// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsep {

/// Raised when a request would exceed a documented memory/size limit.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::size_t limit)
        : std::runtime_error(what), limit_(limit) {}

    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

/// A disturbance model produced a symbol outside its declared alphabet.
class ModelContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace qsep

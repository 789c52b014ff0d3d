#pragma once

#include <stdexcept>
#include <string>

namespace bqc {

// Engine-level misuse: bad indices, dead handles, non-product removal, ...
struct SimError : std::runtime_error {
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bqc

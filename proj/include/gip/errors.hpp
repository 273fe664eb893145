#pragma once

#include <stdexcept>
#include <string>

namespace gip {

struct GridMismatch : std::invalid_argument {
    explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NotAContraction : std::domain_error {
    explicit NotAContraction(const std::string& what) : std::domain_error(what) {}
};

struct BetaOutOfRange : std::domain_error {
    explicit BetaOutOfRange(const std::string& what) : std::domain_error(what) {}
};

struct NonOrthonormalBasis : std::invalid_argument {
    explicit NonOrthonormalBasis(const std::string& what) : std::invalid_argument(what) {}
};

struct StartOutsideDomain : std::domain_error {
    explicit StartOutsideDomain(const std::string& what) : std::domain_error(what) {}
};

struct SchemeUnstable : std::runtime_error {
    explicit SchemeUnstable(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gip

#pragma once

#include "mf/basic_data.hpp"

namespace mf {

class GeneratorError : public std::runtime_error {
  public:
    explicit GeneratorError(const std::string& what) : std::runtime_error(what) {}
};

/// Built-in example theories. Names: "trivial", "abelian-K" (2 <= K <= 8),
/// "fibonacci". Every generated document passes the full relation and
/// reconstruction suites; failure to converge throws GeneratorError.
BasicData generate_theory(const std::string& name);

}  // namespace mf

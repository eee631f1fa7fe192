#pragma once

#include <stdexcept>
#include <string>

namespace ssheaf {

/// Domain error with a stable machine-readable kind tag.
class Error : public std::runtime_error {
  public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
};

inline Error dimensionMismatch(const std::string& what) {
    return Error("DimensionMismatch", what);
}

}  // namespace ssheaf

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace slotsim {

// Base for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid scenario / configuration. Carries every problem found, not just the
// first, so a user can fix a file in one pass.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> errors)
      : Error(join(errors)), errors_(std::move(errors)) {}
  explicit ConfigError(const std::string& one) : ConfigError(std::vector<std::string>{one}) {}

  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errs) {
    std::string out = "configuration invalid:";
    for (const auto& e : errs) {
      out += "\n  - ";
      out += e;
    }
    return out;
  }
  std::vector<std::string> errors_;
};

}  // namespace slotsim

#pragma once
#include <stdexcept>
#include <string>

namespace fbmjump {

// Thrown when an input value breaks a documented precondition.
class invalid_input : public std::invalid_argument {
public:
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a parameter leaves the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Requested feature combination has no implemented evaluation route.
class unsupported_error : public std::runtime_error {
public:
  explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

// A time-stepping scheme produced a non-finite value.
class divergence_error : public std::runtime_error {
public:
  divergence_error(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_index(step) {}
  std::size_t step_index;
};

// The monotone approximation ledger was violated beyond tolerance.
class scheme_violation_error : public std::runtime_error {
public:
  explicit scheme_violation_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fbmjump

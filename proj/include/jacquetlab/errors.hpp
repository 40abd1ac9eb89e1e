#pragma once

#include <stdexcept>
#include <string>

namespace jacquetlab {

// Typed failure conditions surfaced by the engine. The CLI maps these onto
// its exit-code contract; library users catch them individually.

struct IncompleteSpectrum : std::runtime_error {
  explicit IncompleteSpectrum(const std::string& what) : std::runtime_error(what) {}
};

struct NotNilpotentOnSubspace : std::runtime_error {
  explicit NotNilpotentOnSubspace(const std::string& what) : std::runtime_error(what) {}
};

struct NoStabilization : std::runtime_error {
  explicit NoStabilization(const std::string& what) : std::runtime_error(what) {}
};

struct NonScalar : std::runtime_error {
  explicit NonScalar(const std::string& what) : std::runtime_error(what) {}
};

struct NoReducibility : std::runtime_error {
  explicit NoReducibility(const std::string& what) : std::runtime_error(what) {}
};

struct NotInCandidateSet : std::runtime_error {
  explicit NotInCandidateSet(const std::string& what) : std::runtime_error(what) {}
};

struct RangeExceeded : std::runtime_error {
  explicit RangeExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jacquetlab

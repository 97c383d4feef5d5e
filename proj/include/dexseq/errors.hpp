#pragma once

#include <stdexcept>
#include <string>

namespace dexseq {

// Invalid configuration: dimension mismatches, empty registries, unknown kinds.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid runtime input: non-finite values, out-of-range samples.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown identifiers: body ids, trajectory ids, empty datasets.
class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation called in a state that does not satisfy its precondition.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Terminal-state collection produced no successful episodes.
class EmptyBufferError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset collection hit its attempt cap before reaching the requested size.
class PartialDatasetError : public std::runtime_error {
 public:
  PartialDatasetError(int requested, int collected, int attempts)
      : std::runtime_error("dataset: collected " + std::to_string(collected) + " of " +
                           std::to_string(requested) + " trajectories in " +
                           std::to_string(attempts) + " attempts (short by " +
                           std::to_string(requested - collected) + ")"),
        requested_(requested),
        collected_(collected) {}
  int requested() const { return requested_; }
  int collected() const { return collected_; }
  int shortfall() const { return requested_ - collected_; }

 private:
  int requested_;
  int collected_;
};

// Schema violations while loading a run config; `path` names the offending key.
class SchemaError : public ConfigError {
 public:
  SchemaError(std::string path, const std::string& what)
      : ConfigError(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace dexseq

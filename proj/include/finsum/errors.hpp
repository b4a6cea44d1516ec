#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finsum {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable files, unwritable output directories.
struct IoError : Error {
  using Error::Error;
};

// A corpus source that yielded zero parseable records.
struct EmptyCorpusError : IoError {
  using IoError::IoError;
};

// Bad configuration: unknown backend ids, duplicate registrations, malformed
// config files or pattern tables.
struct ConfigError : Error {
  using Error::Error;
};

// Remote call failed after retries. Carries the sample id so a pipeline run
// can record the sample as absent and keep going.
struct TransportError : Error {
  TransportError(const std::string& message, std::string id)
      : Error(message), sample_id(std::move(id)) {}
  std::string sample_id;
};

// An embedding provider could not resolve a token sequence.
struct ProviderError : Error {
  using Error::Error;
};

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace finsum

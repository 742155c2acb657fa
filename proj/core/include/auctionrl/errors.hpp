#ifndef AUCTIONRL_ERRORS_HPP
#define AUCTIONRL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace auctionrl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileNotFoundError : Error {
  explicit FileNotFoundError(const std::string& path)
      : Error("file not found: " + path), path(path) {}
  std::string path;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason),
        line(line),
        reason(reason) {}
  std::size_t line;
  std::string reason;
};

struct GapError : Error {
  explicit GapError(const std::string& first_missing)
      : Error("missing hour: " + first_missing), first_missing(first_missing) {}
  std::string first_missing;
};

struct DuplicateError : Error {
  explicit DuplicateError(const std::string& timestamp)
      : Error("duplicate hour: " + timestamp), timestamp(timestamp) {}
  std::string timestamp;
};

struct OutOfRangeError : Error {
  using Error::Error;
};

struct InsufficientDataError : Error {
  using Error::Error;
};

struct ShapeMismatchError : Error {
  using Error::Error;
};

struct BadArchitectureError : Error {
  using Error::Error;
};

struct EpisodeFinishedError : Error {
  EpisodeFinishedError() : Error("step called on a finished episode") {}
};

struct NotEnoughSamplesError : Error {
  using Error::Error;
};

struct CheckpointError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace auctionrl

#endif

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace socioplex {

// Base of every error raised by the library. The CLI prints what() verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(std::string id);

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class EmptyAgentSet : public Error {
 public:
  using Error::Error;
};

class CombinatorialBlowup : public Error {
 public:
  CombinatorialBlowup(std::size_t cap, int max_dim);

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class MissingFace : public Error {
 public:
  using Error::Error;
};

class NotACycleInterval : public Error {
 public:
  using Error::Error;
};

}  // namespace socioplex

#pragma once

#include <stdexcept>
#include <string>

namespace agpar {

enum class ErrorKind {
  InvalidArgument,  // bad indices, malformed call
  Parse,            // table file or identity text is malformed
  Domain,           // table lacks the structure the operation needs
  Limit,            // bound exceeded without force
  Io,               // file access
  Internal,         // invariant violated; report loudly, never mask
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace agpar

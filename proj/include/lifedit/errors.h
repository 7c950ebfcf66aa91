#ifndef LIFEDIT_ERRORS_H_
#define LIFEDIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lifedit {

// Violated precondition or inconsistent caller-supplied data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable file, malformed file contents, or failed write.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values or singular systems encountered during computation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes a warning line to stderr.
void log_warning(const std::string& message);

}  // namespace lifedit

#endif  // LIFEDIT_ERRORS_H_

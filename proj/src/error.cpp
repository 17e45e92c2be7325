#include "morphotag/error.h"

namespace morphotag {

std::string FormatError::decorate(const std::string& what, std::size_t line, const std::string& source) {
  std::string out;
  if (!source.empty()) out += source;
  if (line > 0) {
    if (!source.empty()) out += ':';
    else out += "line ";
    out += std::to_string(line);
  }
  if (!out.empty()) out += ": ";
  return out + what;
}

FormatError FormatError::with_source(const std::string& source) const {
  return FormatError(message_, line_, source);
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::format:
    case ErrorKind::data:
    case ErrorKind::schema:
      return 2;
    case ErrorKind::config:
    case ErrorKind::argument:
      return 3;
    case ErrorKind::internal:
      return 4;
  }
  return 4;
}

}  // namespace morphotag

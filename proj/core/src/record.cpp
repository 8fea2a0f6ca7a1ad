#include "delcheck/record.hpp"

#include <stdexcept>

namespace delcheck {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "TRUE";
    case Verdict::False:
      return "FALSE";
    case Verdict::Unknown:
      return "UNKNOWN";
  }
  throw std::logic_error("unhandled verdict");
}

}  // namespace delcheck

#pragma once

#include <string>

namespace rqft {

enum class Verdict { verified, vacuous, failed, no_certificate };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::vacuous: return "vacuous";
    case Verdict::failed: return "failed";
    case Verdict::no_certificate: return "no-certificate";
  }
  return "failed";
}

}  // namespace rqft

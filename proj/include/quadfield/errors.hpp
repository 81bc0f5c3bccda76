#pragma once

#include <stdexcept>
#include <string>

namespace quadfield {

/// A computation would exceed a configured resource cap (factoring budget,
/// form-enumeration discriminant cap, expansion length guard).  Distinct
/// from failure: the answer is "unknown at this budget", not "no".
class cap_exceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Exact computation contradicts a verification that is expected to
/// succeed (a certified theorem instance).  Mapped to exit code 1 by the
/// CLI; seeing this on a legitimate family member means a genuine bug.
class verification_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The continued-fraction representability criterion only applies for
/// 0 < |N| < sqrt(m); other inputs are rejected with this distinct type.
class criterion_inapplicable : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace quadfield

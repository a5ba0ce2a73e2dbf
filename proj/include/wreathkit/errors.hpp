#pragma once

#include <stdexcept>
#include <string>

namespace wreathkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WREATHKIT_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

WREATHKIT_DEFINE_ERROR(OutOfRange);
WREATHKIT_DEFINE_ERROR(InvalidGroup);
WREATHKIT_DEFINE_ERROR(NotASubgroup);
WREATHKIT_DEFINE_ERROR(NotHomomorphism);
WREATHKIT_DEFINE_ERROR(ImageNotInA2);

// A translated support left the declared window; the caller must widen it.
WREATHKIT_DEFINE_ERROR(WindowEscape);
WREATHKIT_DEFINE_ERROR(LevelExhausted);
WREATHKIT_DEFINE_ERROR(LevelCapExceeded);

WREATHKIT_DEFINE_ERROR(MemoryBudgetExceeded);
WREATHKIT_DEFINE_ERROR(TableTooShort);
WREATHKIT_DEFINE_ERROR(SizeBudgetExceeded);

WREATHKIT_DEFINE_ERROR(InvalidWalling);
WREATHKIT_DEFINE_ERROR(AsymmetricInput);

WREATHKIT_DEFINE_ERROR(TailUndetermined);
WREATHKIT_DEFINE_ERROR(CommensurationViolated);

WREATHKIT_DEFINE_ERROR(MissingOracle);

WREATHKIT_DEFINE_ERROR(InfiniteEntry);
WREATHKIT_DEFINE_ERROR(InvalidCoxeterMatrix);
WREATHKIT_DEFINE_ERROR(OracleUnstable);

WREATHKIT_DEFINE_ERROR(IOError);

#undef WREATHKIT_DEFINE_ERROR

/// Instance-file validation failure, located by line and/or field path.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& what, int line = -1)
      : Error(format(field, what, line)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& what, int line) {
    std::string out = "schema error";
    if (line >= 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " in field '" + field + "'";
    return out + ": " + what;
  }

  std::string field_;
  int line_;
};

}  // namespace wreathkit

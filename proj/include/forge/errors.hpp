#pragma once

#include <exception>
#include <string>
#include <utility>
#include <vector>

namespace forge {

// Every failure the library reports carries one of these codes plus a
// human-readable message and optional named integer details (offending
// symbol, position, ...). The CLI serializes them as JSON.
enum class Errc {
  WrongLength,
  BadSymbol,
  BadMultiplicity,
  BadGap,
  ZeroCount,
  BadVertex,
  OrderMismatch,
  EvenOrder,
  NotRotationMember,
  NotLoopDigon,
  NotConsecutive,
  NotInjective,
  VertexReuse,
  MissingArc,
  BadIndex,
  BadResidue,
  TooLarge,
  BadFormat,
  BadArgument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::WrongLength: return "WrongLength";
    case Errc::BadSymbol: return "BadSymbol";
    case Errc::BadMultiplicity: return "BadMultiplicity";
    case Errc::BadGap: return "BadGap";
    case Errc::ZeroCount: return "ZeroCount";
    case Errc::BadVertex: return "BadVertex";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::EvenOrder: return "EvenOrder";
    case Errc::NotRotationMember: return "NotRotationMember";
    case Errc::NotLoopDigon: return "NotLoopDigon";
    case Errc::NotConsecutive: return "NotConsecutive";
    case Errc::NotInjective: return "NotInjective";
    case Errc::VertexReuse: return "VertexReuse";
    case Errc::MissingArc: return "MissingArc";
    case Errc::BadIndex: return "BadIndex";
    case Errc::BadResidue: return "BadResidue";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadFormat: return "BadFormat";
    case Errc::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

class Error : public std::exception {
 public:
  Error(Errc code, std::string message)
      : code_(code), message_(std::move(message)) {
    what_ = std::string(errc_name(code_)) + ": " + message_;
  }

  Errc code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  const char* what() const noexcept override { return what_.c_str(); }

  // fluent attachment of structured detail, e.g. raise(...).with("symbol", k)
  Error&& with(std::string key, long long value) && {
    detail_.emplace_back(std::move(key), value);
    return std::move(*this);
  }

  const std::vector<std::pair<std::string, long long>>& detail() const noexcept {
    return detail_;
  }

 private:
  Errc code_;
  std::string message_;
  std::string what_;
  std::vector<std::pair<std::string, long long>> detail_;
};

}  // namespace forge

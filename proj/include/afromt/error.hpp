#ifndef AFROMT_ERROR_HPP
#define AFROMT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace afromt {

enum class Errc {
  // registry
  UnknownCode,
  MalformedCode,
  MalformedPair,
  SameLanguage,
  MalformedRegistry,
  // records and corpora
  MalformedJson,
  MissingField,
  ExtraField,
  LineCountMismatch,
  EmptySegment,
  MalformedLine,
  MalformedManifest,
  IoError,
  // builder
  EmptyCorpus,
  DuplicateDirection,
  BadConfig,
  // subword
  AllEmpty,
  BadAlpha,
  EmptySource,
  VocabTooSmall,
  EmptyStream,
  UnknownPiece,
  VersionMismatch,
  ChecksumMismatch,
  MalformedModel,
  // metrics / harness
  LengthMismatch,
  ModelMissing,
  MissingDirection,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownCode: return "UnknownCode";
    case Errc::MalformedCode: return "MalformedCode";
    case Errc::MalformedPair: return "MalformedPair";
    case Errc::SameLanguage: return "SameLanguage";
    case Errc::MalformedRegistry: return "MalformedRegistry";
    case Errc::MalformedJson: return "MalformedJson";
    case Errc::MissingField: return "MissingField";
    case Errc::ExtraField: return "ExtraField";
    case Errc::LineCountMismatch: return "LineCountMismatch";
    case Errc::EmptySegment: return "EmptySegment";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::MalformedManifest: return "MalformedManifest";
    case Errc::IoError: return "IoError";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::DuplicateDirection: return "DuplicateDirection";
    case Errc::BadConfig: return "BadConfig";
    case Errc::AllEmpty: return "AllEmpty";
    case Errc::BadAlpha: return "BadAlpha";
    case Errc::EmptySource: return "EmptySource";
    case Errc::VocabTooSmall: return "VocabTooSmall";
    case Errc::EmptyStream: return "EmptyStream";
    case Errc::UnknownPiece: return "UnknownPiece";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    case Errc::MalformedModel: return "MalformedModel";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ModelMissing: return "ModelMissing";
    case Errc::MissingDirection: return "MissingDirection";
  }
  return "Unknown";
}

/// Every failure in the toolkit is reported as an Error carrying a
/// machine-checkable code and a detail string (offending code, field
/// name, line number, ...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] inline void fail(Errc code, std::string detail) {
  throw Error(code, std::move(detail));
}

}  // namespace afromt

#endif  // AFROMT_ERROR_HPP

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ultratree {

enum class Errc {
  // tree construction / validation
  SelfLoop,
  DuplicateEdge,
  CycleDetected,
  Disconnected,
  MissingLabel,
  NegativeLabel,
  UnknownVertex,
  EmptySet,
  SingletonTree,
  // metric layer
  DegenerateLabeling,
  NonpositiveRadius,
  // generators / truncation
  DegenerateOnTruncation,
  NoInfiniteDegreeVertex,
  NoBranchVertices,
  RayNotDisjoint,
  SequenceMissesComponents,
  WitnessSetsNotGrowing,
  // sequences / analysis
  SequenceLeavesTruncation,
  SequenceRepeats,
  ScheduleStalls,
  FiniteIntersectionAtScale,
  PreconditionMismatch,
  // i/o
  MalformedInput,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::Disconnected: return "Disconnected";
    case Errc::MissingLabel: return "MissingLabel";
    case Errc::NegativeLabel: return "NegativeLabel";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::EmptySet: return "EmptySet";
    case Errc::SingletonTree: return "SingletonTree";
    case Errc::DegenerateLabeling: return "DegenerateLabeling";
    case Errc::NonpositiveRadius: return "NonpositiveRadius";
    case Errc::DegenerateOnTruncation: return "DegenerateOnTruncation";
    case Errc::NoInfiniteDegreeVertex: return "NoInfiniteDegreeVertex";
    case Errc::NoBranchVertices: return "NoBranchVertices";
    case Errc::RayNotDisjoint: return "RayNotDisjoint";
    case Errc::SequenceMissesComponents: return "SequenceMissesComponents";
    case Errc::WitnessSetsNotGrowing: return "WitnessSetsNotGrowing";
    case Errc::SequenceLeavesTruncation: return "SequenceLeavesTruncation";
    case Errc::SequenceRepeats: return "SequenceRepeats";
    case Errc::ScheduleStalls: return "ScheduleStalls";
    case Errc::FiniteIntersectionAtScale: return "FiniteIntersectionAtScale";
    case Errc::PreconditionMismatch: return "PreconditionMismatch";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

// Domain error. `detail` carries the one numeric payload some codes define
// (stall level, max usable horizon); -1 when meaningless.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::int64_t detail = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + std::move(message)),
        code_(code),
        detail_(detail) {}

  Errc code() const { return code_; }
  std::int64_t detail() const { return detail_; }

 private:
  Errc code_;
  std::int64_t detail_;
};

[[noreturn]] inline void fail(Errc code, std::string message, std::int64_t detail = -1) {
  throw Error(code, std::move(message), detail);
}

}  // namespace ultratree

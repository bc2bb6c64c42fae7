#pragma once

namespace torocoh {

enum class Status { certified_holds, certified_fails, evidence_holds, evidence_fails, unknown };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::certified_holds: return "certified_holds";
    case Status::certified_fails: return "certified_fails";
    case Status::evidence_holds: return "evidence_holds";
    case Status::evidence_fails: return "evidence_fails";
    case Status::unknown: return "unknown";
    }
    return "?";
}

inline bool certified(Status s) { return s == Status::certified_holds || s == Status::certified_fails; }

} // namespace torocoh

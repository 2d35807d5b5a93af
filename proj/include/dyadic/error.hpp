#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

enum class errc {
  equal_points,
  out_of_universe,
  shared_coordinate,
  overlapping_projections,
  point_not_in_interval,
  universe_exceeded,
  nested_or_disjoint,
  resource_cap,
  no_gap_found,
  coordinate_collision,
  atom_coincidence,
  bad_input,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::equal_points: return "EqualPoints";
    case errc::out_of_universe: return "OutOfUniverse";
    case errc::shared_coordinate: return "SharedCoordinate";
    case errc::overlapping_projections: return "OverlappingProjections";
    case errc::point_not_in_interval: return "PointNotInInterval";
    case errc::universe_exceeded: return "UniverseExceeded";
    case errc::nested_or_disjoint: return "NestedOrDisjoint";
    case errc::resource_cap: return "ResourceCap";
    case errc::no_gap_found: return "NoGapFound";
    case errc::coordinate_collision: return "CoordinateCollision";
    case errc::atom_coincidence: return "AtomCoincidence";
    case errc::bad_input: return "BadInput";
    case errc::internal: return "Internal";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

inline void require(bool cond, errc c, const std::string& msg) {
  if (!cond) fail(c, msg);
}

}  // namespace dyadic

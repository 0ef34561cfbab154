#pragma once

#include <string>
#include <vector>

#include "shadowsim/analytic.hpp"
#include "shadowsim/integrator.hpp"
#include "shadowsim/kinetics.hpp"
#include "shadowsim/shadow_limit.hpp"

namespace shadowsim {

/// Deterministic data emission: every real is written as decimal with 12
/// significant digits, no timestamps, fixed column order. Re-running the same
/// spec yields byte-identical files.

/// Writes three files and returns their paths:
///   <prefix>_trajectory.csv  t,x,u            (long form, one row per node per sample)
///   <prefix>_scalars.csv     t,xi,mass,max_u
///   <prefix>_report.csv      monitor,t,lhs,rhs,pass
std::vector<std::string> emit_csv(const Trajectory& traj, const RunReport& report,
                                  const SpatialGrid& grid, const std::string& prefix);

std::string emit_steady_csv(const std::vector<SteadyState>& states, const std::string& path);

std::string emit_certificate_csv(const BlowupCertificate& cert, const std::string& path);

std::string emit_limit_csv(const LimitStudy& study, const std::string& path);

/// Shared formatting helper (12 significant digits).
std::string format_csv_real(double v);

}  // namespace shadowsim

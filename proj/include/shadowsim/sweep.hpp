#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shadowsim/runspec.hpp"

namespace shadowsim {

struct SweepRow {
    double value = 0.0;
    std::string status;               // completed | blowup | step-failure | error
    std::optional<double> t_star;     // blowup time when status == blowup
    std::optional<bool> certified;    // blowup certificate verdict (field models)
    std::string steady_11;            // (1,1) kinetic stability (activator-inhibitor)
    std::string error;                // message when status == error
};

/// Run the base spec once per value of the swept parameter (a config key such
/// as "model.tau" or "init.xi0"). Rows execute in parallel on a worker pool
/// bounded by SHADOWSIM_THREADS (hardware concurrency otherwise); individual
/// failures are recorded per row and the sweep continues. The base command
/// must be simulate, kinetics or certify.
std::vector<SweepRow> sweep(const RunSpec& base, const std::string& axis,
                            const std::vector<double>& values);

/// Summary CSV: value,status,t_star,certified,steady_11,error.
std::string emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace shadowsim

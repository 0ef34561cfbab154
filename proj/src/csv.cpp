#include "shadowsim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace shadowsim {

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

void close_or_throw(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

std::string format_csv_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<std::string> emit_csv(const Trajectory& traj, const RunReport& report,
                                  const SpatialGrid& grid, const std::string& prefix) {
    std::vector<std::string> paths;

    const std::string traj_path = prefix + "_trajectory.csv";
    {
        auto out = open_or_throw(traj_path);
        out << "t,x,u\n";
        for (const auto& s : traj.samples) {
            const std::string t = format_csv_real(s.t);
            for (std::size_t i = 0; i < s.u.size(); ++i) {
                out << t << ',' << format_csv_real(grid.nodes[i]) << ','
                    << format_csv_real(s.u[i]) << '\n';
            }
        }
        close_or_throw(out, traj_path);
    }
    paths.push_back(traj_path);

    const std::string scalars_path = prefix + "_scalars.csv";
    {
        auto out = open_or_throw(scalars_path);
        out << "t,xi,mass,max_u\n";
        for (const auto& s : traj.samples) {
            double mass = 0.0, max_u = s.u.empty() ? 0.0 : s.u.front();
            for (std::size_t i = 0; i < s.u.size(); ++i) {
                mass += grid.weights[i] * s.u[i];
                if (s.u[i] > max_u) max_u = s.u[i];
            }
            out << format_csv_real(s.t) << ',' << format_csv_real(s.xi) << ','
                << format_csv_real(mass) << ',' << format_csv_real(max_u) << '\n';
        }
        close_or_throw(out, scalars_path);
    }
    paths.push_back(scalars_path);

    const std::string report_path = prefix + "_report.csv";
    {
        auto out = open_or_throw(report_path);
        out << "monitor,t,lhs,rhs,pass\n";
        for (const auto& rec : report.monitor_log) {
            out << rec.tag << ',' << format_csv_real(rec.t) << ',' << format_csv_real(rec.lhs)
                << ',' << format_csv_real(rec.rhs) << ',' << (rec.pass ? "1" : "0") << '\n';
        }
        close_or_throw(out, report_path);
    }
    paths.push_back(report_path);
    return paths;
}

std::string emit_steady_csv(const std::vector<SteadyState>& states, const std::string& path) {
    auto out = open_or_throw(path);
    out << "u_on,u_off,xi_bar,mask_measure,classification,residual_f,residual_g\n";
    for (const auto& s : states) {
        double measure = 1.0;
        if (s.mask) {
            // measure reported as fraction of nodes; callers with a grid can
            // recompute exactly, uniform grids make these equal
            std::size_t on = 0;
            for (bool b : *s.mask) on += b ? 1 : 0;
            measure = s.mask->empty() ? 0.0 : static_cast<double>(on) / s.mask->size();
        }
        out << format_csv_real(s.u_on) << ',' << format_csv_real(s.u_off) << ','
            << format_csv_real(s.xi_bar) << ',' << format_csv_real(measure) << ','
            << to_string(s.classification) << ',' << format_csv_real(s.residual_f) << ','
            << format_csv_real(s.residual_g) << '\n';
    }
    close_or_throw(out, path);
    return path;
}

std::string emit_certificate_csv(const BlowupCertificate& cert, const std::string& path) {
    auto out = open_or_throw(path);
    out << "hypothesis,lhs,rhs,satisfied\n";
    for (const auto& h : cert.hypotheses) {
        out << h.name << ',' << format_csv_real(h.lhs) << ',' << format_csv_real(h.rhs) << ','
            << (h.satisfied ? "1" : "0") << '\n';
    }
    out << "certificate,,," << (cert.satisfied ? "1" : "0") << '\n';
    if (cert.singular_mass) {
        out << "singular_mass," << format_csv_real(*cert.singular_mass) << ",,\n";
    }
    if (cert.tmax_upper) {
        out << "tmax_upper," << format_csv_real(*cert.tmax_upper) << ",,\n";
    }
    if (cert.lambda_window) {
        out << "lambda_window," << format_csv_real(cert.lambda_window->first) << ','
            << format_csv_real(cert.lambda_window->second) << ",\n";
    }
    close_or_throw(out, path);
    return path;
}

std::string emit_limit_csv(const LimitStudy& study, const std::string& path) {
    auto out = open_or_throw(path);
    out << "D,metric\n";
    for (const auto& row : study.rows) {
        out << format_csv_real(row.D) << ',' << format_csv_real(row.metric) << '\n';
    }
    out << "fitted_exponent," << format_csv_real(study.fitted_exponent) << '\n';
    close_or_throw(out, path);
    return path;
}

}  // namespace shadowsim

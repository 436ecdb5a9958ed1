#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "dirac/bispinor.hpp"
#include "dirac/observables.hpp"

namespace dirac::io {

/// Floats are serialized with 17 significant digits ('.' decimal point,
/// locale independent); identical inputs give byte-identical output.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline void write_array(std::ostream& os, const char* name, const std::vector<double>& v,
                        bool last = false) {
    os << "    \"" << name << "\": [";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << fmt(v[i]);
    }
    os << "]" << (last ? "\n" : ",\n");
}

} // namespace detail

inline void write_meta_json_body(std::ostream& os, const QuantumNumbers& qn, const SpinParams& sp,
                                 const PhysicalConfig& cfg) {
    os << "    \"n_r\": " << qn.n_r << ",\n";
    os << "    \"kappa\": " << qn.kappa << ",\n";
    os << "    \"two_mj\": " << qn.m_j.twice() << ",\n";
    os << "    \"sigma\": " << qn.sigma << ",\n";
    os << "    \"theta\": " << fmt(sp.theta) << ",\n";
    os << "    \"phi\": " << fmt(sp.phi) << ",\n";
    os << "    \"Z\": " << fmt(cfg.Z) << ",\n";
    os << "    \"alpha\": " << fmt(cfg.alpha) << "\n";
}

/// Bispinor field as JSON: a meta block plus flat per-node arrays
/// r, theta, phi, weight, re1/im1 ... re4/im4 in node-index order
/// ((i_r * n_theta + i_theta) * n_phi + i_phi).  r is in r_B/Z units and
/// the component values in (Z/r_B)^{3/2} units.
inline void write_bispinor_field_json(std::ostream& os, const BispinorField& f) {
    const auto& g = f.grid;
    const std::size_t n = g.size();
    std::vector<double> r(n), th(n), ph(n), wt(n);
    std::array<std::vector<double>, 4> re, im;
    for (auto& v : re) v.resize(n);
    for (auto& v : im) v.resize(n);
    for (std::size_t ir = 0; ir < g.r.size(); ++ir)
        for (std::size_t it = 0; it < g.theta.size(); ++it)
            for (std::size_t ip = 0; ip < g.phi.size(); ++ip) {
                const std::size_t idx = g.index(ir, it, ip);
                r[idx] = g.r[ir];
                th[idx] = g.theta[it];
                ph[idx] = g.phi[ip];
                wt[idx] = g.weight(ir, it);
                for (int c = 0; c < 4; ++c) {
                    re[c][idx] = f.samples[idx].c[c].real();
                    im[c][idx] = f.samples[idx].c[c].imag();
                }
            }
    os << "{\n  \"meta\": {\n";
    write_meta_json_body(os, f.qn, f.sp, f.cfg);
    os << "  },\n  \"grid\": {\n";
    os << "    \"n_radial\": " << g.r.size() << ",\n";
    os << "    \"n_theta\": " << g.theta.size() << ",\n";
    os << "    \"n_phi\": " << g.phi.size() << "\n";
    os << "  },\n  \"data\": {\n";
    detail::write_array(os, "r", r);
    detail::write_array(os, "theta", th);
    detail::write_array(os, "phi", ph);
    detail::write_array(os, "weight", wt);
    const char* renames[4] = {"re1", "re2", "re3", "re4"};
    const char* imnames[4] = {"im1", "im2", "im3", "im4"};
    for (int c = 0; c < 4; ++c) {
        detail::write_array(os, renames[c], re[c]);
        detail::write_array(os, imnames[c], im[c], c == 3);
    }
    os << "  }\n}\n";
}

/// Observable metadata mirror of the bispinor meta block, written next to
/// the CSV dump.
inline void write_observable_meta_json(std::ostream& os, const ObservableField& f) {
    os << "{\n  \"meta\": {\n";
    write_meta_json_body(os, f.qn, f.sp, f.cfg);
    os << "  },\n";
    os << "  \"pauli\": " << (f.pauli ? "true" : "false") << ",\n";
    os << "  \"grid\": {\n";
    os << "    \"n_radial\": " << f.grid.r.size() << ",\n";
    os << "    \"n_theta\": " << f.grid.theta.size() << ",\n";
    os << "    \"n_phi\": " << f.grid.phi.size() << "\n";
    os << "  }\n}\n";
}

/// CSV dump: r,theta,phi,w,sx,sy,sz (optionally + sr,stheta).
/// Undefined spin (w ~ 0) is written as nan.
inline void write_observable_csv(std::ostream& os, const ObservableField& f,
                                 bool with_spherical = false) {
    os << "r,theta,phi,w,sx,sy,sz";
    if (with_spherical) os << ",sr,stheta";
    os << "\n";
    const auto& g = f.grid;
    for (std::size_t ir = 0; ir < g.r.size(); ++ir)
        for (std::size_t it = 0; it < g.theta.size(); ++it)
            for (std::size_t ip = 0; ip < g.phi.size(); ++ip) {
                const std::size_t idx = g.index(ir, it, ip);
                const Vec3& s = f.s[idx];
                os << fmt(g.r[ir]) << "," << fmt(g.theta[it]) << "," << fmt(g.phi[ip]) << ","
                   << fmt(f.w[idx]) << "," << fmt(s.x) << "," << fmt(s.y) << "," << fmt(s.z);
                if (with_spherical) {
                    os << "," << fmt(s.dot(e_r(g.theta[it], g.phi[ip]))) << ","
                       << fmt(s.dot(e_theta(g.theta[it], g.phi[ip])));
                }
                os << "\n";
            }
}

/// (z, rho)-plane slice at phi = 0, cell-centered so the origin is never
/// sampled; columns z,rho,w,sx,sy,sz.
inline void write_slice_csv(std::ostream& os, const BoundState& state, bool pauli, double extent,
                            int nodes) {
    os << "z,rho,w,sx,sy,sz\n";
    for (int iz = 0; iz < nodes; ++iz) {
        const double z = -extent + (iz + 0.5) * 2.0 * extent / nodes;
        for (int jr = 0; jr < nodes; ++jr) {
            const double rho = (jr + 0.5) * extent / nodes;
            const double r = std::hypot(z, rho);
            const double th = std::atan2(rho, z);
            double w;
            Vec3 s;
            if (pauli) {
                const SpinorSample p = state.pauli_sample(r, th, 0.0);
                w = std::norm(p.up) + std::norm(p.down);
                s = sigma_expectation(p);
            } else {
                const BispinorSample b = state.sample(r, th, 0.0);
                w = density_of(b);
                s = sigma_expectation(b);
            }
            s = (w > kDensityFloor) ? s * (1.0 / w) : undefined_spin();
            os << fmt(z) << "," << fmt(rho) << "," << fmt(w) << "," << fmt(s.x) << ","
               << fmt(s.y) << "," << fmt(s.z) << "\n";
        }
    }
}

struct SpectrumRow {
    int n = 0;
    int kappa = 0;
    double epsilon = 0.0;
    double binding = 0.0;  // 1 - epsilon, in m c^2 units
    double delta_j = 0.0;
    int level_degeneracy = 0;
};

inline std::vector<SpectrumRow> spectrum_table(const PhysicalConfig& cfg, int n_max) {
    std::vector<SpectrumRow> rows;
    for (int n = 1; n <= n_max; ++n)
        for (int kappa = 1; kappa <= n; ++kappa) {
            const auto fs = fine_structure(n, kappa, cfg.zalpha());
            SpectrumRow r;
            r.n = n;
            r.kappa = kappa;
            r.epsilon = fs.epsilon;
            r.binding = 1.0 - fs.epsilon;
            r.delta_j = fs.delta_j;
            r.level_degeneracy = (kappa == n) ? 2 * n : 4 * kappa;
            rows.push_back(r);
        }
    return rows;
}

inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
    os << "n,kappa,two_j,epsilon,binding,delta_j,level_degeneracy\n";
    for (const auto& r : rows)
        os << r.n << "," << r.kappa << "," << (2 * r.kappa - 1) << "," << fmt(r.epsilon) << ","
           << fmt(r.binding) << "," << fmt(r.delta_j) << "," << r.level_degeneracy << "\n";
}

inline void write_spectrum_json(std::ostream& os, const PhysicalConfig& cfg,
                                const std::vector<SpectrumRow>& rows) {
    os << "{\n  \"Z\": " << fmt(cfg.Z) << ",\n  \"alpha\": " << fmt(cfg.alpha)
       << ",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        os << "    {\"n\": " << r.n << ", \"kappa\": " << r.kappa << ", \"two_j\": "
           << (2 * r.kappa - 1) << ", \"epsilon\": " << fmt(r.epsilon) << ", \"binding\": "
           << fmt(r.binding) << ", \"delta_j\": " << fmt(r.delta_j)
           << ", \"level_degeneracy\": " << r.level_degeneracy << "}"
           << (i + 1 < rows.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
}

} // namespace dirac::io

#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dirac/io.hpp"
#include "dirac/verify.hpp"

namespace dirac::cli {

// exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 I/O failure
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

struct GridSpec {
    int n_radial = 64;
    int n_theta = 32;
    int n_phi = 32;
};

/// "r:theta:phi" node counts, e.g. "64:32:32".
inline GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> g.n_radial >> c1 >> g.n_theta >> c2 >> g.n_phi) || c1 != ':' || c2 != ':' ||
        g.n_radial < 1 || g.n_theta < 1 || g.n_phi < 1)
        throw CLI::ValidationError("--grid expects r:theta:phi node counts, e.g. 64:32:32");
    return g;
}

namespace detail {

/// Write through a callback either to stdout ("-") or to a file.
template <typename Writer>
int write_output(const std::string& path, std::ostream& out, std::ostream& err, Writer&& w) {
    if (path == "-") {
        w(out);
        return kExitOk;
    }
    std::ofstream os(path);
    if (!os) {
        err << "error: cannot open output file: " << path << "\n";
        return kExitIo;
    }
    w(os);
    if (!os.good()) {
        err << "error: write failed: " << path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

struct StateArgs {
    double Z = 1.0;
    double alpha = 7.2973525693e-3;
    int n = 1;
    int kappa = 1;
    int two_mj = 1;
    int sigma = +1;
    double theta = 0.0;
    double phi = 0.0;
    std::string case_tag;

    PhysicalConfig config() const { return {Z, alpha}; }
    QuantumNumbers quantum_numbers() const { return {n - kappa, kappa, HalfInt(two_mj), sigma}; }
    SpinParams spin_params() const {
        if (!case_tag.empty()) return special_case(invariant_case_from_string(case_tag));
        return {theta, phi};
    }
};

inline void add_state_options(CLI::App* cmd, StateArgs& a) {
    cmd->add_option("--Z", a.Z, "nuclear charge number")->capture_default_str();
    cmd->add_option("--alpha", a.alpha, "fine-structure constant")->capture_default_str();
    cmd->add_option("--n", a.n, "principal quantum number (n = n_r + kappa)")->required();
    cmd->add_option("--kappa", a.kappa, "kappa_j = j + 1/2 (positive integer)")->required();
    cmd->add_option("--two-mj", a.two_mj, "2 m_j (odd integer)")->capture_default_str();
    cmd->add_option("--sigma", a.sigma, "invariant eigenvalue sign, +1 or -1")
        ->capture_default_str();
    cmd->add_option("--theta", a.theta, "spin parameter theta")->capture_default_str();
    cmd->add_option("--phi", a.phi, "spin parameter phi")->capture_default_str();
    cmd->add_option("--case", a.case_tag, "named family: darwin, jl or bel (overrides angles)");
}

} // namespace detail

/// Parsed command line; `run` executes and returns the process exit code.
/// All radial I/O is in r_B/Z units.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"Bound states of the Dirac equation with a Coulomb potential: "
                 "spectra, bispinor fields, densities and spin maps, and the "
                 "numerical verification suites. Radial coordinates are in r_B/Z units."};
    app.require_subcommand(1);

    // ---- spectrum
    double sp_Z = 1.0, sp_alpha = 7.2973525693e-3;
    int sp_nmax = 3;
    std::string sp_out = "-", sp_format = "csv";
    auto* c_spec = app.add_subcommand("spectrum", "fine-structure table for n <= n-max");
    c_spec->add_option("--Z", sp_Z, "nuclear charge number")->capture_default_str();
    c_spec->add_option("--alpha", sp_alpha, "fine-structure constant")->capture_default_str();
    c_spec->add_option("--n-max", sp_nmax, "largest principal quantum number")
        ->capture_default_str()
        ->check(CLI::Range(1, 20));
    c_spec->add_option("--out", sp_out, "output path or -")->capture_default_str();
    c_spec->add_option("--format", sp_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- state
    detail::StateArgs st;
    std::string st_grid = "64:32:32", st_out = "-";
    auto* c_state = app.add_subcommand("state", "assemble a bispinor field and dump JSON");
    detail::add_state_options(c_state, st);
    c_state->add_option("--grid", st_grid, "r:theta:phi node counts")->capture_default_str();
    c_state->add_option("--out", st_out, "output path or -")->capture_default_str();

    // ---- field
    detail::StateArgs fl;
    std::string fl_grid = "64:32:32", fl_out = "-";
    bool fl_pauli = false, fl_slice = false, fl_spherical = false;
    double fl_extent = 12.0;
    int fl_nodes = 200;
    auto* c_field = app.add_subcommand(
        "field", "density and spin-orientation dump (CSV + JSON metadata sidecar)");
    detail::add_state_options(c_field, fl);
    c_field->add_option("--grid", fl_grid, "r:theta:phi node counts")->capture_default_str();
    c_field->add_flag("--pauli", fl_pauli, "nonrelativistic (upper spinor) observables");
    c_field->add_flag("--with-angular-basis", fl_spherical, "append sr,stheta columns");
    c_field->add_flag("--slice", fl_slice, "(z, rho) plane slice at phi = 0 instead of a 3d grid");
    c_field->add_option("--slice-extent", fl_extent, "slice half-width, r_B/Z units")
        ->capture_default_str();
    c_field->add_option("--slice-nodes", fl_nodes, "slice nodes per axis")->capture_default_str();
    c_field->add_option("--out", fl_out, "output path or -")->capture_default_str();

    // ---- verify
    VerifyOptions vo;
    std::string vf_out = "-";
    double vf_zalpha = 0.5;
    auto* c_verify = app.add_subcommand("verify", "run the residual suites; exit 1 on failure");
    c_verify->add_option("--n-max", vo.n_max, "largest principal number in state sweeps")
        ->capture_default_str()
        ->check(CLI::Range(1, 4));
    c_verify->add_option("--zalpha", vf_zalpha, "coupling Z*alpha used by the suites")
        ->capture_default_str();
    c_verify->add_flag("--no-oracle", "skip the shooting-oracle suite");
    c_verify->add_option("--out", vf_out, "report path or -")->capture_default_str();
    double vf_fault = 0.0;
    c_verify->add_option("--inject-norm-fault", vf_fault)->group("");  // hidden: test hook

    // ---- oracle
    int or_kmax = 2, or_nrmax = 3;
    std::vector<double> or_za;
    std::string or_out = "-";
    auto* c_oracle = app.add_subcommand(
        "oracle", "shooting-solver spectrum against the closed form; exit 1 on mismatch");
    c_oracle->add_option("--kappa-max", or_kmax, "largest kappa")->capture_default_str();
    c_oracle->add_option("--nr-max", or_nrmax, "largest radial number")->capture_default_str();
    c_oracle->add_option("--zalpha", or_za, "couplings to scan (default 0.0073 0.146 0.584)");
    c_oracle->add_option("--out", or_out, "output path or -")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (*c_spec) {
            const PhysicalConfig cfg{sp_Z, sp_alpha};
            if (!(cfg.zalpha() > 0.0) || cfg.zalpha() >= 1.0) {
                err << "error: Z*alpha = " << io::fmt(cfg.zalpha())
                    << " leaves no kappa = 1 bound states (need 0 < Z*alpha < 1)\n";
                return kExitInvalid;
            }
            const auto rows = io::spectrum_table(cfg, sp_nmax);
            return detail::write_output(sp_out, out, err, [&](std::ostream& os) {
                if (sp_format == "json")
                    io::write_spectrum_json(os, cfg, rows);
                else
                    io::write_spectrum_csv(os, rows);
            });
        }
        if (*c_state) {
            const GridSpec g = parse_grid(st_grid);
            const BoundState state(st.quantum_numbers(), st.spin_params(), st.config());
            const auto field = assemble_field(
                state, make_state_grid(state.radial(), g.n_radial, g.n_theta, g.n_phi));
            return detail::write_output(st_out, out, err, [&](std::ostream& os) {
                io::write_bispinor_field_json(os, field);
            });
        }
        if (*c_field) {
            const BoundState state(fl.quantum_numbers(), fl.spin_params(), fl.config());
            if (fl_slice) {
                return detail::write_output(fl_out, out, err, [&](std::ostream& os) {
                    io::write_slice_csv(os, state, fl_pauli, fl_extent, fl_nodes);
                });
            }
            const GridSpec g = parse_grid(fl_grid);
            const auto of = make_observable_field(
                state, make_state_grid(state.radial(), g.n_radial, g.n_theta, g.n_phi),
                fl_pauli);
            const int rc = detail::write_output(fl_out, out, err, [&](std::ostream& os) {
                io::write_observable_csv(os, of, fl_spherical);
            });
            if (rc != kExitOk) return rc;
            if (fl_out != "-") {
                return detail::write_output(fl_out + ".meta.json", out, err,
                                            [&](std::ostream& os) {
                                                io::write_observable_meta_json(os, of);
                                            });
            }
            return kExitOk;
        }
        if (*c_verify) {
            vo.cfg = PhysicalConfig{1.0, vf_zalpha};
            vo.with_oracle = c_verify->count("--no-oracle") == 0;
            vo.beta_fault = vf_fault;
            if (!(vo.cfg.zalpha() > 0.0) || vo.cfg.zalpha() >= 1.0) {
                err << "error: --zalpha must lie in (0, 1)\n";
                return kExitInvalid;
            }
            const VerifyReport rep = run_verification(vo);
            const int rc = detail::write_output(vf_out, out, err, [&](std::ostream& os) {
                write_report_json(os, rep);
            });
            if (rc != kExitOk) return rc;
            if (!rep.all_pass) {
                err << "verification FAILED\n";
                return kExitVerifyFailed;
            }
            return kExitOk;
        }
        if (*c_oracle) {
            if (or_za.empty()) or_za = {0.0073, 0.146, 0.584};
            bool all_ok = true;
            std::ostringstream table;
            table << "kappa,zalpha,n_r,eps_shoot,eps_closed,delta\n";
            for (int kappa = 1; kappa <= or_kmax; ++kappa)
                for (double za : or_za) {
                    const auto eps = find_spectrum(kappa, za, or_nrmax, ShootingConfig{});
                    for (int n_r = 0; n_r <= or_nrmax; ++n_r) {
                        const double want = energy(n_r, kappa, za).epsilon;
                        const double delta = eps[n_r] - want;
                        all_ok = all_ok && std::abs(delta) <= 1e-8;
                        table << kappa << "," << io::fmt(za) << "," << n_r << ","
                              << io::fmt(eps[n_r]) << "," << io::fmt(want) << ","
                              << io::fmt(delta) << "\n";
                    }
                }
            const int rc = detail::write_output(or_out, out, err, [&](std::ostream& os) {
                os << table.str();
            });
            if (rc != kExitOk) return rc;
            if (!all_ok) {
                err << "oracle spectrum deviates beyond 1e-8\n";
                return kExitVerifyFailed;
            }
            return kExitOk;
        }
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitInvalid;
}

} // namespace dirac::cli

#include "anharmonic/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "anharmonic/errors.hpp"
#include "anharmonic/measures.hpp"
#include "anharmonic/parallel.hpp"

namespace anharmonic::cli {

namespace {

using json = nlohmann::ordered_json;

// Parameter flags shared by the model-based subcommands.
struct RawParams {
    std::string model;
    double alpha = 1.0;
    double beta = 0.0;
    double d = 1.0;
    double a = 1.0;
    double omega = 1.0;
    double eps4 = 0.0;
    double eps6 = 0.0;
    std::optional<double> tau;
    std::optional<double> n;
    std::optional<double> s;
    std::size_t fock_n = 0;
    std::string coeffs;

    void set(const std::string& axis, double v) {
        if (axis == "alpha") alpha = v;
        else if (axis == "beta") beta = v;
        else if (axis == "d") d = v;
        else if (axis == "a") a = v;
        else if (axis == "omega") omega = v;
        else if (axis == "eps4") eps4 = v;
        else if (axis == "eps6") eps6 = v;
        else if (axis == "tau") tau = v;
        else if (axis == "n") n = v;
        else if (axis == "s") s = v;
        else throw std::invalid_argument("unknown sweep axis '" + axis + "'");
    }

    // Effective parameters override the raw ones they determine.
    measures::ModelParams build() const {
        if (model == "mho") {
            if (tau && *tau < 0.0) throw DomainError("MHO requires tau >= 0");
            return osc::MhoParams{alpha, tau ? *tau * std::sqrt(alpha) : beta};
        }
        if (model == "morse") {
            if (n && !(*n > 0.0)) throw BoundStateError("Morse requires N > 0");
            return osc::MorseParams{n ? 0.5 * std::pow((*n + 0.5) * alpha, 2) : d, alpha};
        }
        if (model == "pt") {
            if (s && !(*s > 0.0)) throw BoundStateError("Poschl-Teller requires s > 0");
            return osc::PtParams{s ? 0.5 * alpha * alpha * *s * (*s + 1.0) : a, alpha};
        }
        if (model == "poly") return perturb::PolyParams{omega, eps4, eps6};
        throw std::invalid_argument("unknown model '" + model + "'");
    }

    fock::FockState fock_state() const {
        if (coeffs.empty()) return fock::FockState::number(fock_n, fock_n + 1);
        std::vector<double> c;
        std::stringstream ss(coeffs);
        std::string item;
        while (std::getline(ss, item, ',')) c.push_back(std::stod(item));
        fock::FockState state(c);
        state.normalize();
        return state;
    }
};

void add_model_flags(CLI::App* cmd, RawParams& raw, bool with_fock) {
    std::vector<std::string> models{"mho", "morse", "pt", "poly"};
    if (with_fock) models.push_back("fock");
    cmd->add_option("model", raw.model, "Model")->required()->check(CLI::IsMember(models));
    cmd->add_option("--alpha", raw.alpha, "alpha (mho, morse, pt)");
    cmd->add_option("--beta", raw.beta, "beta (mho)");
    cmd->add_option("--d", raw.d, "well depth D (morse)");
    cmd->add_option("--a", raw.a, "depth A (pt)");
    cmd->add_option("--omega", raw.omega, "omega (poly)");
    cmd->add_option("--eps4", raw.eps4, "x^4 coupling (poly)");
    cmd->add_option("--eps6", raw.eps6, "x^6 coupling (poly)");
    cmd->add_option("--tau", raw.tau, "tau, sets beta = tau sqrt(alpha) (mho)");
    cmd->add_option("--n", raw.n, "N, sets D from alpha (morse)");
    cmd->add_option("--s", raw.s, "s, sets A from alpha (pt)");
    if (with_fock) {
        cmd->add_option("--fock-n", raw.fock_n, "number state |n> (fock)");
        cmd->add_option("--coeffs", raw.coeffs, "comma-separated real amplitudes (fock)");
    }
}

struct CommonFlags {
    std::string format = "csv";
    std::string out;
    std::optional<double> tol_2d;
    std::optional<std::size_t> max_evals;
    std::size_t dim_fock = 60;
    std::size_t dim_diag = perturb::kDefaultDiagDim;
    std::size_t threads = 0;

    measures::MeasureOptions options() const {
        measures::MeasureOptions o;
        o.dim_fock = dim_fock;
        o.dim_diag = dim_diag;
        if (tol_2d) {
            if (!(*tol_2d > 0.0)) throw std::invalid_argument("--tol-2d must be positive");
            o.negativity.quad.abs_tol = *tol_2d;
            o.negativity.quad.rel_tol = 10.0 * *tol_2d;
        }
        if (max_evals) {
            if (*max_evals == 0) throw std::invalid_argument("--max-evals must be >= 1");
            o.negativity.quad.max_evals = *max_evals;
        }
        return o;
    }
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--tol-2d", f.tol_2d, "absolute tolerance of the negativity cubature");
    cmd->add_option("--max-evals", f.max_evals, "evaluation budget of the negativity cubature");
    cmd->add_option("--dim-fock", f.dim_fock, "Fock dimension for the entanglement potential");
    cmd->add_option("--dim-diag", f.dim_diag, "levels for the poly diagonalisation");
    cmd->add_option("--threads", f.threads, "worker threads (0: all cores)");
}

std::string fmt(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json jnum(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::stod(fmt(v));
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

const std::vector<std::string> kColumns{
    "model", "alpha",    "beta",  "d",        "a",           "omega",
    "eps4",  "eps6",     "tau_or_N_or_s", "eta_ng", "nu", "ent_potential",
    "r_x",   "r_p",      "energy", "fidelity", "eta_ng_bits", "ent_potential_bits",
    "extrapolated", "error"};

struct Row {
    measures::ModelParams params;
    std::optional<measures::MeasureRecord> record;
    std::string error;
    int code = kExitOk;
};

// Column values in kColumns order; NaN marks an empty cell, strings are model and error.
std::vector<double> numeric_cells(const Row& row) {
    constexpr double kNone = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> v(kColumns.size() - 2, kNone);  // alpha .. extrapolated
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, osc::MhoParams>) {
                v[0] = p.alpha;
                v[1] = p.beta;
            } else if constexpr (std::is_same_v<P, osc::MorseParams>) {
                v[0] = p.alpha;
                v[2] = p.d;
            } else if constexpr (std::is_same_v<P, osc::PtParams>) {
                v[0] = p.alpha;
                v[3] = p.a;
            } else {
                v[4] = p.omega;
                v[5] = p.eps4;
                v[6] = p.eps6;
            }
        },
        row.params);
    if (const auto& r = row.record) {
        if (r->model != "poly") v[7] = r->effective;
        v[8] = r->eta_ng;
        v[9] = r->nu;
        v[10] = r->ent_potential;
        v[11] = r->r_x;
        v[12] = r->r_p;
        v[13] = r->energy;
        if (r->model == "poly") {
            v[14] = r->fidelity;
            v[17] = r->extrapolated ? 1.0 : 0.0;
        }
        v[15] = r->eta_ng / std::numbers::ln2;
        v[16] = r->ent_potential / std::numbers::ln2;
    }
    return v;
}

std::string row_error(const Row& row) {
    if (!row.error.empty()) return row.error;
    if (row.record) return row.record->note;
    return "";
}

void write_rows(const std::vector<Row>& rows, const std::string& format, std::ostream& os) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj;
            obj["model"] = measures::model_name(row.params);
            const auto v = numeric_cells(row);
            for (std::size_t i = 0; i < v.size(); ++i) obj[kColumns[i + 1]] = jnum(v[i]);
            if (!std::isnan(v[17])) obj["extrapolated"] = v[17] == 1.0;
            const std::string e = row_error(row);
            obj["error"] = e.empty() ? json(nullptr) : json(e);
            arr.push_back(obj);
        }
        os << arr.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < kColumns.size(); ++i) os << (i ? "," : "") << kColumns[i];
    os << '\n';
    for (const auto& row : rows) {
        os << measures::model_name(row.params);
        for (double x : numeric_cells(row)) os << ',' << fmt(x);
        os << ',' << csv_quote(row_error(row)) << '\n';
    }
}

int classify(const std::exception_ptr& e, std::string& message) {
    try {
        std::rethrow_exception(e);
    } catch (const NonConvergence& x) {
        message = x.what();
        return kExitNumeric;
    } catch (const TruncationError& x) {
        message = x.what();
        return kExitNumeric;
    } catch (const std::exception& x) {
        message = x.what();
        return kExitUsage;
    }
}

Row evaluate(const RawParams& raw, const measures::MeasureOptions& opts) {
    Row row{osc::MhoParams{}, std::nullopt, {}, kExitOk};
    try {
        row.params = raw.build();
        row.record = measures::measure_model(row.params, opts);
    } catch (...) {
        row.code = classify(std::current_exception(), row.error);
    }
    return row;
}

// Writes to --out or the given stream.
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn write) {
    if (path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
    write(file);
}

int rows_exit_code(const std::vector<Row>& rows, std::ostream& err) {
    int worst = kExitOk;
    bool any_ok = false;
    for (const auto& r : rows) {
        if (r.record) any_ok = true;
        else worst = std::max(worst, r.code);
    }
    if (any_ok) return kExitOk;
    err << "error: no point succeeded\n";
    return worst == kExitOk ? kExitUsage : worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nonclassicality and nonlinearity of anharmonic oscillator ground states"};
    app.require_subcommand(1);

    RawParams measure_raw;
    CommonFlags measure_flags;
    auto* measure = app.add_subcommand("measure", "Evaluate one parameter point");
    add_model_flags(measure, measure_raw, false);
    add_common_flags(measure, measure_flags);

    RawParams sweep_raw;
    CommonFlags sweep_flags;
    std::string axis;
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 20;
    auto* sweep = app.add_subcommand("sweep", "Evaluate a one-parameter sweep");
    add_model_flags(sweep, sweep_raw, false);
    add_common_flags(sweep, sweep_flags);
    sweep->add_option("--axis", axis, "swept parameter")
        ->required()
        ->check(CLI::IsMember({"alpha", "beta", "d", "a", "omega", "eps4", "eps6", "tau", "n", "s"}));
    sweep->add_option("--start", start, "first value")->required();
    sweep->add_option("--stop", stop, "last value")->required();
    sweep->add_option("--count", count, "number of evenly spaced values");

    CommonFlags scatter_flags;
    std::size_t scatter_count = 1000;
    double eps4_max = 0.1;
    double eps6_max = 0.03;
    double scatter_omega = 1.0;
    std::uint64_t seed = 42;
    auto* scatter = app.add_subcommand("scatter", "Random (eps4, eps6) points of the poly model");
    add_common_flags(scatter, scatter_flags);
    scatter->add_option("--count", scatter_count, "number of points");
    scatter->add_option("--eps4-max", eps4_max, "upper end of the eps4 range");
    scatter->add_option("--eps6-max", eps6_max, "upper end of the eps6 range");
    scatter->add_option("--omega", scatter_omega, "harmonic frequency");
    scatter->add_option("--seed", seed, "splitmix64 seed");

    RawParams grid_raw;
    std::string grid_out;
    double x_min = -5.0, x_max = 5.0, p_min = -5.0, p_max = 5.0;
    std::size_t nx = 101, ny = 101;
    auto* grid = app.add_subcommand("wigner-grid", "Sample the ground-state Wigner function");
    add_model_flags(grid, grid_raw, true);
    grid->add_option("--out", grid_out, "output file (default stdout)");
    grid->add_option("--x-min", x_min, "x range");
    grid->add_option("--x-max", x_max);
    grid->add_option("--nx", nx, "x samples");
    grid->add_option("--p-min", p_min, "p range");
    grid->add_option("--p-max", p_max);
    grid->add_option("--ny", ny, "p samples");

    CommonFlags map_flags;
    double map_eps4 = 0.1, map_eps6 = 0.03, map_omega = 1.0;
    std::size_t n4 = 5, n6 = 5;
    auto* fmap = app.add_subcommand("fidelity-map", "Perturbative vs diagonalised ground-state fidelity");
    add_common_flags(fmap, map_flags);
    fmap->add_option("--eps4-max", map_eps4, "upper end of the eps4 range");
    fmap->add_option("--eps6-max", map_eps6, "upper end of the eps6 range");
    fmap->add_option("--n4", n4, "eps4 grid points");
    fmap->add_option("--n6", n6, "eps6 grid points");
    fmap->add_option("--omega", map_omega, "harmonic frequency");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (measure->parsed()) {
            const Row row = evaluate(measure_raw, measure_flags.options());
            if (!row.record) {
                err << "error: " << row.error << '\n';
                return row.code;
            }
            emit(measure_flags.out, out, [&](std::ostream& os) {
                write_rows({row}, measure_flags.format, os);
            });
            return kExitOk;
        }
        if (sweep->parsed()) {
            if (count == 0) throw std::invalid_argument("--count must be >= 1");
            if (!(start < stop) && count > 1) throw std::invalid_argument("sweep requires start < stop");
            const auto points = perturb::Range{start, stop, count}.points();
            const auto opts = sweep_flags.options();
            const auto rows = parallel_map(
                points.size(),
                [&](std::size_t i) {
                    RawParams raw = sweep_raw;
                    raw.set(axis, points[i]);
                    return evaluate(raw, opts);
                },
                sweep_flags.threads);
            emit(sweep_flags.out, out,
                 [&](std::ostream& os) { write_rows(rows, sweep_flags.format, os); });
            return rows_exit_code(rows, err);
        }
        if (scatter->parsed()) {
            if (scatter_count == 0) throw std::invalid_argument("--count must be >= 1");
            if (!(eps4_max >= 0.0) || !(eps6_max >= 0.0)) {
                throw std::invalid_argument("scatter bounds must be non-negative");
            }
            SplitMix64 rng(seed);
            std::vector<RawParams> raws(scatter_count);
            for (auto& raw : raws) {
                raw.model = "poly";
                raw.omega = scatter_omega;
                raw.eps4 = eps4_max * rng.uniform();
                raw.eps6 = eps6_max * rng.uniform();
            }
            const auto opts = scatter_flags.options();
            const auto rows = parallel_map(
                raws.size(), [&](std::size_t i) { return evaluate(raws[i], opts); },
                scatter_flags.threads);
            emit(scatter_flags.out, out,
                 [&](std::ostream& os) { write_rows(rows, scatter_flags.format, os); });
            return rows_exit_code(rows, err);
        }
        if (grid->parsed()) {
            if (nx == 0 || ny == 0) throw std::invalid_argument("grid requires nx, ny >= 1");
            if (!(x_min < x_max) || !(p_min < p_max)) {
                throw std::invalid_argument("grid requires x_min < x_max and p_min < p_max");
            }
            const wigner::WignerField w = grid_raw.model == "fock"
                                              ? wigner::fock_wigner(grid_raw.fock_state())
                                              : measures::physical_wigner(grid_raw.build());
            const auto xs = perturb::Range{x_min, x_max, nx}.points();
            const auto ps = perturb::Range{p_min, p_max, ny}.points();
            const auto rows = parallel_map(ps.size(), [&](std::size_t j) {
                std::string line;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    line += (i ? " " : "") + fmt(w(xs[i], ps[j]));
                }
                return line;
            });
            emit(grid_out, out, [&](std::ostream& os) {
                os << "# " << fmt(x_min) << ' ' << fmt(x_max) << ' ' << nx << ' ' << fmt(p_min)
                   << ' ' << fmt(p_max) << ' ' << ny << '\n';
                for (const auto& line : rows) os << line << '\n';
            });
            return kExitOk;
        }
        if (fmap->parsed()) {
            if (n4 == 0 || n6 == 0) throw std::invalid_argument("--n4 and --n6 must be >= 1");
            const auto cells = perturb::fidelity_map({0.0, map_eps4, n4}, {0.0, map_eps6, n6},
                                                     map_omega, map_flags.dim_diag);
            emit(map_flags.out, out, [&](std::ostream& os) {
                if (map_flags.format == "json") {
                    json arr = json::array();
                    for (const auto& c : cells) {
                        arr.push_back({{"eps4", jnum(c.eps4)},
                                       {"eps6", jnum(c.eps6)},
                                       {"fidelity", c.error.empty() ? jnum(c.fidelity) : nullptr},
                                       {"error", c.error.empty() ? json(nullptr) : json(c.error)}});
                    }
                    os << arr.dump(2) << '\n';
                    return;
                }
                os << "eps4,eps6,fidelity,error\n";
                for (const auto& c : cells) {
                    os << fmt(c.eps4) << ',' << fmt(c.eps6) << ','
                       << (c.error.empty() ? fmt(c.fidelity) : "") << ',' << csv_quote(c.error)
                       << '\n';
                }
            });
            return kExitOk;
        }
    } catch (...) {
        std::string message;
        const int code = classify(std::current_exception(), message);
        err << "error: " << message << '\n';
        return code;
    }
    return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace anharmonic::cli

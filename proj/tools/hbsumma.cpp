#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hbsumma/errors.hpp"
#include "hbsumma/hb.hpp"
#include "hbsumma/io.hpp"
#include "hbsumma/lab.hpp"
#include "hbsumma/pair.hpp"
#include "hbsumma/selftest.hpp"
#include "hbsumma/series.hpp"
#include "hbsumma/summ.hpp"

using namespace hbsumma;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inline JSON when the argument starts with '[' or '{', a file path otherwise.
std::string inline_or_file(const std::string& arg) {
    if (arg.empty()) throw std::invalid_argument("empty argument");
    const char c = arg.front();
    return (c == '[' || c == '{') ? arg : slurp(arg);
}

TaylorSeries load_poly(const std::string& arg) {
    return TaylorSeries::polynomial(coeffs_from_json(inline_or_file(arg)));
}

Eigen::VectorXd parse_linear_grid(const std::string& spec) {
    double start = 0.0, stop = 0.0, step = 0.0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0.0)
        throw std::invalid_argument("grid spec must be start:stop:step with step > 0");
    std::vector<double> vals;
    for (int k = 0;; ++k) {
        const double v = start + step * double(k);
        if (v > stop * (1.0 + 1e-12) + 1e-15) break;
        vals.push_back(v);
    }
    if (vals.empty()) throw std::invalid_argument("empty grid");
    return Eigen::Map<Eigen::VectorXd>(vals.data(), Eigen::Index(vals.size()));
}

// k0:k1 -> r_k = 1 - 2^-k, the geometric approach to the unit radius.
Eigen::VectorXd parse_geomspace(const std::string& spec) {
    int k0 = 0, k1 = 0;
    if (std::sscanf(spec.c_str(), "%d:%d", &k0, &k1) != 2 || k1 < k0 || k0 < 1)
        throw std::invalid_argument("geomspace spec must be k0:k1 with 1 <= k0 <= k1");
    Eigen::VectorXd g(k1 - k0 + 1);
    for (int k = k0; k <= k1; ++k) g[k - k0] = 1.0 - std::pow(2.0, -double(k));
    return g;
}

// k0:k1 -> 2^k, for matrix rows and kernel arguments.
Eigen::VectorXd parse_pow2(const std::string& spec) {
    int k0 = 0, k1 = 0;
    if (std::sscanf(spec.c_str(), "%d:%d", &k0, &k1) != 2 || k1 < k0 || k0 < 0)
        throw std::invalid_argument("pow2 spec must be k0:k1 with 0 <= k0 <= k1");
    Eigen::VectorXd g(k1 - k0 + 1);
    for (int k = k0; k <= k1; ++k) g[k - k0] = std::pow(2.0, double(k));
    return g;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + out_path);
    out << text;
}

// Method spec with CLI extensions: "cesaro:N" pins the row, "power:FILE"
// loads {"weights": [...], "radius": R}.
struct MethodSpec {
    SummabilityMethod method;
    std::optional<double> pinned_r;
};

MethodSpec parse_method(const std::string& spec) {
    MethodSpec out{builtin("abel"), {}};
    if (spec.rfind("cesaro:", 0) == 0) {
        out.method = cesaro_method();
        out.pinned_r = std::stod(spec.substr(7));
        return out;
    }
    if (spec.rfind("power:", 0) == 0) {
        const nlohmann::json j = nlohmann::json::parse(slurp(spec.substr(6)));
        if (!j.contains("weights") || !j["weights"].is_array())
            throw std::invalid_argument("power method file needs a weights array");
        auto weights = std::make_shared<std::vector<double>>();
        for (const auto& w : j["weights"]) weights->push_back(w.get<double>());
        const double radius = j.value("radius", 1.0);
        out.method = power_series_method(
            "power:file",
            [weights](Index n) {
                return n < Index(weights->size()) ? (*weights)[std::size_t(n)] : 0.0;
            },
            radius);
        return out;
    }
    out.method = builtin(spec);
    return out;
}

MeasureMoments parse_measure(const std::string& spec) {
    if (spec == "lebesgue") return lebesgue_moments();
    if (spec.rfind("point:", 0) == 0) {
        double t0 = 0.0, w = 1.0;
        const std::string args = spec.substr(6);
        if (std::sscanf(args.c_str(), "%lf,%lf", &t0, &w) < 1)
            throw std::invalid_argument("point measure spec must be point:t0[,weight]");
        return point_mass_moments(t0, w);
    }
    throw std::invalid_argument("unknown measure: " + spec);
}

TaylorSeries parse_family(const std::string& spec) {
    if (spec.rfind("lacunary:", 0) == 0) {
        const std::string args = spec.substr(9);
        int k = 0;
        char tag[16] = {0};
        const int n = std::sscanf(args.c_str(), "%d:%15s", &k, tag);
        if (n < 1 || k < 0 || k > 11)
            throw std::invalid_argument("family spec must be lacunary:K[:signed], K <= 11");
        const bool signed_family = (n == 2 && std::string(tag) == "signed");
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero((Index(1) << k) + 1);
        for (int i = 0; i <= k; ++i)
            c[Index(1) << i] = Complex(signed_family && (i % 2) ? -1.0 : 1.0, 0.0);
        return TaylorSeries::polynomial(std::move(c));
    }
    throw std::invalid_argument("unknown family: " + spec);
}

// Settings shared by the subcommands; config-file values fill anything the
// flags did not set.
struct Options {
    std::string config_path;
    std::string preset;
    std::string b_arg;
    std::string pair_arg;
    std::string f_arg;
    std::string family;
    std::string method;
    std::string q_method = "abel";
    std::string h_method = "log";
    std::string measure = "lebesgue";
    std::string mode = "borwein";
    std::string seq = "alternating";
    std::string r_grid_spec;
    std::string geomspace_spec;
    std::string out_path;
    std::string format = "csv";
    double r = -1.0;
    double r0 = 0.5;
    double tol = 1e-10;
    double delta = 1.0;
    double inclusion_tol = 1e-3;
    Index grid_size = 4096;
    Index order = 64;
    Index phi_order = 512;
    Index from_n = 0;
    Index horizon = 512;
    Index reg_horizon = 16;
    bool list_only = false;
};

struct Binding {
    CLI::Option* opt = nullptr;
    std::function<void(const nlohmann::json&)> apply;
};

// Wires subcommand flags so a JSON config document can supply defaults:
// flags always win over file values.
class ConfigurableApp {
public:
    ConfigurableApp(CLI::App* sub, Options& opts) : sub_(sub), opts_(&opts) {
        sub->add_option("--config", opts.config_path,
                        "JSON config file; flags override file values");
    }

    void bind_string(const std::string& flag, const std::string& key, std::string& target,
                     const std::string& help) {
        Binding b;
        b.opt = sub_->add_option(flag, target, help);
        b.apply = [&target](const nlohmann::json& v) { target = v.get<std::string>(); };
        bindings_[key] = b;
    }
    void bind_double(const std::string& flag, const std::string& key, double& target,
                     const std::string& help) {
        Binding b;
        b.opt = sub_->add_option(flag, target, help);
        b.apply = [&target](const nlohmann::json& v) { target = v.get<double>(); };
        bindings_[key] = b;
    }
    void bind_index(const std::string& flag, const std::string& key, Index& target,
                    const std::string& help) {
        Binding b;
        b.opt = sub_->add_option(flag, target, help);
        b.apply = [&target](const nlohmann::json& v) { target = v.get<Index>(); };
        bindings_[key] = b;
    }

    void merge_config() const {
        if (opts_->config_path.empty()) return;
        const nlohmann::json j = nlohmann::json::parse(slurp(opts_->config_path));
        if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
        for (const auto& [key, value] : j.items()) {
            const auto it = bindings_.find(key);
            if (it == bindings_.end()) throw std::invalid_argument("unknown config key: " + key);
            if (it->second.opt->count() == 0) it->second.apply(value);
        }
    }

private:
    CLI::App* sub_;
    Options* opts_;
    std::map<std::string, Binding> bindings_;
};

PythagoreanPair resolve_pair(const Options& o) {
    if (!o.pair_arg.empty()) return pair_from_json(inline_or_file(o.pair_arg));
    if (o.preset == "halfshift") return halfshift_pair(o.phi_order);
    if (!o.preset.empty()) throw std::invalid_argument("unknown preset: " + o.preset);
    if (o.b_arg.empty()) throw std::invalid_argument("need --preset, --phi (pair JSON), or --b");
    const TaylorSeries b = load_poly(o.b_arg);
    return fejer_riesz(b, o.tol, FejerRieszOptions{1e-6, 1e-6, o.grid_size, o.phi_order});
}

Eigen::VectorXd resolve_unit_grid(const Options& o) {
    if (!o.geomspace_spec.empty()) return parse_geomspace(o.geomspace_spec);
    if (!o.r_grid_spec.empty()) return parse_linear_grid(o.r_grid_spec);
    if (o.r >= 0.0) {
        Eigen::VectorXd g(1);
        g << o.r;
        return g;
    }
    throw std::invalid_argument("need --r, --r-grid, or --geomspace");
}

int cmd_mate(const Options& o) {
    PythagoreanPair pair;
    const std::string method = o.method.empty() ? "fejer" : o.method;
    if (o.preset == "halfshift" && method == "fejer") {
        pair = halfshift_pair(o.phi_order);
    } else {
        const TaylorSeries b =
            o.preset == "halfshift"
                ? TaylorSeries::polynomial(
                      (Eigen::VectorXcd(2) << Complex(0.5), Complex(0.5)).finished())
                : load_poly(o.b_arg);
        if (method == "fft") {
            pair = pair_from_modulus(b, o.grid_size, o.order, std::max(o.tol, 1e-8), o.phi_order);
        } else if (method == "fejer") {
            pair = fejer_riesz(b, o.tol, FejerRieszOptions{1e-6, 1e-6, o.grid_size, o.phi_order});
        } else {
            throw std::invalid_argument("mate method must be fejer or fft");
        }
    }
    const NonExtremenessReport rep = check_nonextreme(pair.b, o.grid_size);
    std::string json = pair_to_json(pair);
    json.pop_back();  // reopen the object to append the report
    json += ",\"nonextreme\":" + nonextreme_to_json(rep) + "}";
    emit(json, o.out_path);
    return 0;
}

int cmd_phi(const Options& o) {
    const PythagoreanPair pair = resolve_pair(o);
    const PhiCoefficients pc = phi_coefficients(pair, o.order);
    if (o.format == "csv") {
        emit(series_to_csv(pc.coeffs), o.out_path);
    } else {
        emit("{\"phi\":" + coeffs_to_json(pc.coeffs.coeffs()) +
                 ",\"multiply_back_residual\":" + format_number(pc.multiply_back_residual) + "}",
             o.out_path);
    }
    return 0;
}

int cmd_norm(const Options& o) {
    const PythagoreanPair pair = resolve_pair(o);
    const HbContext ctx{pair.phi, o.tol};
    if (o.f_arg.empty()) throw std::invalid_argument("need --f coefficients");
    const TaylorSeries f = load_poly(o.f_arg);
    const HbVector v = hb_norm(f, ctx);
    emit(norm_to_json(v, ctx.order()), o.out_path);
    return 0;
}

int cmd_mean(const Options& o) {
    if (o.method.empty()) throw std::invalid_argument("need --method");
    const MethodSpec ms = parse_method(o.method);
    if (o.f_arg.empty()) throw std::invalid_argument("need --f coefficients");
    const TaylorSeries f = load_poly(o.f_arg);

    std::optional<HbContext> ctx;
    if (!o.preset.empty() || !o.pair_arg.empty()) ctx = HbContext{resolve_pair(o).phi, o.tol};

    Eigen::VectorXd grid;
    if (ms.pinned_r) {
        grid.resize(1);
        grid << *ms.pinned_r;
    } else {
        grid = resolve_unit_grid(o);
    }

    std::vector<std::pair<double, PartialSumMean>> rows;
    rows.reserve(std::size_t(grid.size()));
    for (Index i = 0; i < grid.size(); ++i)
        rows.emplace_back(grid[i],
                          mean_of_partial_sums(ms.method, f, ctx ? &*ctx : nullptr, grid[i],
                                               std::max(o.tol, 1e-14)));
    if (o.format == "csv") {
        emit(mean_rows_to_csv(rows), o.out_path);
    } else {
        std::string out = "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out += ",";
            out += "{\"r\":" + format_number(rows[i].first) +
                   ",\"coeffs\":" + coeffs_to_json(rows[i].second.series.coeffs()) +
                   ",\"tail_err\":" + format_number(rows[i].second.tail_err) + "}";
        }
        emit(out + "]", o.out_path);
    }
    return 0;
}

int cmd_scan(const Options& o) {
    const PythagoreanPair pair = resolve_pair(o);
    const HbContext ctx{pair.phi, o.tol};
    TaylorSeries f = TaylorSeries::zero();
    if (!o.family.empty()) {
        f = parse_family(o.family);
    } else if (!o.f_arg.empty()) {
        f = load_poly(o.f_arg);
    } else {
        throw std::invalid_argument("need --f or --family");
    }
    if (!ctx.phi.is_exact() && ctx.order() < f.degree())
        throw std::invalid_argument("phi order below the scanned degree; raise --phi-order");
    const Eigen::VectorXd grid = resolve_unit_grid(o);
    const ScanTable table = scan_divergence(f, ctx, grid, std::max(o.tol, 1e-12));
    emit(scan_table_to_csv(table), o.out_path);
    return 0;
}

int cmd_check_regular(const Options& o) {
    if (o.method.empty()) throw std::invalid_argument("need --method");
    const MethodSpec ms = parse_method(o.method);
    Eigen::VectorXd grid;
    double r0 = o.r0;
    if (!o.geomspace_spec.empty()) {
        grid = parse_geomspace(o.geomspace_spec);
    } else if (!o.r_grid_spec.empty()) {
        grid = parse_linear_grid(o.r_grid_spec);
    } else if (ms.method.kind == SummabilityMethod::Kind::power_series) {
        grid = parse_geomspace("1:20");
    } else {
        grid = parse_pow2("0:12");
        r0 = ms.method.kind == SummabilityMethod::Kind::kernel ? 1.0 : 0.0;
    }
    const RegularityReport rep = regularity_report(ms.method, r0, grid, o.reg_horizon);
    emit(regularity_to_json(ms.method, rep), o.out_path);
    return 0;
}

int cmd_check_inclusion(const Options& o) {
    if (o.mode == "borwein" || o.mode == "conditions-ab") {
        if (o.method.empty()) throw std::invalid_argument("need --p method");
        const MethodSpec p = parse_method(o.method);
        const MeasureMoments mm = parse_measure(o.measure);
        if (p.method.kind != SummabilityMethod::Kind::power_series)
            throw std::invalid_argument("moment checks need power-series methods");
        BorweinReport rep;
        if (o.mode == "borwein") {
            const MethodSpec q = parse_method(o.q_method);
            if (q.method.kind != SummabilityMethod::Kind::power_series)
                throw std::invalid_argument("moment checks need power-series methods");
            rep = borwein_check(p.method.weight, q.method.weight, mm, o.delta, o.from_n,
                                o.horizon);
        } else {
            rep = conditions_AB_check(p.method.weight, mm, o.delta, o.from_n, o.horizon);
        }
        emit(borwein_to_json(rep), o.out_path);
        return 0;
    }
    if (o.mode == "empirical") {
        const MethodSpec k = parse_method(o.q_method);
        const MethodSpec h = parse_method(o.h_method);
        ScalarSequence seq;
        if (o.seq == "alternating") {
            seq.at = [](Index n) { return Complex(n % 2 == 0 ? 1.0 : 0.0); };
            seq.growth_C = 1.0;
            seq.growth_R = 1.0;
        } else if (o.seq.rfind("const:", 0) == 0) {
            const double c = std::stod(o.seq.substr(6));
            seq.at = [c](Index) { return Complex(c); };
            seq.growth_C = std::max(std::abs(c), 1e-300);
            seq.growth_R = 1.0;
        } else {
            throw std::invalid_argument("sequence must be alternating or const:c");
        }
        const Eigen::VectorXd grid = resolve_unit_grid(o);
        const InclusionReport rep =
            empirical_inclusion(k.method, h.method, seq, grid, o.inclusion_tol);
        emit(inclusion_to_json(rep), o.out_path);
        return 0;
    }
    throw std::invalid_argument("mode must be borwein, conditions-ab, or empirical");
}

int cmd_selftest(const Options& o) {
    if (o.list_only) {
        const char* names[] = {
            "Pythagorean identity (halfshift Fejer-Riesz)",
            "exact norms ||1||_b^2 = 2 and ||z||_b^2 = 6",
            "Abel mean of partial sums equals the dilate",
            "logarithmic mean dual path (series vs quadrature)",
            "regularity verdicts",
            "operator bound sqrt(C(phi,r)) ||f||_H2",
            "(L_r[f])+(0) identity at z = 0",
            "scalar inclusion evidence (Abel in logarithmic)",
            "partial-sum growth rate stability",
            "divergence scan smoke test",
        };
        std::string out;
        int id = 1;
        for (const char* n : names) out += std::to_string(id++) + ": " + std::string(n) + "\n";
        emit(out, o.out_path);
        return 0;
    }
    const auto results = selftest::run_all();
    const int failures = selftest::report(std::cout, results);
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"de Branges-Rovnyak norms and power-series summability means"};
    app.require_subcommand(1);

    Options o;
    std::string command;

    auto add_common = [&](CLI::App* sub) {
        auto wrap = std::make_shared<ConfigurableApp>(sub, o);
        sub->add_option("--out", o.out_path, "output path (default stdout)");
        return wrap;
    };

    CLI::App* mate = app.add_subcommand("mate", "construct the Pythagorean mate and phi");
    {
        auto cfg = add_common(mate);
        cfg->bind_string("--preset", "preset", o.preset, "named symbol preset (halfshift)");
        cfg->bind_string("--b", "b", o.b_arg, "symbol coefficients (JSON or file)");
        cfg->bind_string("--method", "method", o.method, "fejer (roots) or fft (log-modulus)");
        cfg->bind_double("--tol", "tol", o.tol, "construction tolerance");
        cfg->bind_index("--grid", "grid", o.grid_size, "validation grid size (power of two)");
        cfg->bind_index("--order", "order", o.order, "outer truncation order (fft route)");
        cfg->bind_index("--phi-order", "phi_order", o.phi_order, "phi truncation order");
        mate->callback([&o, cfg, &command] {
            cfg->merge_config();
            command = "mate";
        });
    }

    CLI::App* phi = app.add_subcommand("phi", "phi = b/a coefficients");
    {
        auto cfg = add_common(phi);
        cfg->bind_string("--preset", "preset", o.preset, "named symbol preset");
        cfg->bind_string("--b", "b", o.b_arg, "symbol coefficients");
        cfg->bind_string("--phi", "pair", o.pair_arg, "pair JSON (from mate)");
        cfg->bind_index("--order", "order", o.order, "phi truncation order");
        cfg->bind_double("--tol", "tol", o.tol, "construction tolerance");
        cfg->bind_string("--format", "format", o.format, "csv or json");
        phi->callback([cfg, &command] {
            cfg->merge_config();
            command = "phi";
        });
    }

    CLI::App* norm = app.add_subcommand("norm", "H(b) norm of a polynomial");
    {
        auto cfg = add_common(norm);
        cfg->bind_string("--preset", "preset", o.preset, "named symbol preset");
        cfg->bind_string("--b", "b", o.b_arg, "symbol coefficients");
        cfg->bind_string("--phi", "pair", o.pair_arg, "pair JSON (from mate)");
        cfg->bind_string("--f", "f", o.f_arg, "function coefficients (JSON or file)");
        cfg->bind_double("--tol", "tol", o.tol, "tail tolerance");
        cfg->bind_index("--phi-order", "phi_order", o.phi_order, "phi truncation order");
        norm->callback([cfg, &command] {
            cfg->merge_config();
            command = "norm";
        });
    }

    CLI::App* mean = app.add_subcommand("mean", "summability means of Taylor partial sums");
    {
        auto cfg = add_common(mean);
        cfg->bind_string("--method", "method", o.method,
                         "abel | gen-abel:A | log | cesaro:N | borel:A,B | power:FILE | identity");
        cfg->bind_string("--f", "f", o.f_arg, "function coefficients");
        cfg->bind_string("--preset", "preset", o.preset, "phi preset for H(b) norms");
        cfg->bind_string("--phi", "pair", o.pair_arg, "pair JSON for H(b) norms");
        cfg->bind_double("--r", "r", o.r, "single evaluation point");
        cfg->bind_string("--r-grid", "r_grid", o.r_grid_spec, "start:stop:step");
        cfg->bind_string("--geomspace", "geomspace", o.geomspace_spec, "k0:k1 for r = 1 - 2^-k");
        cfg->bind_double("--tol", "tol", o.tol, "certified tail tolerance");
        cfg->bind_string("--format", "format", o.format, "csv or json");
        cfg->bind_index("--phi-order", "phi_order", o.phi_order, "phi truncation order");
        mean->callback([cfg, &command] {
            cfg->merge_config();
            command = "mean";
        });
    }

    CLI::App* scan = app.add_subcommand("scan", "logarithmic-mean blow-up scan over r -> 1-");
    {
        auto cfg = add_common(scan);
        cfg->bind_string("--preset", "preset", o.preset, "named symbol preset");
        cfg->bind_string("--b", "b", o.b_arg, "symbol coefficients");
        cfg->bind_string("--phi", "pair", o.pair_arg, "pair JSON");
        cfg->bind_string("--f", "f", o.f_arg, "function coefficients");
        cfg->bind_string("--family", "family", o.family, "lacunary:K[:signed]");
        cfg->bind_string("--r-grid", "r_grid", o.r_grid_spec, "start:stop:step");
        cfg->bind_string("--geomspace", "geomspace", o.geomspace_spec, "k0:k1 for r = 1 - 2^-k");
        cfg->bind_double("--tol", "tol", o.tol, "per-row tolerance");
        cfg->bind_index("--phi-order", "phi_order", o.phi_order, "phi truncation order");
        scan->callback([cfg, &command] {
            cfg->merge_config();
            command = "scan";
        });
    }

    CLI::App* reg = app.add_subcommand("check-regular", "regularity-condition report");
    {
        auto cfg = add_common(reg);
        cfg->bind_string("--method", "method", o.method, "method spec");
        cfg->bind_double("--r0", "r0", o.r0, "left end of the tested window");
        cfg->bind_string("--r-grid", "r_grid", o.r_grid_spec, "start:stop:step");
        cfg->bind_string("--geomspace", "geomspace", o.geomspace_spec, "k0:k1");
        cfg->bind_index("--horizon", "horizon", o.reg_horizon, "pointwise horizon (>= 16)");
        reg->callback([cfg, &command] {
            cfg->merge_config();
            command = "check-regular";
        });
    }

    CLI::App* incl = app.add_subcommand("check-inclusion", "scalar-inclusion evidence");
    {
        auto cfg = add_common(incl);
        cfg->bind_string("--mode", "mode", o.mode, "borwein | conditions-ab | empirical");
        cfg->bind_string("--p", "p", o.method, "target method (moment checks)");
        cfg->bind_string("--q", "q", o.q_method, "included method (moment checks)");
        cfg->bind_string("--K", "K", o.q_method, "empirical K method");
        cfg->bind_string("--H", "H", o.h_method, "empirical H method");
        cfg->bind_string("--measure", "measure", o.measure, "lebesgue | point:t0[,w]");
        cfg->bind_double("--delta", "delta", o.delta, "Borwein delta in (0, 1]");
        cfg->bind_index("--from-n", "from_n", o.from_n, "first checked index N");
        cfg->bind_index("--horizon", "horizon", o.horizon, "last checked index");
        cfg->bind_string("--seq", "seq", o.seq, "alternating | const:c");
        cfg->bind_string("--r-grid", "r_grid", o.r_grid_spec, "start:stop:step");
        cfg->bind_string("--geomspace", "geomspace", o.geomspace_spec, "k0:k1");
        cfg->bind_double("--tol", "inclusion_tol", o.inclusion_tol, "agreement tolerance");
        incl->callback([cfg, &command] {
            cfg->merge_config();
            command = "check-inclusion";
        });
    }

    CLI::App* self = app.add_subcommand("selftest", "run the acceptance criteria");
    self->add_flag("--list", o.list_only, "list criteria without running");
    self->add_option("--out", o.out_path, "output path (default stdout)");
    self->callback([&command] { command = "selftest"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << error_json(e.what(), 1) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << error_json(e.what(), 1) << "\n";
        return 1;
    }

    try {
        if (command == "mate") return cmd_mate(o);
        if (command == "phi") return cmd_phi(o);
        if (command == "norm") return cmd_norm(o);
        if (command == "mean") return cmd_mean(o);
        if (command == "scan") return cmd_scan(o);
        if (command == "check-regular") return cmd_check_regular(o);
        if (command == "check-inclusion") return cmd_check_inclusion(o);
        if (command == "selftest") return cmd_selftest(o);
        std::cerr << error_json("no command given", 1) << "\n";
        return 1;
    } catch (const certification_error& e) {
        std::cerr << error_json(e.what(), 2) << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_json(e.what(), 1) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << error_json(e.what(), 2) << "\n";
        return 2;
    }
}

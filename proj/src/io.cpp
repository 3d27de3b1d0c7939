#include "hbsumma/io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hbsumma {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 17);
    return std::string(buf, res.ptr);
}

std::string format_complex(Complex v) {
    return "[" + format_number(v.real()) + "," + format_number(v.imag()) + "]";
}

namespace {

Eigen::VectorXcd coeffs_from_parsed(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("coefficients must be a JSON array");
    Eigen::VectorXcd c(j.size());
    Index i = 0;
    for (const auto& entry : j) {
        if (entry.is_number()) {
            c[i] = Complex(entry.get<double>(), 0.0);
        } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                   entry[1].is_number()) {
            c[i] = Complex(entry[0].get<double>(), entry[1].get<double>());
        } else {
            throw std::invalid_argument("coefficient entries must be numbers or [re, im] pairs");
        }
        ++i;
    }
    if (c.size() == 0) throw std::invalid_argument("coefficient array must be nonempty");
    return c;
}

std::string coeff_array(const Eigen::VectorXcd& c) {
    std::string out = "[";
    for (Index i = 0; i < c.size(); ++i) {
        if (i) out += ",";
        out += format_complex(c[i]);
    }
    return out + "]";
}

}  // namespace

Eigen::VectorXcd coeffs_from_json(const std::string& text) {
    return coeffs_from_parsed(nlohmann::json::parse(text));
}

std::string coeffs_to_json(const Eigen::VectorXcd& c) { return coeff_array(c); }

std::string pair_to_json(const PythagoreanPair& pair) {
    std::string out = "{\"b\":" + coeff_array(pair.b.coeffs());
    out += ",\"a\":" + coeff_array(pair.a.coeffs());
    out += ",\"phi\":" + coeff_array(pair.phi.coeffs());
    out += ",\"residual\":" + format_number(pair.grid_residual);
    out += ",\"phi_residual\":" + format_number(pair.phi_residual);
    out += "}";
    return out;
}

PythagoreanPair pair_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object() || !j.contains("b") || !j.contains("a") || !j.contains("phi"))
        throw std::invalid_argument("pair JSON must contain b, a, phi");
    PythagoreanPair pair;
    pair.b = TaylorSeries::polynomial(coeffs_from_parsed(j["b"]));
    pair.a = TaylorSeries::polynomial(coeffs_from_parsed(j["a"]));
    pair.phi = TaylorSeries::truncation(coeffs_from_parsed(j["phi"]));
    if (j.contains("residual")) pair.grid_residual = j["residual"].get<double>();
    if (j.contains("phi_residual")) pair.phi_residual = j["phi_residual"].get<double>();
    if (j.contains("phi_tail") && j["phi_tail"].is_array() && j["phi_tail"].size() == 2) {
        pair.phi = TaylorSeries::truncation(
            pair.phi.coeffs(),
            TailBound{j["phi_tail"][0].get<double>(), j["phi_tail"][1].get<double>()});
    }
    return pair;
}

std::string norm_to_json(const HbVector& v, Index phi_order) {
    std::string out = "{\"h2\":" + format_number(v.h2_part);
    out += ",\"plus\":" + format_number(v.plus_part);
    out += ",\"norm_b\":" + format_number(v.norm_b);
    out += ",\"phi_order\":" + std::to_string(phi_order);
    out += ",\"tail_error\":" + format_number(v.tail_err);
    out += "}";
    return out;
}

std::string nonextreme_to_json(const NonExtremenessReport& rep) {
    std::string out = "{\"min_modulus_gap\":" + format_number(rep.min_modulus_gap);
    out += ",\"log_integral_estimate\":" + format_number(rep.log_integral_estimate);
    out += ",\"level_estimates\":[" + format_number(rep.level_estimates[0]) + "," +
           format_number(rep.level_estimates[1]) + "," + format_number(rep.level_estimates[2]) +
           "]";
    out += ",\"verdict\":\"" + std::string(to_string(rep.verdict)) + "\"";
    out += "}";
    return out;
}

std::string regularity_to_json(const SummabilityMethod& method, const RegularityReport& rep) {
    std::string out = "{\"method\":\"" + method.name + "\"";
    out += ",\"bounded_l1\":{\"ok\":" + std::string(rep.bounded_l1 ? "true" : "false") +
           ",\"sup\":" + format_number(rep.l1_sup) + "}";
    out += ",\"pointwise_null\":{\"ok\":" + std::string(rep.pointwise_null ? "true" : "false") +
           ",\"terminal\":[";
    for (std::size_t i = 0; i < rep.terminal_kernel.size(); ++i) {
        if (i) out += ",";
        out += format_number(rep.terminal_kernel[i]);
    }
    out += "]}";
    out += ",\"mass_to_one\":{\"ok\":" + std::string(rep.mass_to_one ? "true" : "false") +
           ",\"terminal\":" + format_number(rep.terminal_mass) + "}";
    if (rep.p_check_applicable)
        out += ",\"p_to_infinity\":" + std::string(rep.p_to_infinity ? "true" : "false");
    out += ",\"verdict\":\"" + std::string(rep.regular ? "regular" : "not regular") + "\"";
    if (!method.note.empty()) out += ",\"note\":\"" + method.note + "\"";
    if (!rep.detail.empty()) out += ",\"detail\":\"" + rep.detail + "\"";
    out += "}";
    return out;
}

std::string borwein_to_json(const BorweinReport& rep) {
    std::string out = "{\"moments_ok\":" + std::string(rep.moments_ok ? "true" : "false");
    out += ",\"max_rel_violation\":" + format_number(rep.max_rel_violation);
    out += ",\"delta_ok\":" + std::string(rep.delta_ok ? "true" : "false");
    out += ",\"min_margin\":" + format_number(rep.min_margin);
    out += ",\"passed\":" + std::string(rep.passed ? "true" : "false");
    out += ",\"from_n\":" + std::to_string(rep.from_n);
    out += ",\"horizon\":" + std::to_string(rep.horizon);
    out += ",\"delta\":" + format_number(rep.delta);
    out += ",\"verdict\":\"" + rep.verdict + "\"";
    out += "}";
    return out;
}

std::string inclusion_to_json(const InclusionReport& rep) {
    std::string out = "{\"within_tol\":" + std::string(rep.within_tol ? "true" : "false");
    out += ",\"difference\":" + format_number(rep.difference);
    out += ",\"tol\":" + format_number(rep.tol);
    out += ",\"k_cauchy\":" + std::string(rep.k_cauchy ? "true" : "false");
    out += ",\"h_cauchy\":" + std::string(rep.h_cauchy ? "true" : "false");
    out += ",\"k_oscillation\":" + format_number(rep.k_oscillation);
    out += ",\"h_oscillation\":" + format_number(rep.h_oscillation);
    if (rep.k_limit_vec.size() == 0) {
        out += ",\"k_limit\":" + format_complex(rep.k_limit);
        out += ",\"h_limit\":" + format_complex(rep.h_limit);
        out += ",\"k_raw_last\":" + format_complex(rep.k_raw_last);
        out += ",\"h_raw_last\":" + format_complex(rep.h_raw_last);
    } else {
        out += ",\"k_limit\":" + coeff_array(rep.k_limit_vec);
        out += ",\"h_limit\":" + coeff_array(rep.h_limit_vec);
    }
    out += "}";
    return out;
}

std::string series_to_csv(const TaylorSeries& f) {
    std::string out = "index,re,im\n";
    for (Index i = 0; i <= f.degree(); ++i) {
        out += std::to_string(i) + "," + format_number(f.coeffs()[i].real()) + "," +
               format_number(f.coeffs()[i].imag()) + "\n";
    }
    return out;
}

std::string mean_rows_to_csv(const std::vector<std::pair<double, PartialSumMean>>& rows) {
    std::string out = "r,norm_b,norm_h2,horizon,tail_err\n";
    for (const auto& [r, mean] : rows) {
        const double nb = mean.norm ? mean.norm->norm_b
                                    : std::numeric_limits<double>::quiet_NaN();
        out += format_number(r) + "," + format_number(nb) + "," +
               format_number(h2_norm(mean.series)) + "," + std::to_string(mean.horizon) + "," +
               format_number(mean.tail_err) + "\n";
    }
    return out;
}

std::string scan_table_to_csv(const ScanTable& table) {
    std::string out = "r,norm_b,fplus0_re,fplus0_im,bound,horizon,tail_err,quad_residual\n";
    for (const ScanRow& row : table.rows) {
        if (!row.ok) {
            out += format_number(row.r) + ",nan,nan,nan,nan,0,inf,nan\n";
            continue;
        }
        out += format_number(row.r) + "," + format_number(row.norm_b) + "," +
               format_number(row.fplus0.real()) + "," + format_number(row.fplus0.imag()) + "," +
               format_number(row.bound) + "," + std::to_string(row.horizon) + "," +
               format_number(row.tail_err) + "," + format_number(row.quad_residual) + "\n";
    }
    return out;
}

std::string error_json(const std::string& message, int code) {
    const nlohmann::json j = {{"error", message}, {"code", code}};
    return j.dump();
}

}  // namespace hbsumma

#pragma once

#include <string>

#include "hbsumma/hb.hpp"
#include "hbsumma/lab.hpp"
#include "hbsumma/pair.hpp"
#include "hbsumma/series.hpp"
#include "hbsumma/summ.hpp"

namespace hbsumma {

// Scientific notation with 18 significant digits through std::to_chars:
// locale-independent, byte-identical across runs, round-trip exact.
std::string format_number(double v);
std::string format_complex(Complex v);  // JSON fragment "[re,im]"

// Coefficient arrays parse from JSON as numbers or [re, im] pairs.
Eigen::VectorXcd coeffs_from_json(const std::string& text);
std::string coeffs_to_json(const Eigen::VectorXcd& c);

// {"b": [[re,im],...], "a": [...], "phi": [...], "residual": x}
std::string pair_to_json(const PythagoreanPair& pair);
PythagoreanPair pair_from_json(const std::string& text);

// {"h2": x, "plus": y, "norm_b": z, "phi_order": J, "tail_error": e}
std::string norm_to_json(const HbVector& v, Index phi_order);

std::string nonextreme_to_json(const NonExtremenessReport& rep);
std::string regularity_to_json(const SummabilityMethod& method, const RegularityReport& rep);
std::string borwein_to_json(const BorweinReport& rep);
std::string inclusion_to_json(const InclusionReport& rep);

// One coefficient per row, columns index,re,im.
std::string series_to_csv(const TaylorSeries& f);
// Columns r,norm_b,norm_h2,horizon,tail_err.
std::string mean_rows_to_csv(const std::vector<std::pair<double, PartialSumMean>>& rows);
// Columns r,norm_b,fplus0_re,fplus0_im,bound,horizon,tail_err,quad_residual.
std::string scan_table_to_csv(const ScanTable& table);

std::string error_json(const std::string& message, int code);

}  // namespace hbsumma

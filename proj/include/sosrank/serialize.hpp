#pragma once

// JSON/CSV encodings. Rationals are strings "p/q" (or "p"), polynomials are
// arrays of rational strings lowest degree first, subsets are sorted arrays
// of 1-based elements.

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "sosrank/certificates.hpp"
#include "sosrank/laurentk.hpp"
#include "sosrank/moments.hpp"
#include "sosrank/symsos.hpp"
#include "sosrank/unipoly.hpp"

namespace sosrank {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& x);
Json to_json(std::span<const Rational> xs);
Json to_json(const UniPoly& p);
Json to_json(const RationalMatrix& m);
Json to_json(const MomentMatrix& m);
Json to_json(const PsdVerdict& v);
Json to_json(const GPolySpec& g, unsigned n);
Json to_json(const ReducedCriterion& c);
Json to_json(const ReducedVerdict& v, unsigned n);
Json to_json(const CertificateReport& r);
Json to_json(const SearchResult& s);
Json to_json(const RankReport& r);

Rational rational_from_json(const Json& j);
UniPoly unipoly_from_json(const Json& j);
/// {"n": <int>, "weights": ["p/q", ...]}; throws std::invalid_argument on
/// a malformed document.
SymmetricAssignment assignment_from_json(const Json& j);

std::vector<unsigned> subset_elements(Subset s);

inline constexpr std::string_view kSweepCsvHeader =
    "n,d,t,normalization_sum,g_sum,g_closed,reduced_psd,bruteforce_psd,pass";
inline constexpr std::string_view kRankCsvHeader = "n,rank,first_negative_margin_t,lower_search_values";

std::string sweep_csv_row(const CertificateReport& r);
std::string rank_csv_row(const RankReport& r);

}  // namespace sosrank

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "imodel/network.hpp"
#include "imodel/quantify.hpp"
#include "imodel/stats.hpp"

namespace imodel {

// Shortest-roundtrip text for a double; parsing it back is exact, which is
// what keeps re-runs byte-identical.
std::string format_double(double v);
double parse_double(const std::string& text);

// "3.82%" style share of a whole, two decimals.
std::string format_percent(std::size_t part, std::size_t whole);

// Matrices as `i,j,value` triplet rows, vectors as `i,value` rows covering
// every index. Readers validate bounds and throw ValidationError with the
// offending line number.
void write_count_matrix_csv(const std::filesystem::path& path, const CountMatrix& m);
CountMatrix read_count_matrix_csv(const std::filesystem::path& path, ComponentId n);
void write_prob_matrix_csv(const std::filesystem::path& path, const ProbMatrix& m);
ProbMatrix read_prob_matrix_csv(const std::filesystem::path& path, ComponentId n);

void write_int_vector_csv(const std::filesystem::path& path,
                          const std::vector<std::int64_t>& v);
std::vector<std::int64_t> read_int_vector_csv(const std::filesystem::path& path);
void write_double_vector_csv(const std::filesystem::path& path, const std::vector<double>& v);
std::vector<double> read_double_vector_csv(const std::filesystem::path& path);

// Weighted network rows `i,j,b,weight`.
void write_weighted_links_csv(const std::filesystem::path& path,
                              const std::vector<WeightedLink>& links);

// CCD table rows `value,ccd_probability`.
void write_ccdf_csv(const std::filesystem::path& path, const std::vector<CcdfPoint>& points);

// A quantification on disk: header.json {n, m_used} next to A.csv,
// A_prime.csv, B.csv, N.csv, N0.csv, tau.csv.
void write_quantify_dir(const std::filesystem::path& dir, const QuantifyResult& q);
QuantifyResult read_quantify_dir(const std::filesystem::path& dir);

// B and tau alone describe a simulatable system; n comes from tau's length.
InteractionMatrix read_matrix_and_tau(const std::filesystem::path& b_path,
                                      const std::filesystem::path& tau_path,
                                      std::int64_t m_used = 0);

}  // namespace imodel

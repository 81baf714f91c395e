#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "torsionscope/complex.hpp"
#include "torsionscope/homology.hpp"
#include "torsionscope/parallel.hpp"

namespace torsionscope {

/// Primes p with gcd(p, alpha_r * alpha~_s) > 1, read off the largest
/// elementary divisors of d_{k+1} and d_k; every prime outside the returned
/// set is coprime to all divisors of both operators by the divisibility
/// chain.
inline std::set<std::uint64_t> bad_primes_for_degree(const SimplicialComplex& complex,
                                                     int k) {
  if (k < 0) throw DomainError("bad_primes_for_degree: k must be >= 0");
  Int product = 1;
  const auto snf_up = smith_normal_form(boundary_matrix(complex, k + 1));
  if (!snf_up.divisors.empty()) product *= snf_up.divisors.back();
  const auto snf_down = smith_normal_form(boundary_matrix(complex, k));
  if (!snf_down.divisors.empty()) product *= snf_down.divisors.back();
  return prime_factors(product);
}

/// Bad primes per (scale, degree) and their union over the whole filtration.
struct PrimeReport {
  struct Entry {
    double scale = 0.0;
    int k = 0;
    std::vector<std::uint64_t> primes;
  };
  std::vector<Entry> per_stage;        // ordered by (scale, k)
  std::vector<std::uint64_t> aggregate;  // sorted union
};

inline PrimeReport bad_primes_for_filtration(const Filtration& filtration, int max_k) {
  if (max_k < 0) throw DomainError("bad_primes_for_filtration: max_k must be >= 0");
  const auto& scales = filtration.scales();
  PrimeReport report;
  report.per_stage.resize(scales.size() * (max_k + 1));
  parallel_for(scales.size(), [&](std::size_t si) {
    const auto stage = filtration.stage(scales[si]);
    for (int k = 0; k <= max_k; ++k) {
      auto primes = bad_primes_for_degree(stage, k);
      auto& entry = report.per_stage[si * (max_k + 1) + k];
      entry.scale = scales[si];
      entry.k = k;
      entry.primes.assign(primes.begin(), primes.end());
    }
  });
  std::set<std::uint64_t> all;
  for (const auto& e : report.per_stage) all.insert(e.primes.begin(), e.primes.end());
  report.aggregate.assign(all.begin(), all.end());
  return report;
}

/// Per-(stage, degree) comparison of dim_{Z_p} H_k against the rational Betti
/// number. A prime outside the aggregate bad set must pass everywhere.
struct GoodPrimeCertificate {
  struct Check {
    double scale = 0.0;
    int k = 0;
    long long zp_dim = 0;
    long long betti = 0;
    bool pass = false;
  };
  std::uint64_t prime = 0;
  bool pass = false;
  std::vector<Check> checks;
};

inline GoodPrimeCertificate certify_good_prime(const Filtration& filtration,
                                               std::uint64_t p, int max_k) {
  if (!is_prime_u64(p)) throw DomainError("certify_good_prime: p is composite");
  if (max_k < 0) throw DomainError("certify_good_prime: max_k must be >= 0");
  const auto& scales = filtration.scales();
  GoodPrimeCertificate cert;
  cert.prime = p;
  cert.checks.resize(scales.size() * (max_k + 1));
  const FieldSpec zp = FieldSpec::prime_field(p);
  const FieldSpec q = FieldSpec::rationals();
  parallel_for(scales.size(), [&](std::size_t si) {
    const auto stage = filtration.stage(scales[si]);
    for (int k = 0; k <= max_k; ++k) {
      auto& check = cert.checks[si * (max_k + 1) + k];
      check.scale = scales[si];
      check.k = k;
      check.zp_dim = field_homology(stage, k, zp);
      check.betti = field_homology(stage, k, q);
      check.pass = check.zp_dim == check.betti;
    }
  });
  cert.pass = true;
  for (const auto& c : cert.checks) cert.pass = cert.pass && c.pass;
  return cert;
}

}  // namespace torsionscope

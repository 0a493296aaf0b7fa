#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uidim/set_family.hpp"

namespace uidim {

struct SliceReport {
  std::size_t j = 0;
  std::size_t count = 0;
  std::optional<double> value;  // exact m·Rad(H^j) when computed
  double bound = 0;             // slice_bound(j, d)
};

/// Rademacher complexity in the expected-supremum form
/// m·Rad(H) = E_sigma[ max_{h in H} sum_{i in h} sigma_i ],
/// with sigma_i = +1 for red and -1 for uncolored.
struct RadReport {
  enum class Method { exact, monte_carlo };

  std::size_t m = 0;
  double value = 0;
  Method method = Method::exact;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> std_error;
  /// c sqrt(2 ln N) with N = |H| and c = sqrt(largest member size).
  double massart = 0;
  /// Dimension d used for the slice bounds: smallest d the family is d-bounded for.
  std::size_t slice_d = 1;
  std::vector<SliceReport> slices;
};

struct RadOptions {
  std::size_t max_ground = 22;
  unsigned threads = 1;
  /// Compute the exact value of every cardinality slice as well.
  bool exact_slices = true;
};

/// Exact expectation over all equiprobable sign vectors. Signs of elements
/// outside every member do not affect the supremum, so only 2^|union| sign
/// patterns are visited. Throws PreconditionError on an empty family and
/// InfeasibleError when m exceeds opts.max_ground.
RadReport rademacher_exact(const SetFamily& f, const RadOptions& opts = {});

/// Sample mean of the supremum over `samples` sign vectors. Samples are drawn
/// in blocks of 1024, block b from make_stream(seed, b), so the estimate does
/// not depend on the thread count.
RadReport rademacher_mc(const SetFamily& f, std::size_t samples, std::uint64_t seed,
                        const RadOptions& opts = {});

/// c sqrt(2 ln N), natural log.
double massart_bound(std::size_t n_vectors, double norm);

/// sqrt(2 (d-1) j ln(j+1)): the Massart bound for the at most (j+1)^(d-1)
/// members of size j of a d-bounded family.
double slice_bound(std::size_t j, std::size_t d);

/// sqrt(m 2D ln(e m / D)), the VC-based bound in m·Rad form.
/// Throws std::domain_error unless 1 <= D <= m.
double vc_rad_bound(std::size_t vc_dim, std::size_t m);

/// CSV rows "j,count,exact,bound" for each slice of the report.
std::string slices_csv(const RadReport& report);

}  // namespace uidim

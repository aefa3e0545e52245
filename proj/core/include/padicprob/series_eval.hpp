#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "padicprob/padic_approx.hpp"

namespace padicprob {

enum class SeriesKind { Exp, Cosh, Sinh, Log1p, Binomial };

std::string_view to_string(SeriesKind kind) noexcept;

/// Radius exponent below which exp/cosh/sinh diverge: they need
/// v_p(x) >= 1 for odd p and v_p(x) >= 2 for p = 2 (|x|_2 <= 1/4).
std::int64_t exp_min_valuation(Prime p) noexcept;

/// Evaluates an elementary power series at a p-adic argument.
///
/// Terms are summed until every remaining term provably has valuation at
/// least the running absolute precision, so the returned precision is the
/// one the inputs support (capped by `working_precision` digits for the
/// constant term). Throws Error(Domain) outside the disk of convergence:
///  * exp, cosh, sinh: |x|_p <= r_p (r_p = 1/p, r_2 = 1/4);
///  * log1p, binomial: |x|_p < 1, and for binomial the exponent a in Z_p.
PadicApprox series_eval(SeriesKind kind, const PadicApprox& x,
                        const std::optional<PadicApprox>& exponent = std::nullopt,
                        std::int64_t working_precision = kDefaultPrecision);

inline PadicApprox padic_exp(const PadicApprox& x) { return series_eval(SeriesKind::Exp, x); }
inline PadicApprox padic_cosh(const PadicApprox& x) { return series_eval(SeriesKind::Cosh, x); }
inline PadicApprox padic_sinh(const PadicApprox& x) { return series_eval(SeriesKind::Sinh, x); }
inline PadicApprox padic_log1p(const PadicApprox& x) { return series_eval(SeriesKind::Log1p, x); }
/// (1 + x)^a
inline PadicApprox padic_binomial_series(const PadicApprox& a, const PadicApprox& x) {
  return series_eval(SeriesKind::Binomial, x, a);
}

}  // namespace padicprob

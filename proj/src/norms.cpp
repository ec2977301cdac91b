#include "cantorq/norms.hpp"

#include "cantorq/errors.hpp"

namespace cantorq {

NormTable::NormTable(GammaSpec spec) : spec_(std::move(spec)) {}

void NormTable::ensure(std::size_t s) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (log_r_.empty()) {
    log_r_.push_back(real(0));  // r_0 = 1
    r_linear_.push_back(real(1));
  }
  while (log_r_.size() <= s + 1) {
    std::size_t m = log_r_.size();  // computing r_m
    real lr = log_gamma(m) + 2 * log_r_[m - 1];
    r_linear_.push_back(exp(lr));
    log_r_.push_back(std::move(lr));
  }
  while (log_norm_.size() <= s) {
    std::size_t m = log_norm_.size();
    // ||Q_{2^m}||^2 = (1 - 2 gamma_{m+1}) r_m^2 / 4
    rational one_minus = 1 - 2 * spec_.gamma(m + 1);
    log_norm_.push_back(log(to_real(one_minus)) + 2 * log_r_[m] - log(real(4)));
  }
}

LogScalar NormTable::r(std::size_t s) const {
  ensure(s);
  std::lock_guard<std::mutex> lock(mu_);
  return LogScalar::from_log(log_r_[s]);
}

const real& NormTable::r_linear(std::size_t s) const {
  ensure(s);
  std::lock_guard<std::mutex> lock(mu_);
  return r_linear_[s];
}

LogScalar NormTable::q_norm_sq(std::size_t s) const {
  ensure(s);
  std::lock_guard<std::mutex> lock(mu_);
  return LogScalar::from_log(log_norm_[s]);
}

real NormTable::gamma_real(std::size_t k) const { return to_real(spec_.gamma(k)); }

real NormTable::log_gamma(std::size_t k) const { return log(gamma_real(k)); }

real NormTable::tail_log_sum(std::size_t m) const {
  if (m == 0) throw domain_error("tail_log_sum index is 1-based");
  const std::size_t P = spec_.prefix().size();
  const std::size_t p = spec_.tail_values().size();
  real sum(0);
  for (std::size_t k = m; k <= P; ++k)
    sum += ldexp(log_gamma(k), -static_cast<long>(k));
  // Closed-form geometric tail from K = max(m, P+1), phase-aligned into the
  // period: sum_{k>=K} 2^-k log gamma_k = (sum over one period) / (1 - 2^-p).
  const std::size_t K = std::max(m, P + 1);
  real period_sum(0);
  for (std::size_t i = 0; i < p; ++i) {
    const rational& v = spec_.tail_values()[(K - P - 1 + i) % p];
    period_sum += ldexp(log(to_real(v)), -static_cast<long>(K + i));
  }
  sum += period_sum / (1 - ldexp(real(1), -static_cast<long>(p)));
  return sum;
}

real NormTable::tail_log_sum_truncated(std::size_t m, std::size_t depth) const {
  real sum(0);
  for (std::size_t k = m; k < m + depth; ++k)
    sum += ldexp(log_gamma(k), -static_cast<long>(k));
  return sum;
}

LogScalar NormTable::capacity() const {
  return LogScalar::from_log(tail_log_sum(1));
}

}  // namespace cantorq

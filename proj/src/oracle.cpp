#include "cantorq/oracle.hpp"

#include "cantorq/errors.hpp"

namespace cantorq {

DiscreteMeasure DiscreteMeasure::nu(const NormTable& nt, unsigned s) {
  NodeSet ns = chebyshev_nodes(nt, s);
  DiscreteMeasure m;
  m.weights.assign(ns.nodes.size(), ns.weight());
  m.nodes = std::move(ns.nodes);
  return m;
}

namespace {

// In-place helpers over coefficient vectors; compound ops keep the mpfr
// temporaries out of the inner loops.
real dot(const std::vector<real>& a, const std::vector<real>& b) {
  real acc(0), t(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    t = a[i];
    t *= b[i];
    acc += t;
  }
  return acc;
}

void axpy(std::vector<real>& y, const real& c, const std::vector<real>& x) {
  real t(0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    t = c;
    t *= x[i];
    y[i] -= t;
  }
}

}  // namespace

Recurrence stieltjes(const DiscreteMeasure& measure, std::size_t M) {
  const std::size_t N = measure.nodes.size();
  if (N == 0 || measure.weights.size() != N)
    throw domain_error("stieltjes: malformed measure");
  if (M >= N)
    throw domain_error("stieltjes: M must be below the node count");

  // Lanczos on X = diag(nodes), starting vector sqrt(weights). Vectors are
  // weighted orthonormal polynomial values q_j[i] = p_j(x_i) sqrt(w_i); the
  // recurrence coefficients are exactly the Jacobi parameters of the
  // discrete measure.
  std::vector<std::vector<real>> q;
  q.reserve(M + 1);
  {
    std::vector<real> q0(N);
    real total(0);
    for (std::size_t i = 0; i < N; ++i) {
      if (!(measure.weights[i] > 0)) throw domain_error("stieltjes: weights must be positive");
      q0[i] = sqrt(measure.weights[i]);
      total += measure.weights[i];
    }
    real norm = sqrt(total);
    for (auto& v : q0) v /= norm;
    q.push_back(std::move(q0));
  }

  Recurrence rec;
  rec.a.reserve(M);
  rec.b.reserve(M);
  std::vector<real> v(N);
  real t(0);
  for (std::size_t j = 0; j < M; ++j) {
    const std::vector<real>& qj = q.back();
    for (std::size_t i = 0; i < N; ++i) {
      t = measure.nodes[i];
      t *= qj[i];
      v[i] = t;
    }
    real bj = dot(v, qj);
    axpy(v, bj, qj);
    if (j > 0) axpy(v, rec.a.back(), q[j - 1]);
    // full reorthogonalization: one modified Gram-Schmidt pass over every
    // previous vector
    for (const auto& qi : q) axpy(v, dot(v, qi), qi);
    real norm_sq = dot(v, v);
    if (!(norm_sq > 0))
      throw precision_error("stieltjes breakdown at step " + std::to_string(j + 1) +
                            ": nonpositive norm (precision exhausted)");
    real aj = sqrt(norm_sq);
    rec.b.push_back(std::move(bj));
    rec.a.push_back(aj);
    std::vector<real> qn(N);
    for (std::size_t i = 0; i < N; ++i) qn[i] = v[i] / aj;
    q.push_back(std::move(qn));
  }
  return rec;
}

JacobiComparison compare_jacobi(const GammaSpec& spec, unsigned s, std::size_t M,
                                const real& tol) {
  if (s < 3) throw domain_error("compare_jacobi needs s >= 3 (for the s-2 Cauchy check)");
  if (M > (std::size_t{1} << (s - 2)))
    throw domain_error("compare_jacobi caps M at 2^(s-2); discrete-measure coefficients "
                       "are not meaningful near the node count");

  NormTable nt(spec);
  Recurrence coarse = stieltjes(DiscreteMeasure::nu(nt, s - 2), M);
  Recurrence fine = stieltjes(DiscreteMeasure::nu(nt, s), M);
  JacobiTable table = JacobiTable::compute(spec, M);

  JacobiComparison cmp;
  cmp.level = s;
  cmp.M = M;
  cmp.max_deviation = 0;
  cmp.oracle_cauchy = 0;
  cmp.max_b_offset = 0;
  cmp.deviations.reserve(M);
  real half = real(1) / 2;
  for (std::size_t j = 0; j < M; ++j) {
    real dev = abs(fine.a[j] - table.a(j + 1));
    if (dev > cmp.max_deviation) cmp.max_deviation = dev;
    cmp.deviations.push_back(std::move(dev));
    real cauchy = abs(fine.a[j] - coarse.a[j]);
    if (cauchy > cmp.oracle_cauchy) cmp.oracle_cauchy = cauchy;
    real boff = abs(fine.b[j] - half);
    if (boff > cmp.max_b_offset) cmp.max_b_offset = boff;
  }
  cmp.pass = cmp.max_deviation < tol;
  return cmp;
}

NuQuadrature::NuQuadrature(const NormTable& nt, unsigned level, unsigned max_word_level)
    : level_(level), nodes_(chebyshev_nodes(nt, level)) {
  const std::size_t N = nodes_.nodes.size();
  q_.assign(max_word_level + 1, std::vector<real>(N));
  // One tower sweep per node fills every level.
  for (std::size_t i = 0; i < N; ++i) {
    real p = nodes_.nodes[i] - 1;
    for (unsigned m = 0;; ++m) {
      q_[m][i] = p + nt.r_linear(m) / 2;
      if (m == max_word_level) break;
      p = p * (p + nt.r_linear(m));
    }
  }
}

real NuQuadrature::word_integral(const AWord& w) const {
  if (w.top_level() >= q_.size())
    throw domain_error("word level " + std::to_string(w.top_level()) +
                       " above the cached maximum");
  const std::size_t N = nodes_.nodes.size();
  std::vector<real> terms(N, real(1));
  real t(0);
  for (const auto& f : w.factors()) {
    const std::vector<real>& qm = q_[f.level];
    for (std::size_t i = 0; i < N; ++i) {
      t = qm[i];
      if (f.exponent == 2) t *= qm[i];
      terms[i] *= t;
    }
  }
  // pairwise tree sum
  std::size_t len = N;
  while (len > 1) {
    std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) terms[i] += terms[len - 1 - i];
    len = (len + 1) / 2;
  }
  return terms[0] * nodes_.weight();
}

}  // namespace cantorq

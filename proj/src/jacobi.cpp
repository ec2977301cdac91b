#include "cantorq/jacobi.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "cantorq/errors.hpp"
#include "cantorq/words.hpp"

namespace cantorq {

namespace {

constexpr char kCheckpointMagic[4] = {'C', 'Q', 'J', 'T'};
constexpr std::uint32_t kCheckpointVersion = 1;

std::string real_to_hex(const real& x) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%Ra", x.backend().data());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

real real_from_hex(const std::string& s) {
  real out;
  if (mpfr_set_str(out.backend().data(), s.c_str(), 0, MPFR_RNDN) != 0)
    throw config_error("corrupt checkpoint value");
  return out;
}

template <typename T>
void write_pod(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
bool read_pod(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof v));
}

void save_checkpoint(const std::string& path, std::uint64_t spec_hash, unsigned bits,
                     const std::vector<real>& log_a2, std::size_t count) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw config_error("cannot write checkpoint '" + path + "'");
    os.write(kCheckpointMagic, 4);
    write_pod(os, kCheckpointVersion);
    write_pod(os, spec_hash);
    write_pod(os, static_cast<std::uint32_t>(bits));
    write_pod(os, static_cast<std::uint64_t>(count));
    for (std::size_t i = 1; i <= count; ++i) {
      std::string hex = real_to_hex(log_a2[i]);
      write_pod(os, static_cast<std::uint32_t>(hex.size()));
      os.write(hex.data(), static_cast<std::streamsize>(hex.size()));
    }
  }
  std::filesystem::rename(tmp, path);
}

// Returns the stored log a_n^2 values (1-based in the output vector) or an
// empty vector when the file is absent, stale or from a different spec or
// precision.
std::vector<real> load_checkpoint(const std::string& path, std::uint64_t spec_hash,
                                  unsigned bits, std::size_t max_needed) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return {};
  char magic[4];
  std::uint32_t version = 0, file_bits = 0;
  std::uint64_t file_hash = 0, count = 0;
  if (!is.read(magic, 4) || std::memcmp(magic, kCheckpointMagic, 4) != 0) return {};
  if (!read_pod(is, version) || version != kCheckpointVersion) return {};
  if (!read_pod(is, file_hash) || file_hash != spec_hash) return {};
  if (!read_pod(is, file_bits) || file_bits != bits) return {};
  if (!read_pod(is, count)) return {};
  count = std::min<std::uint64_t>(count, max_needed);
  std::vector<real> out;
  out.reserve(count + 1);
  out.emplace_back(0);  // unused slot 0
  for (std::uint64_t i = 1; i <= count; ++i) {
    std::uint32_t len = 0;
    if (!read_pod(is, len) || len > 1u << 20) return {};
    std::string hex(len, '\0');
    if (!is.read(hex.data(), len)) return {};
    out.push_back(real_from_hex(hex));
  }
  return out;
}

struct LossState {
  double high_water = 0;
  double limit = 0;

  void note(double lost) {
    if (lost > high_water) high_water = lost;
    if (lost > limit)
      throw precision_error("recurrence numerator lost " + std::to_string(lost) +
                            " bits to cancellation (limit " + std::to_string(limit) + ")");
  }
};

// log(e^X - e^Y) for X > Y, metering the cancelled bits.
real log_diff(const real& X, const real& Y, LossState& loss) {
  real d = Y - X;
  if (!(d < 0))
    throw precision_error("recurrence numerator is nonpositive at working precision");
  real one_minus = -mp_expm1(d);  // 1 - exp(d) > 0
  real lr = log(one_minus);
  double lost = -lr.convert_to<double>() / std::log(2.0);
  loss.note(lost < 0 ? 0 : lost);
  return X + lr;
}

}  // namespace

JacobiTable JacobiTable::compute(const GammaSpec& spec, std::size_t N,
                                 const JacobiOptions& options) {
  if (N < 1) throw domain_error("jacobi table needs N >= 1");
  unsigned bits = options.precision_bits ? options.precision_bits : spec.precision_bits();
  for (;;) {
    try {
      precision_scope scope(bits);
      NormTable nt(spec);

      JacobiTable t;
      t.spec_ = spec;
      t.size_ = N;
      t.precision_bits_ = bits;
      t.log_a2_.assign(N + 1, real(0));
      t.prefix2_.assign(N + 1, real(0));

      LossState loss;
      loss.limit = options.max_loss_bits > 0 ? options.max_loss_bits : bits / 2.0;

      std::size_t start = 1;
      if (!options.checkpoint_path.empty()) {
        auto restored = load_checkpoint(options.checkpoint_path, spec.hash(), bits, N);
        if (restored.size() > 1) {
          for (std::size_t i = 1; i < restored.size(); ++i) {
            t.log_a2_[i] = restored[i];
            t.prefix2_[i] = t.prefix2_[i - 1] + t.log_a2_[i];
          }
          start = restored.size();
        }
      }

      for (std::size_t n = start; n <= N; ++n) {
        if (n == 1) {
          t.log_a2_[1] = nt.q_norm_sq(0).log_value();
        } else if (n == 2) {
          t.log_a2_[2] = nt.q_norm_sq(1).log_value() - nt.q_norm_sq(0).log_value();
        } else {
          auto [s, k] = decompose_index(n);
          if (k == 0) {
            // n = 2^s: a_n = ||Q_{2^s}|| / (||Q_{2^{s-1}}|| a_{2^{s-1}+1} ... a_{2^s-1})
            std::size_t half = n >> 1;
            t.log_a2_[n] = nt.q_norm_sq(s).log_value() - nt.q_norm_sq(s - 1).log_value() -
                           (t.prefix2_[n - 1] - t.prefix2_[half]);
          } else if (s == 0) {
            // odd n: a_n^2 = a_1^2 - a_{n-1}^2 (the denominator is absent)
            t.log_a2_[n] = log_diff(t.log_a2_[1], t.log_a2_[n - 1], loss);
          } else {
            // numerator ||Q_{2^s}||^2 minus the block ending at 2^{s+1} k,
            // then divide by the partial block (2^{s+1} k, n-1].
            std::size_t even_end = static_cast<std::size_t>(k) << (s + 1);
            real numerator =
                log_diff(nt.q_norm_sq(s).log_value(),
                         t.prefix2_[even_end] - t.prefix2_[even_end - (std::size_t{1} << s)],
                         loss);
            t.log_a2_[n] = numerator - (t.prefix2_[n - 1] - t.prefix2_[even_end]);
          }
        }
        t.prefix2_[n] = t.prefix2_[n - 1] + t.log_a2_[n];
        if (!options.checkpoint_path.empty() && n % options.checkpoint_chunk == 0)
          save_checkpoint(options.checkpoint_path, spec.hash(), bits, t.log_a2_, n);
      }
      if (!options.checkpoint_path.empty())
        save_checkpoint(options.checkpoint_path, spec.hash(), bits, t.log_a2_, N);

      t.loss_bits_ = loss.high_water;
      return t;
    } catch (const precision_error& e) {
      if (bits * 2 > options.max_precision_bits)
        throw precision_error(std::string(e.what()) + " (precision ceiling " +
                              std::to_string(options.max_precision_bits) + " reached)");
      bits *= 2;
    }
  }
}

real JacobiTable::a(std::size_t n) const {
  return exp(a_log(n).log_value());
}

LogScalar JacobiTable::a_log(std::size_t n) const {
  if (n < 1 || n > size_) throw domain_error("jacobi index out of range");
  return LogScalar::from_log(log_a2_[n] / 2);
}

LogScalar JacobiTable::prefix_product_sq(std::size_t n) const {
  if (n > size_) throw domain_error("prefix index out of range");
  return LogScalar::from_log(prefix2_[n]);
}

LogScalar JacobiTable::block_product(std::size_t n, unsigned s) const {
  std::size_t len = std::size_t{1} << s;
  if (n > size_ || n < len)
    throw domain_error("block window [" + std::to_string(n - len + 1) + ", " +
                       std::to_string(n) + "] not inside the table");
  return LogScalar::from_log(prefix2_[n] - prefix2_[n - len]);
}

Jac3Bounds jac3_bounds(const NormTable& nt, unsigned s) {
  if (!nt.spec().jac3_regime())
    throw domain_error("jac3 bounds require every gamma <= 1/6");
  rational g = nt.spec().gamma(s + 1);
  rational c_rat = 4 * g * g / ((1 - 2 * g) * (1 - 2 * g));
  Jac3Bounds b;
  b.c = to_real(c_rat);
  b.C = 2 / (1 + sqrt(to_real(1 - 4 * c_rat)));
  LogScalar norm = nt.q_norm_sq(s);
  b.odd_upper = norm;
  b.odd_lower = LogScalar::from_log(norm.log_value() - log(b.C));
  b.even_upper =
      LogScalar::from_log(log(b.C) + nt.q_norm_sq(s + 1).log_value() - norm.log_value());
  return b;
}

std::vector<LimitProfileEntry> limit_profile(const JacobiTable& table, std::size_t j,
                                             std::size_t n, unsigned s_min, unsigned s_max) {
  if (j < 1) throw domain_error("limit profile needs j >= 1");
  std::vector<LimitProfileEntry> out;
  real a_limit = (n == 0) ? real(0) : table.a(n);
  for (unsigned s = s_min; s <= s_max; ++s) {
    std::size_t index = (j << s) + n;
    if (index > table.size())
      throw domain_error("limit profile index " + std::to_string(index) +
                         " exceeds table size " + std::to_string(table.size()));
    LimitProfileEntry e;
    e.s = s;
    e.index = index;
    e.a_index = table.a(index);
    e.a_limit = a_limit;
    e.deviation = abs(e.a_index - a_limit);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace cantorq

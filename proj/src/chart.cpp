#include "dgeo/chart.hpp"

#include <cmath>
#include <random>

#include "dgeo/errors.hpp"

namespace dgeo {
namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double halton(std::uint64_t i, int base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

// Fraction of the inner interval kept clear near each edge so that nested
// finite-difference stencils of sampled points never leave the box.
constexpr double kStencilInset = 0.01;

}  // namespace

Chart::Chart(std::vector<Interval> domain, std::vector<double> margins,
             FdPolicy fd)
    : domain_(std::move(domain)), margins_(std::move(margins)), fd_(fd) {
  if (domain_.empty()) throw ConfigError("chart dimension must be >= 1");
  if (margins_.size() != domain_.size())
    throw ConfigError("margins must match the chart dimension");
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (!(std::isfinite(domain_[i].lo) && std::isfinite(domain_[i].hi)))
      throw ConfigError("chart domain must be finite");
    if (margins_[i] < 0.0) throw ConfigError("margins must be non-negative");
    if (domain_[i].length() - 2.0 * margins_[i] <= 0.0)
      throw ConfigError("chart interval has no interior after margin removal");
  }
}

namespace {
std::vector<double> default_margins(const std::vector<Interval>& domain) {
  std::vector<double> m;
  m.reserve(domain.size());
  for (const Interval& iv : domain) m.push_back(1e-3 * iv.length());
  return m;
}
}  // namespace

Chart::Chart(std::vector<Interval> domain, FdPolicy fd)
    : Chart(domain, default_margins(domain), fd) {}

Interval Chart::inner(int i) const {
  return {domain_[i].lo + margins_[i], domain_[i].hi - margins_[i]};
}

bool Chart::contains(const Vec& x) const {
  if (x.size() != dimension()) return false;
  for (int i = 0; i < dimension(); ++i) {
    const Interval iv = inner(i);
    if (!(x[i] >= iv.lo && x[i] <= iv.hi)) return false;
  }
  return true;
}

Chart Chart::shrunk(double fraction) const {
  std::vector<double> m = margins_;
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] += fraction * domain_[i].length();
  return Chart(domain_, m, fd_);
}

std::vector<Vec> Chart::sample(int count, std::uint64_t seed) const {
  if (count < 1) throw ConfigError("sample count must be >= 1");
  const int n = dimension();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Cranley-Patterson rotation makes the low-discrepancy half seed-dependent.
  std::vector<double> shift(n);
  for (double& s : shift) s = unit(rng);

  std::vector<Vec> pts;
  pts.reserve(count);
  for (int j = 0; j < count; ++j) {
    Vec x(n);
    for (int d = 0; d < n; ++d) {
      double u;
      if (j % 2 == 0) {
        u = halton(static_cast<std::uint64_t>(j / 2) + 1,
                   kPrimes[d % (sizeof(kPrimes) / sizeof(kPrimes[0]))]);
        u += shift[d];
        u -= std::floor(u);
      } else {
        u = unit(rng);
      }
      const Interval iv = inner(d);
      const double inset = kStencilInset * iv.length();
      x[d] = iv.lo + inset + u * (iv.length() - 2.0 * inset);
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

std::vector<Vec> sample_points(const Chart& chart, int count,
                               std::uint64_t seed) {
  return chart.sample(count, seed);
}

}  // namespace dgeo

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "crossedk/zn_action.hpp"

namespace crossedk {

Matrix random_unitary(Index n, Rng& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  // Phase fix so the distribution is Haar, not biased by the QR convention.
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

namespace {

std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

}  // namespace

ActionSpec random_action_spec(const std::vector<int>& layout, int n, Rng& rng) {
  const auto m = layout.size();
  std::vector<int> offset(m, 0);
  for (std::size_t i = 1; i < m; ++i) offset[i] = offset[i - 1] + layout[i - 1];
  const Index total = m == 0 ? 0 : offset.back() + layout.back();

  std::map<int, std::vector<int>> by_size;
  for (std::size_t i = 0; i < m; ++i) by_size[layout[i]].push_back(static_cast<int>(i));

  std::vector<std::vector<int>> cycles;
  const auto divs = divisors(n);
  for (auto& [size, members] : by_size) {
    std::shuffle(members.begin(), members.end(), rng);
    std::size_t pos = 0;
    while (pos < members.size()) {
      std::vector<int> fits;
      for (int d : divs)
        if (static_cast<std::size_t>(d) <= members.size() - pos) fits.push_back(d);
      const int len = fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)];
      cycles.emplace_back(members.begin() + static_cast<long>(pos), members.begin() + static_cast<long>(pos + len));
      pos += static_cast<std::size_t>(len);
    }
  }

  ActionSpec spec{Matrix::Zero(total, total), std::vector<int>(m, 0)};
  std::vector<Matrix> u(m);
  for (const auto& c : cycles) {
    const auto len = c.size();
    for (std::size_t j = 0; j < len; ++j) spec.block_permutation[static_cast<std::size_t>(c[j])] = c[(j + 1) % len];
    const Index d = layout[static_cast<std::size_t>(c[0])];
    for (std::size_t j = 1; j < len; ++j) u[static_cast<std::size_t>(c[j])] = random_unitary(d, rng);

    // Going once around the cycle conjugates block c[0] by
    // U_{c0} U_{c_{L-1}} ... U_{c1}; make that a unitary whose (n/L)-th power is 1.
    const int period = n / static_cast<int>(len);
    std::uniform_int_distribution<int> expo(0, period - 1);
    Matrix diag = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
      diag(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * expo(rng) / period);
    }
    const Matrix v = random_unitary(d, rng);
    const Matrix loop = v * diag * v.adjoint();
    Matrix rest = Matrix::Identity(d, d);
    for (std::size_t j = len - 1; j >= 1; --j) rest = rest * u[static_cast<std::size_t>(c[j])];
    u[static_cast<std::size_t>(c[0])] = loop * rest.adjoint();
  }
  for (std::size_t i = 0; i < m; ++i) spec.unitary.block(offset[i], offset[i], layout[i], layout[i]) = u[i];
  return spec;
}

}  // namespace crossedk

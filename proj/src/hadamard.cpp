#include "graphbell/hadamard.hpp"

#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace graphbell {

bool is_hadamard(const Eigen::MatrixXi& m) {
  if (m.rows() != m.cols()) return false;
  if (!(m.array() == 1 || m.array() == -1).all()) return false;
  const auto n = m.rows();
  return m * m.transpose() == Eigen::MatrixXi::Identity(n, n) * static_cast<int>(n);
}

HadamardMatrix::HadamardMatrix(Eigen::MatrixXi entries) : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (n > 2 && n % 4 != 0) throw std::invalid_argument("Hadamard order must be 1, 2 or a multiple of 4");
  if (!is_hadamard(entries_)) throw std::logic_error("rows are not a Hadamard system");
}

bool HadamardMatrix::rows_even() const {
  for (Eigen::Index i = 0; i < entries_.rows(); ++i)
    if ((entries_.row(i).array() == -1).count() % 2 != 0) return false;
  return true;
}

HadamardMatrix HadamardMatrix::normalized_even() const {
  Eigen::MatrixXi m = entries_;
  if (!rows_even()) m.col(0) *= -1;
  HadamardMatrix out(std::move(m));
  if (!out.rows_even()) throw std::logic_error("rows of mixed parity");
  return out;
}

std::string HadamardMatrix::to_text() const {
  std::string s;
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index k = 0; k < entries_.cols(); ++k) s += entries_(i, k) > 0 ? '+' : '-';
    s += '\n';
  }
  return s;
}

HadamardMatrix HadamardMatrix::from_text(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(line);
  Eigen::MatrixXi m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("Hadamard text is not square");
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[i][k] != '+' && rows[i][k] != '-') throw std::invalid_argument("Hadamard text must use + and -");
      m(i, k) = rows[i][k] == '+' ? 1 : -1;
    }
  }
  return HadamardMatrix(std::move(m));
}

HadamardMatrix sylvester(int k) {
  if (k < 0 || k > 10) throw std::invalid_argument("Sylvester order exponent must lie in 0..10");
  Eigen::MatrixXi h = Eigen::MatrixXi::Ones(1, 1);
  for (int step = 0; step < k; ++step) {
    const auto n = h.rows();
    Eigen::MatrixXi next(2 * n, 2 * n);
    next << h, h, h, -h;
    h = std::move(next);
  }
  return HadamardMatrix(std::move(h));
}

namespace {

// GF(p^e) with elements as base-p digit vectors, reduced modulo a monic
// irreducible polynomial found by search.
class FiniteField {
 public:
  FiniteField(int p, int e) : p_(p), e_(e) {
    q_ = 1;
    for (int i = 0; i < e; ++i) q_ *= p;
    modulus_ = find_irreducible();
  }
  int size() const { return q_; }
  int sub(int a, int b) const {
    auto x = digits(a), y = digits(b);
    for (int i = 0; i < e_; ++i) x[i] = ((x[i] - y[i]) % p_ + p_) % p_;
    return value(x);
  }
  int mul(int a, int b) const { return value(reduce(poly_mul(digits(a), digits(b)), modulus_)); }

 private:
  std::vector<int> digits(int a) const {
    std::vector<int> d(e_);
    for (int i = 0; i < e_; ++i, a /= p_) d[i] = a % p_;
    return d;
  }
  int value(const std::vector<int>& d) const {
    int v = 0;
    for (int i = e_ - 1; i >= 0; --i) v = v * p_ + d[i];
    return v;
  }
  std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
    return r;
  }
  // Remainder modulo a monic polynomial of degree e (coefficients low to high).
  std::vector<int> reduce(std::vector<int> a, const std::vector<int>& m) const {
    for (int deg = static_cast<int>(a.size()) - 1; deg >= e_; --deg) {
      int c = a[deg];
      if (!c) continue;
      for (int i = 0; i <= e_; ++i) a[deg - e_ + i] = ((a[deg - e_ + i] - c * m[i]) % p_ + p_) % p_;
    }
    a.resize(e_);
    return a;
  }
  std::vector<int> find_irreducible() const {
    // A monic polynomial of degree e <= 3 is irreducible iff it has no root.
    if (e_ > 3) throw std::invalid_argument("field extension degree above 3 not supported");
    for (int code = 0; code < q_; ++code) {
      std::vector<int> m(e_ + 1);
      int c = code;
      for (int i = 0; i < e_; ++i, c /= p_) m[i] = c % p_;
      m[e_] = 1;
      bool root = false;
      for (int x = 0; x < p_ && !root; ++x) {
        int v = 0;
        for (int i = e_; i >= 0; --i) v = (v * x + m[i]) % p_;
        root = v == 0;
      }
      if (!root) return m;
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  int p_, e_, q_ = 1;
  std::vector<int> modulus_;
};

}  // namespace

HadamardMatrix paley_type1(int p, int e) {
  FiniteField f(p, e);
  const int q = f.size();
  if (q % 4 != 3) throw std::invalid_argument("Paley type I needs q = 3 mod 4");
  std::set<int> squares;
  for (int x = 1; x < q; ++x) squares.insert(f.mul(x, x));
  auto chi = [&](int a) { return a == 0 ? 0 : (squares.count(a) ? 1 : -1); };
  // H = I + S with S = [[0, 1^T], [-1, Q]], Q_ab = chi(a - b).
  Eigen::MatrixXi h = Eigen::MatrixXi::Identity(q + 1, q + 1);
  for (int a = 0; a < q; ++a) {
    h(0, a + 1) += 1;
    h(a + 1, 0) -= 1;
    for (int b = 0; b < q; ++b) h(a + 1, b + 1) += chi(f.sub(a, b));
  }
  return HadamardMatrix(std::move(h));
}

HadamardMatrix paley_h28() { return paley_type1(3, 3).normalized_even(); }

}  // namespace graphbell

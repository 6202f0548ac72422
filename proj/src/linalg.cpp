#include "ppqkd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ppqkd {

// ---------------------------------------------------------------- layout

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
  std::set<std::string> seen;
  for (const auto& s : subsystems_) {
    if (s.dim < 2) throw std::invalid_argument("subsystem '" + s.label + "' has dimension < 2");
    if (!seen.insert(s.label).second)
      throw std::invalid_argument("duplicate subsystem label '" + s.label + "'");
  }
}

SystemLayout SystemLayout::flat(std::size_t n, std::string label) {
  return SystemLayout({{std::move(label), n}});
}

std::size_t SystemLayout::dimension() const {
  std::size_t d = 1;
  for (const auto& s : subsystems_) d *= s.dim;
  return d;
}

std::size_t SystemLayout::position(const std::string& label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i)
    if (subsystems_[i].label == label) return i;
  throw std::invalid_argument("unknown subsystem label '" + label + "'");
}

std::size_t SystemLayout::dim_of(const std::string& label) const {
  return subsystems_[position(label)].dim;
}

bool SystemLayout::contains(const std::string& label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

std::vector<std::size_t> SystemLayout::strides() const {
  std::vector<std::size_t> st(subsystems_.size());
  std::size_t acc = 1;
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    st[i] = acc;
    acc *= subsystems_[i].dim;
  }
  return st;
}

std::vector<std::size_t> SystemLayout::digits(std::size_t index) const {
  std::vector<std::size_t> d(subsystems_.size());
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    d[i] = index % subsystems_[i].dim;
    index /= subsystems_[i].dim;
  }
  return d;
}

std::size_t SystemLayout::index(std::span<const std::size_t> digits) const {
  if (digits.size() != subsystems_.size()) throw std::invalid_argument("digit count mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= subsystems_[i].dim) throw std::out_of_range("basis digit out of range");
    idx = idx * subsystems_[i].dim + digits[i];
  }
  return idx;
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  auto subs = subsystems_;
  subs.insert(subs.end(), other.subsystems_.begin(), other.subsystems_.end());
  return SystemLayout(std::move(subs));
}

SystemLayout SystemLayout::restrict_to(const std::vector<std::string>& labels) const {
  std::vector<Subsystem> subs;
  for (const auto& s : subsystems_)
    if (std::find(labels.begin(), labels.end(), s.label) != labels.end()) subs.push_back(s);
  return SystemLayout(std::move(subs));
}

bool operator==(const SystemLayout& a, const SystemLayout& b) {
  if (a.subsystems_.size() != b.subsystems_.size()) return false;
  for (std::size_t i = 0; i < a.subsystems_.size(); ++i)
    if (a.subsystems_[i].label != b.subsystems_[i].label || a.subsystems_[i].dim != b.subsystems_[i].dim)
      return false;
  return true;
}

// ---------------------------------------------------------------- ket

Ket::Ket(SystemLayout layout) : layout_(std::move(layout)), amps_(layout_.dimension()) {}

Ket::Ket(SystemLayout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.dimension())
    throw std::invalid_argument("ket length does not match layout dimension");
}

Ket Ket::basis(const SystemLayout& layout, std::span<const std::size_t> digits) {
  Ket k(layout);
  k.amps_[layout.index(digits)] = 1.0;
  return k;
}

double Ket::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double Ket::norm() const { return std::sqrt(norm_squared()); }

Ket& Ket::operator+=(const Ket& other) {
  if (!(layout_ == other.layout_)) throw std::invalid_argument("ket layout mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
  return *this;
}

Ket& Ket::operator-=(const Ket& other) {
  if (!(layout_ == other.layout_)) throw std::invalid_argument("ket layout mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= other.amps_[i];
  return *this;
}

Ket& Ket::operator*=(Complex s) {
  for (auto& a : amps_) a *= s;
  return *this;
}

Ket operator+(Ket a, const Ket& b) { return a += b; }
Ket operator-(Ket a, const Ket& b) { return a -= b; }
Ket operator*(Complex s, Ket k) { return k *= s; }

Complex inner(const Ket& bra, const Ket& ket) {
  if (bra.dimension() != ket.dimension()) throw std::invalid_argument("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < ket.dimension(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

// ---------------------------------------------------------------- operator

ComplexOperator::ComplexOperator(SystemLayout layout)
    : layout_(std::move(layout)), dim_(layout_.dimension()), data_(dim_ * dim_) {}

ComplexOperator::ComplexOperator(SystemLayout layout, std::vector<Complex> row_major)
    : layout_(std::move(layout)), dim_(layout_.dimension()), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_)
    throw std::invalid_argument("operator entry count does not match layout dimension");
}

ComplexOperator ComplexOperator::identity(const SystemLayout& layout) {
  ComplexOperator m(layout);
  for (std::size_t i = 0; i < m.dim_; ++i) m(i, i) = 1.0;
  return m;
}

ComplexOperator ComplexOperator::diagonal(const SystemLayout& layout, std::span<const Complex> diag) {
  ComplexOperator m(layout);
  if (diag.size() != m.dim_) throw std::invalid_argument("diagonal length mismatch");
  for (std::size_t i = 0; i < m.dim_; ++i) m(i, i) = diag[i];
  return m;
}

ComplexOperator ComplexOperator::outer(const Ket& a, const Ket& b) {
  if (!(a.layout() == b.layout())) throw std::invalid_argument("outer: layout mismatch");
  ComplexOperator m(a.layout());
  for (std::size_t r = 0; r < m.dim_; ++r)
    for (std::size_t c = 0; c < m.dim_; ++c) m(r, c) = a[r] * std::conj(b[c]);
  return m;
}

ComplexOperator ComplexOperator::projector(const Ket& k) { return outer(k, k); }

Complex ComplexOperator::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexOperator ComplexOperator::adjoint() const {
  ComplexOperator m(layout_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

double ComplexOperator::hermiticity_error() const {
  double e = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      e = std::max(e, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return e;
}

double ComplexOperator::max_abs() const {
  double e = 0.0;
  for (const auto& z : data_) e = std::max(e, std::abs(z));
  return e;
}

ComplexOperator& ComplexOperator::operator+=(const ComplexOperator& other) {
  if (dim_ != other.dim_) throw std::invalid_argument("operator dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexOperator& ComplexOperator::operator-=(const ComplexOperator& other) {
  if (dim_ != other.dim_) throw std::invalid_argument("operator dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexOperator& ComplexOperator::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexOperator operator+(ComplexOperator a, const ComplexOperator& b) { return a += b; }
ComplexOperator operator-(ComplexOperator a, const ComplexOperator& b) { return a -= b; }
ComplexOperator operator*(Complex s, ComplexOperator m) { return m *= s; }

ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b) {
  const std::size_t n = a.dimension();
  if (n != b.dimension()) throw std::invalid_argument("operator product: dimension mismatch");
  ComplexOperator m(a.layout());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

Ket operator*(const ComplexOperator& m, const Ket& k) {
  const std::size_t n = m.dimension();
  if (n != k.dimension()) throw std::invalid_argument("operator-ket product: dimension mismatch");
  Ket out(k.layout());
  for (std::size_t r = 0; r < n; ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += m(r, c) * k[c];
    out[r] = s;
  }
  return out;
}

Complex expectation(const Ket& bra, const ComplexOperator& m, const Ket& ket) {
  return inner(bra, m * ket);
}

// ---------------------------------------------------------------- tensor products

Ket tensor_product(const Ket& a, const Ket& b) {
  std::vector<Complex> amps(a.dimension() * b.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i)
    for (std::size_t j = 0; j < b.dimension(); ++j) amps[i * b.dimension() + j] = a[i] * b[j];
  return Ket(a.layout().concat(b.layout()), std::move(amps));
}

ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b) {
  const std::size_t na = a.dimension(), nb = b.dimension(), n = na * nb;
  std::vector<Complex> data(n * n);
  for (std::size_t ra = 0; ra < na; ++ra)
    for (std::size_t ca = 0; ca < na; ++ca) {
      const Complex x = a(ra, ca);
      if (x == Complex{}) continue;
      for (std::size_t rb = 0; rb < nb; ++rb)
        for (std::size_t cb = 0; cb < nb; ++cb)
          data[(ra * nb + rb) * n + (ca * nb + cb)] = x * b(rb, cb);
    }
  return ComplexOperator(a.layout().concat(b.layout()), std::move(data));
}

// ---------------------------------------------------------------- subsystem actions

namespace {

// Splits full basis indices into (offset of target digits) + (offset of the rest).
struct SubsystemSplit {
  std::vector<std::size_t> target_offsets;  // indexed by op basis index
  std::vector<std::size_t> rest_offsets;    // one per configuration of the other factors
};

// Full-index offsets for every digit configuration of the given positions,
// enumerated row-major in the order the positions are listed.
std::vector<std::size_t> offsets_for(const SystemLayout& layout, const std::vector<std::size_t>& positions) {
  const auto strides = layout.strides();
  std::vector<std::size_t> offsets{0};
  for (std::size_t pos : positions) {
    const std::size_t d = layout.subsystems()[pos].dim;
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * d);
    for (std::size_t base : offsets)
      for (std::size_t k = 0; k < d; ++k) next.push_back(base + k * strides[pos]);
    offsets = std::move(next);
  }
  return offsets;
}

SubsystemSplit split_for(const SystemLayout& layout, const std::vector<std::string>& targets,
                         std::size_t op_dim) {
  std::vector<std::size_t> tpos;
  std::size_t tdim = 1;
  for (const auto& label : targets) {
    const std::size_t p = layout.position(label);
    if (std::find(tpos.begin(), tpos.end(), p) != tpos.end())
      throw std::invalid_argument("target label '" + label + "' listed twice");
    tpos.push_back(p);
    tdim *= layout.subsystems()[p].dim;
  }
  if (tdim != op_dim)
    throw std::invalid_argument("operator dimension " + std::to_string(op_dim) +
                                " does not match target dimension " + std::to_string(tdim));
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (std::find(tpos.begin(), tpos.end(), i) == tpos.end()) rest.push_back(i);
  return {offsets_for(layout, tpos), offsets_for(layout, rest)};
}

// out[:, col] = (op ⊗ I) in[:, col] for a column-strided buffer.
void apply_left(const ComplexOperator& op, const SubsystemSplit& split, const Complex* in,
                Complex* out, std::size_t ncols) {
  const std::size_t d = op.dimension();
  for (std::size_t base : split.rest_offsets)
    for (std::size_t r = 0; r < d; ++r) {
      const std::size_t row = base + split.target_offsets[r];
      for (std::size_t col = 0; col < ncols; ++col) {
        Complex s = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          const Complex w = op(r, c);
          if (w != Complex{}) s += w * in[(base + split.target_offsets[c]) * ncols + col];
        }
        out[row * ncols + col] = s;
      }
    }
}

}  // namespace

Ket apply_to_subsystems(const ComplexOperator& op, const std::vector<std::string>& targets,
                        const Ket& state) {
  const auto split = split_for(state.layout(), targets, op.dimension());
  std::vector<Complex> out(state.dimension());
  apply_left(op, split, state.amplitudes().data(), out.data(), 1);
  return Ket(state.layout(), std::move(out));
}

ComplexOperator apply_to_subsystems(const ComplexOperator& op, const std::vector<std::string>& targets,
                                    const ComplexOperator& m) {
  const auto split = split_for(m.layout(), targets, op.dimension());
  std::vector<Complex> out(m.entries().size());
  apply_left(op, split, m.entries().data(), out.data(), m.dimension());
  return ComplexOperator(m.layout(), std::move(out));
}

ComplexOperator conjugate_subsystems(const ComplexOperator& op, const std::vector<std::string>& targets,
                                     const ComplexOperator& rho) {
  // O rho O† = (O (O rho)†)†
  const auto left = apply_to_subsystems(op, targets, rho);
  return apply_to_subsystems(op, targets, left.adjoint()).adjoint();
}

ComplexOperator partial_trace(const ComplexOperator& rho, const std::vector<std::string>& keep) {
  const auto& layout = rho.layout();
  for (const auto& label : keep) layout.position(label);
  std::vector<std::size_t> kpos, tpos;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const bool kept = std::find(keep.begin(), keep.end(), layout.subsystems()[i].label) != keep.end();
    (kept ? kpos : tpos).push_back(i);
  }
  if (kpos.empty()) throw std::invalid_argument("partial_trace: nothing kept");
  const auto ko = offsets_for(layout, kpos);
  const auto to = offsets_for(layout, tpos);
  ComplexOperator out(layout.restrict_to(keep));
  for (std::size_t r = 0; r < ko.size(); ++r)
    for (std::size_t c = 0; c < ko.size(); ++c) {
      Complex s = 0.0;
      for (std::size_t t : to) s += rho(ko[r] + t, ko[c] + t);
      out(r, c) = s;
    }
  return out;
}

// ---------------------------------------------------------------- spectra

std::vector<double> hermitian_eigenvalues(const ComplexOperator& m, double tol) {
  if (m.hermiticity_error() > 1e-9) throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian");
  const std::size_t n = m.dimension();
  // Work on the Hermitian part so round-off asymmetry does not accumulate.
  std::vector<Complex> a(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r * n + c] = 0.5 * (m(r, c) + std::conj(m(c, r)));
  auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * n + c]; };

  double frob = 0.0;
  for (const auto& z : a) frob += std::norm(z);
  const double threshold = tol * std::max(1.0, std::sqrt(frob));

  auto off_max = [&] {
    double e = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) e = std::max(e, std::abs(at(p, q)));
    return e;
  };

  int sweep = 0;
  while (off_max() > threshold) {
    if (++sweep > kJacobiMaxSweeps) throw std::runtime_error("hermitian_eigenvalues: Jacobi did not converge");
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = at(p, q);
        const double mag = std::abs(apq);
        if (mag <= threshold * 1e-3) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = at(p, p).real(), aqq = at(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U = D P with D = diag(1, e^{-i phi}) on (p, q); A <- U† A U.
        const Complex upq = s, uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = at(k, p), akq = at(k, q);
          at(k, p) = akp * c + akq * uqp;
          at(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk + std::conj(uqp) * aqk;
          at(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        at(p, q) = at(q, p) = 0.0;
        at(p, p) = at(p, p).real();
        at(q, q) = at(q, q).real();
      }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i).real();
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

double von_neumann_entropy(const ComplexOperator& rho) {
  double s = 0.0;
  for (double e : hermitian_eigenvalues(rho)) {
    if (e < -1e-9) throw std::domain_error("von_neumann_entropy: negative eigenvalue " + std::to_string(e));
    if (e > 1e-15) s -= e * std::log2(e);
  }
  return s;
}

double trace_distance(const ComplexOperator& rho, const ComplexOperator& sigma) {
  if (rho.dimension() != sigma.dimension()) throw std::invalid_argument("trace_distance: dimension mismatch");
  double s = 0.0;
  for (double e : hermitian_eigenvalues(rho - sigma)) s += std::abs(e);
  return 0.5 * s;
}

}  // namespace ppqkd

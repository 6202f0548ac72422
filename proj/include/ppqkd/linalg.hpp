#pragma once

// Dense complex states and operators over small labelled multipartite spaces.
//
// Every Ket and ComplexOperator carries a SystemLayout: the ordered list of
// (label, dimension) factors of its Hilbert space. Basis indices are
// row-major over the layout, i.e. the last subsystem varies fastest.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ppqkd {

using Complex = std::complex<double>;

struct Subsystem {
  std::string label;
  std::size_t dim = 0;
};

class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> subsystems);

  // One anonymous factor of dimension n, used for plain matrices.
  static SystemLayout flat(std::size_t n, std::string label = "m");

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  std::size_t dimension() const;
  std::size_t dim_of(const std::string& label) const;
  // Position of label in the layout; throws std::invalid_argument if unknown.
  std::size_t position(const std::string& label) const;
  bool contains(const std::string& label) const;

  // Stride of each factor in the row-major basis index.
  std::vector<std::size_t> strides() const;
  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t index(std::span<const std::size_t> digits) const;

  SystemLayout concat(const SystemLayout& other) const;
  SystemLayout restrict_to(const std::vector<std::string>& labels) const;

  friend bool operator==(const SystemLayout& a, const SystemLayout& b);

 private:
  std::vector<Subsystem> subsystems_;
};

class Ket {
 public:
  Ket() = default;
  explicit Ket(SystemLayout layout);  // zero vector
  Ket(SystemLayout layout, std::vector<Complex> amplitudes);

  // Computational basis ket |digits> on the layout.
  static Ket basis(const SystemLayout& layout, std::span<const std::size_t> digits);

  const SystemLayout& layout() const { return layout_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  Complex operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const;
  double norm() const;

  Ket& operator+=(const Ket& other);
  Ket& operator-=(const Ket& other);
  Ket& operator*=(Complex s);

 private:
  SystemLayout layout_;
  std::vector<Complex> amps_;
};

Ket operator+(Ket a, const Ket& b);
Ket operator-(Ket a, const Ket& b);
Ket operator*(Complex s, Ket k);
Complex inner(const Ket& bra, const Ket& ket);

class ComplexOperator {
 public:
  ComplexOperator() = default;
  explicit ComplexOperator(SystemLayout layout);  // zero matrix
  ComplexOperator(SystemLayout layout, std::vector<Complex> row_major);

  static ComplexOperator identity(const SystemLayout& layout);
  static ComplexOperator diagonal(const SystemLayout& layout, std::span<const Complex> diag);
  static ComplexOperator projector(const Ket& k);  // |k><k|
  static ComplexOperator outer(const Ket& a, const Ket& b);  // |a><b|

  const SystemLayout& layout() const { return layout_; }
  std::size_t dimension() const { return dim_; }
  const std::vector<Complex>& entries() const { return data_; }

  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }

  Complex trace() const;
  ComplexOperator adjoint() const;
  // max |m_ij - conj(m_ji)|
  double hermiticity_error() const;
  double max_abs() const;

  ComplexOperator& operator+=(const ComplexOperator& other);
  ComplexOperator& operator-=(const ComplexOperator& other);
  ComplexOperator& operator*=(Complex s);

 private:
  SystemLayout layout_;
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexOperator operator+(ComplexOperator a, const ComplexOperator& b);
ComplexOperator operator-(ComplexOperator a, const ComplexOperator& b);
ComplexOperator operator*(Complex s, ComplexOperator m);
ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b);
Ket operator*(const ComplexOperator& m, const Ket& k);

// <bra| m |ket>
Complex expectation(const Ket& bra, const ComplexOperator& m, const Ket& ket);

// Kronecker products; the result layout is the concatenation of the inputs.
Ket tensor_product(const Ket& a, const Ket& b);
ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b);

// Applies op to the listed subsystems (op's factors map to targets in order)
// and the identity elsewhere. For operators this is the left product (op ⊗ I) m.
Ket apply_to_subsystems(const ComplexOperator& op, const std::vector<std::string>& targets,
                        const Ket& state);
ComplexOperator apply_to_subsystems(const ComplexOperator& op,
                                    const std::vector<std::string>& targets,
                                    const ComplexOperator& m);
// (op ⊗ I) rho (op ⊗ I)†
ComplexOperator conjugate_subsystems(const ComplexOperator& op,
                                     const std::vector<std::string>& targets,
                                     const ComplexOperator& rho);

// Reduced operator on the kept labels, which stay in layout order.
ComplexOperator partial_trace(const ComplexOperator& rho, const std::vector<std::string>& keep);

inline constexpr double kJacobiThreshold = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

// Cyclic complex Jacobi. Eigenvalues are returned in descending order.
// Throws std::invalid_argument if m is not Hermitian within 1e-9 and
// std::runtime_error if the sweep limit is reached.
std::vector<double> hermitian_eigenvalues(const ComplexOperator& m,
                                          double tol = kJacobiThreshold);

// Entropy in bits.
double von_neumann_entropy(const ComplexOperator& rho);

double trace_distance(const ComplexOperator& rho, const ComplexOperator& sigma);

}  // namespace ppqkd

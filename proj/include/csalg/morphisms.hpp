#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csalg/conformal.hpp"

namespace csalg {

template <class T>
struct Mat2 {
  std::array<std::array<T, 2>, 2> m{};

  static Mat2 identity() {
    Mat2 r;
    r.m[0][0] = T(1);
    r.m[1][1] = T(1);
    return r;
  }
  T& operator()(int r, int c) { return m[r][c]; }
  const T& operator()(int r, int c) const { return m[r][c]; }
  T det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  Mat2 transpose() const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = m[j][i];
    return r;
  }
  // inverse of a determinant-one matrix
  Mat2 adjugate() const {
    Mat2 r;
    r.m[0][0] = m[1][1];
    r.m[1][1] = m[0][0];
    r.m[0][1] = -m[0][1];
    r.m[1][0] = -m[1][0];
    return r;
  }
  Mat2 operator-() const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = -m[i][j];
    return r;
  }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return r;
  }
  friend bool operator==(const Mat2& a, const Mat2& b) { return a.m == b.m; }
};

using ScalarMat2 = Mat2<CycloScalar>;
using LaurentMat2 = Mat2<LaurentElt>;

LaurentMat2 to_laurent(const ScalarMat2& x);
LaurentMat2 derivative(const LaurentMat2& y);  // entrywise delta_t
std::string to_string(const ScalarMat2& x);
std::string to_string(const LaurentMat2& y);

// S-linear map determined by the images of the generators v (x) 1.
class GenMorphism {
 public:
  GenMorphism(std::shared_ptr<const AlgebraDef> A, std::vector<ConfElt> images, std::string name = "");

  const AlgebraDef& algebra() const { return *A_; }
  std::shared_ptr<const AlgebraDef> algebra_ptr() const { return A_; }
  const std::vector<ConfElt>& images() const { return images_; }
  const ConfElt& image(int g) const { return images_.at(g); }
  int level() const { return level_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool is_identity() const;
  // true when every image lies in V (x) S, i.e. has no D_A decoration
  bool images_in_V() const;

  friend bool operator==(const GenMorphism& a, const GenMorphism& b) { return a.images_ == b.images_; }

 private:
  std::shared_ptr<const AlgebraDef> A_;
  std::vector<ConfElt> images_;
  std::string name_;
  int level_ = 1;
};

GenMorphism identity_morphism(std::shared_ptr<const AlgebraDef> A);

ConfElt extend_apply(const GenMorphism& phi, const ConfElt& x);
LambdaPoly extend_apply(const GenMorphism& phi, const LambdaPoly& p);

struct HomReport {
  bool homomorphism = true;
  std::vector<std::pair<int, int>> failures;
  // only decided when every image lies in V (x) S
  std::optional<bool> invertible;
  std::optional<LaurentElt> determinant;
  std::vector<std::string> messages;
};

HomReport check_hom(const GenMorphism& phi);

// (phi o psi)
GenMorphism compose(const GenMorphism& phi, const GenMorphism& psi);
GenMorphism invert(const GenMorphism& phi);
std::optional<int> order_of(const GenMorphism& phi, int max_order);

// Matrix over S of a morphism whose images lie in V (x) S; column j holds phi(v_j).
std::vector<std::vector<LaurentElt>> representing_matrix(const GenMorphism& phi);
LaurentElt determinant(const std::vector<std::vector<LaurentElt>>& m);

std::shared_ptr<const AlgebraDef> shared_n2();
std::shared_ptr<const AlgebraDef> shared_n4();

// theta_s for a unit s = alpha t^q of N=2
GenMorphism n2_theta(const LaurentElt& s, std::shared_ptr<const AlgebraDef> A = shared_n2());
GenMorphism n2_omega(std::shared_ptr<const AlgebraDef> A = shared_n2());
// Automorphism of N=4 determined by Y in SL2(S) and X = [[c,d],[e,f]] in SL2(k):
//   L -> L + Y'Y^{-1},  J^s -> Y J^s Y^{-1},
//   (v;1,0) -> c (Y^{-1})^T v (x) (1,0) - e Y Omega v (x) (0,1),
//   (w;0,1) -> d (Y^{-1})^T Omega w (x) (1,0) + f Y w (x) (0,1),   Omega = [[0,1],[-1,0]].
// (Y1,X1)(Y2,X2) -> composition of the two automorphisms.
GenMorphism n4_auto(const LaurentMat2& Y, const ScalarMat2& X, std::shared_ptr<const AlgebraDef> A = shared_n4());

}  // namespace csalg

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace sicheck {

struct WeightTerm;

//! Declarative weight function W evaluated on the covariate rows.
struct WeightSpec
{
  enum class Kind
  {
    SumAbs,      //!< sum_l |x_l|
    SumSquares,  //!< sum_l x_l^2
    AbsProduct,  //!< |x_a x_b|
    CharFn,      //!< exp(i gamma^T x), complex valued
    Pointwise,   //!< user supplied values, one per observation
    LinearCombo, //!< sum_k coeff_k W_k over real-valued terms
  };

  Kind kind = Kind::SumAbs;
  Eigen::VectorXd gamma;       // CharFn
  Eigen::VectorXd values;      // Pointwise
  Eigen::Index a = 0, b = 1;   // AbsProduct, zero-based columns
  std::vector<WeightTerm> terms; // LinearCombo

  static WeightSpec sum_abs();
  static WeightSpec sum_squares();
  static WeightSpec abs_product(Eigen::Index a, Eigen::Index b);
  static WeightSpec char_fn(Eigen::VectorXd gamma);
  static WeightSpec pointwise(Eigen::VectorXd values);
  static WeightSpec linear_combo(std::vector<WeightTerm> terms);
  //! sum over all pairs a < b of |x_a x_b|.
  static WeightSpec interaction(Eigen::Index p);

  bool is_complex() const { return kind == Kind::CharFn; }

  //! Short identifier used in reports, e.g. "sumabs" or "cf(0.5,1)".
  std::string label() const;
};

struct WeightTerm
{
  double coeff = 1.0;
  WeightSpec spec;
};

//! Real weight values W(X_i). Throws InvalidArgument for CharFn.
Eigen::VectorXd evaluate_weight(const WeightSpec& spec, const Eigen::MatrixXd& x);

//! exp(i gamma^T X_j) for every row.
Eigen::VectorXcd evaluate_char_fn(const Eigen::VectorXd& gamma, const Eigen::MatrixXd& x);

//! Real components of the weight: the values themselves, or the cosine and
//! sine parts for a characteristic-function weight.
std::vector<Eigen::VectorXd> real_components(const WeightSpec& spec, const Eigen::MatrixXd& x);

//! Parses "sumabs", "sumsq", "absprod:A:B" (one-based), "interaction" and
//! "cf:g1,g2,...". `p` is the covariate dimension.
WeightSpec parse_weight(const std::string& text, Eigen::Index p);

} // namespace sicheck

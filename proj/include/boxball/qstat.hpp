#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace boxball {

using Rational = boost::multiprecision::cpp_rational;

/// A scalar that is exact (rational) whenever the closed forms allow it,
/// with a double shadow for downstream numerics.
struct Scalar {
    Rational r;
    bool exact = true;
    double d = 0.0;

    static Scalar of(const Rational& v) { return {v, true, static_cast<double>(v)}; }
    static Scalar approx(double v) { return {Rational(0), false, v}; }
    double value() const { return exact ? static_cast<double>(r) : d; }
    std::string str() const;
};

/// Exact square root when numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& v);

enum class QClass { Bernoulli, Markov, FiniteSupport, GeneralTruncated };

/// Thrown when a closed form is requested outside its capability domain.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The parameter sequence (q_k) with its class metadata. Entries beyond the
/// stored vector are zero; truncated classes carry a reported tail bound.
class QParams {
  public:
    static QParams bernoulli(const Rational& rho, int levels = 24);
    static QParams markov(const Rational& a, const Rational& b, int levels = 24);
    static QParams finite_support(std::vector<Rational> q);
    static QParams general_truncated(std::vector<Rational> q, double tail_bound);

    QClass cls() const { return cls_; }
    int levels() const { return static_cast<int>(q_.size()); }
    const Rational& q(int k) const;  // q_k, 1-based; zero beyond the vector
    const std::vector<Rational>& entries() const { return q_; }

    /// Largest k with q_k > 0 (0 when all zero).
    int top_level() const;
    /// Second largest k with q_k > 0 (0 when fewer than two).
    int second_level() const;

    Rational alpha(int k) const;  // mean slot content
    Rational beta(int k) const;   // slot content variance

    /// Drop q_1; Markov classes keep their closed parameterization.
    QParams theta() const;
    QParams theta_pow(int j) const;
    /// Zero all entries above k; the class becomes FiniteSupport.
    QParams cut(int k) const;

    bool is_markov_class() const { return cls_ == QClass::Bernoulli || cls_ == QClass::Markov; }
    const Rational& markov_a() const { return a_; }
    const Rational& markov_b() const { return b_; }
    const Rational& bernoulli_rho() const { return rho_; }
    double tail_bound() const { return tail_; }

  private:
    QClass cls_ = QClass::FiniteSupport;
    std::vector<Rational> q_;
    Rational rho_ = 0;   // Bernoulli only
    Rational a_ = 0, b_ = 0;  // Markov classes
    double tail_ = 0.0;
};

/// Entries of the recovered two-state transition matrix.
struct TransitionMatrix {
    Rational p01, p10;
    Rational p00() const { return 1 - p01; }
    Rational p11() const { return 1 - p10; }
    /// Stationary ball density p01 / (p01 + p10).
    Rational density() const { return p01 / (p01 + p10); }
    bool exact = true;
    double p01_d = 0, p10_d = 0;
};

TransitionMatrix markov_transition(const Rational& a, const Rational& b);

/// Memoized closed-form scalars for one parameter sequence.
class ScalarTable {
  public:
    explicit ScalarTable(QParams q);

    const QParams& params() const { return q_; }

    /// Ball density rho(theta^j q).
    Scalar density(int j = 0) const;
    /// rbar_k = 1 - 2 rho(theta^k q); the free fraction seen by a k-soliton.
    Scalar rbar(int k) const;
    /// v^eff_k(theta^shift q).
    Scalar velocity(int k, int shift = 0) const;
    /// Asymptotic variance of the blocked-step count.
    Scalar g_variance(int k) const;
    /// Diffusion coefficient of the tagged increment.
    Scalar diffusion(int k) const;

    /// Limiting cumulant generating function of (n - M_k(n)).
    double lambda_M(int k, double lambda) const;
    /// Tilting exponent u_{q,k}.
    double u_exponent(int k, double lambda) const;
    /// Aggregated tilt U_{q,k}; finite for lambda < delta(k).
    double U(int k, double lambda) const;
    /// Right edge of the finiteness domain of U (may be +inf).
    double delta(int k) const;
    /// Limiting cumulant generating function of the increment.
    double lambda_Y(int k, double lambda) const;
    /// Legendre transform of lambda_Y; +inf outside the effective domain.
    double rate_function(int k, double u) const;

    /// Text/JSON rendering over sizes 1..k_max.
    std::string to_text(int k_max) const;
    std::string to_json(int k_max) const;

  private:
    enum class MRoute { MarkovAny, FiniteTop, FiniteSecond, Unsupported };
    MRoute m_route(int k, std::string* why = nullptr) const;

    QParams q_;
    mutable std::map<int, Scalar> density_;
    mutable std::map<std::pair<int, int>, Scalar> vel_;
    mutable std::map<int, double> delta_;
};

}  // namespace boxball

#include "boxball/qstat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace boxball {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Rational rpow(const Rational& x, int e) {
    Rational out = 1;
    for (int i = 0; i < e; ++i) out *= x;
    return out;
}

}  // namespace

std::string Scalar::str() const {
    if (exact) {
        std::ostringstream os;
        os << r;
        return os.str();
    }
    std::ostringstream os;
    os.precision(17);
    os << d << " (approx)";
    return os.str();
}

std::optional<Rational> exact_sqrt(const Rational& v) {
    using boost::multiprecision::cpp_int;
    if (v < 0) return std::nullopt;
    cpp_int num = numerator(v), den = denominator(v);
    cpp_int rn = sqrt(num), rd = sqrt(den);
    if (rn * rn == num && rd * rd == den) return Rational(rn, rd);
    return std::nullopt;
}

const Rational& QParams::q(int k) const {
    static const Rational kZero = 0;
    if (k < 1 || k > levels()) return kZero;
    return q_[static_cast<size_t>(k - 1)];
}

int QParams::top_level() const {
    for (int k = levels(); k >= 1; --k)
        if (q(k) > 0) return k;
    return 0;
}

int QParams::second_level() const {
    bool seen_top = false;
    for (int k = levels(); k >= 1; --k) {
        if (q(k) > 0) {
            if (seen_top) return k;
            seen_top = true;
        }
    }
    return 0;
}

Rational QParams::alpha(int k) const { return q(k) / (1 - q(k)); }
Rational QParams::beta(int k) const { return q(k) / rpow(1 - q(k), 2); }

namespace {

std::vector<Rational> markov_q_sequence(const Rational& a, const Rational& b, int levels) {
    std::vector<Rational> q;
    q.reserve(static_cast<size_t>(levels));
    for (int k = 1; k <= levels; ++k) {
        Rational num = a * rpow(b, k - 1);
        Rational den = 1;
        for (int l = 1; l < k; ++l) den *= rpow(1 - q[static_cast<size_t>(l - 1)], 2 * (k - l));
        q.push_back(num / den);
    }
    return q;
}

double tail_estimate(const std::vector<Rational>& q) {
    size_t n = q.size();
    if (n < 2 || q[n - 1] == 0) return 0.0;
    double qk = static_cast<double>(q[n - 1]);
    double r = static_cast<double>(q[n - 1] / q[n - 2]);
    if (r >= 1.0) return kInf;
    double K = static_cast<double>(n);
    return qk * (K * r / (1 - r) + r / ((1 - r) * (1 - r)));
}

}  // namespace

QParams QParams::bernoulli(const Rational& rho, int levels) {
    if (!(rho > 0 && 2 * rho < 1))
        throw std::invalid_argument("bernoulli: density must lie in (0, 1/2)");
    QParams p;
    p.cls_ = QClass::Bernoulli;
    p.rho_ = rho;
    p.a_ = p.b_ = rho * (1 - rho);
    p.q_ = markov_q_sequence(p.a_, p.b_, levels);
    p.tail_ = tail_estimate(p.q_);
    return p;
}

QParams QParams::markov(const Rational& a, const Rational& b, int levels) {
    // sqrt(a) + sqrt(b) < 1, tested rationally
    if (!(a > 0 && b >= 0 && b < 1 && a + b < 1 && 4 * a * b < rpow(1 - a - b, 2)))
        throw std::invalid_argument("markov: need a > 0, 0 <= b < 1, sqrt(a) + sqrt(b) < 1");
    QParams p;
    p.cls_ = QClass::Markov;
    p.a_ = a;
    p.b_ = b;
    p.q_ = markov_q_sequence(a, b, b == 0 ? 1 : levels);
    p.tail_ = tail_estimate(p.q_);
    return p;
}

QParams QParams::finite_support(std::vector<Rational> q) {
    for (auto& v : q)
        if (v < 0 || v >= 1) throw std::invalid_argument("q entries must lie in [0, 1)");
    QParams p;
    p.cls_ = QClass::FiniteSupport;
    p.q_ = std::move(q);
    return p;
}

QParams QParams::general_truncated(std::vector<Rational> q, double tail_bound) {
    QParams p = finite_support(std::move(q));
    p.cls_ = QClass::GeneralTruncated;
    p.tail_ = tail_bound;
    return p;
}

QParams QParams::theta() const {
    if (is_markov_class()) {
        Rational a2 = a_ * b_ / rpow(1 - a_, 2);
        Rational b2 = b_ / rpow(1 - a_, 2);
        if (a2 > 0) {
            QParams p = markov(a2, b2, std::max(1, levels() - 1));
            return p;
        }
        // b == 0 collapses to the empty sequence
        QParams p;
        p.cls_ = QClass::FiniteSupport;
        return p;
    }
    QParams p = *this;
    if (!p.q_.empty()) p.q_.erase(p.q_.begin());
    return p;
}

QParams QParams::theta_pow(int j) const {
    QParams p = *this;
    for (int i = 0; i < j; ++i) p = p.theta();
    return p;
}

QParams QParams::cut(int k) const {
    QParams p;
    p.cls_ = QClass::FiniteSupport;
    p.q_ = q_;
    if (static_cast<int>(p.q_.size()) > k) p.q_.resize(static_cast<size_t>(std::max(k, 0)));
    return p;
}

TransitionMatrix markov_transition(const Rational& a, const Rational& b) {
    Rational s = 1 + a - b;
    Rational disc = s * s - 4 * a;
    if (disc < 0) throw std::invalid_argument("markov_transition: parameters outside the domain");
    TransitionMatrix t;
    if (auto root = exact_sqrt(disc)) {
        t.p01 = (s - *root) / 2;  // smaller root keeps the density below 1/2
        t.p10 = (s + *root) / 2;
        t.exact = true;
        t.p01_d = static_cast<double>(t.p01);
        t.p10_d = static_cast<double>(t.p10);
    } else {
        double sd = static_cast<double>(s), ad = static_cast<double>(a);
        double rd = std::sqrt(sd * sd - 4 * ad);
        t.exact = false;
        t.p01_d = (sd - rd) / 2;
        t.p10_d = (sd + rd) / 2;
        t.p01 = Rational(0);
        t.p10 = Rational(0);
    }
    return t;
}

ScalarTable::ScalarTable(QParams q) : q_(std::move(q)) {}

Scalar ScalarTable::density(int j) const {
    if (auto it = density_.find(j); it != density_.end()) return it->second;
    Scalar out;
    if (q_.is_markov_class()) {
        QParams qt = q_.theta_pow(j);
        if (qt.is_markov_class() && qt.markov_a() > 0) {
            Rational a = qt.markov_a(), b = qt.markov_b();
            Rational inner = 1 - 4 * a / rpow(1 + a - b, 2);
            if (auto root = exact_sqrt(inner)) {
                out = Scalar::of((1 - *root) / 2);
            } else {
                out = Scalar::approx((1 - std::sqrt(static_cast<double>(inner))) / 2);
            }
        } else {
            out = Scalar::of(Rational(0));
        }
    } else {
        // downward closed-form pass on the finite support
        QParams qt = q_.theta_pow(j);
        int top = qt.top_level();
        std::vector<Rational> rb(static_cast<size_t>(top + 1), 1);
        for (int m = top - 1; m >= 0; --m) {
            Rational inv = 1;
            for (int l = m + 1; l <= top; ++l)
                inv += 2 * (l - m) * qt.alpha(l) / rb[static_cast<size_t>(l)];
            rb[static_cast<size_t>(m)] = 1 / inv;
        }
        out = Scalar::of((1 - rb[0]) / 2);
    }
    density_.emplace(j, out);
    return out;
}

Scalar ScalarTable::rbar(int k) const {
    Scalar rho = density(k);
    if (rho.exact) return Scalar::of(1 - 2 * rho.r);
    return Scalar::approx(1 - 2 * rho.d);
}

Scalar ScalarTable::velocity(int k, int shift) const {
    if (k < 1) throw std::invalid_argument("velocity: size must be positive");
    auto key = std::make_pair(k, shift);
    if (auto it = vel_.find(key); it != vel_.end()) return it->second;
    Scalar out;
    if (k == 1) {
        out = rbar(shift + 1);
    } else {
        Scalar lead = rbar(shift + k);
        bool exact = lead.exact;
        Rational r = k * lead.r;
        double d = k * lead.value();
        for (int l = 1; l < k; ++l) {
            Rational a = q_.alpha(l + shift);
            Scalar v = velocity(k - l, shift + l);
            exact = exact && v.exact;
            r += 2 * l * a * v.r;
            d += 2 * l * static_cast<double>(a) * v.value();
        }
        out = exact ? Scalar::of(r) : Scalar::approx(d);
    }
    vel_.emplace(key, out);
    return out;
}

ScalarTable::MRoute ScalarTable::m_route(int k, std::string* why) const {
    if (q_.is_markov_class()) return MRoute::MarkovAny;
    int top = q_.top_level();
    if (top == 0) {
        if (why) *why = "the parameter sequence is identically zero";
        return MRoute::Unsupported;
    }
    if (k == top) return MRoute::FiniteTop;
    if (k == q_.second_level() && k > 0) return MRoute::FiniteSecond;
    if (why)
        *why = "finite-support closed forms cover only the largest and second-largest sizes "
               "(requested k=" + std::to_string(k) + ", largest=" + std::to_string(top) + ")";
    return MRoute::Unsupported;
}

namespace {

/// Folded one-step chain of (cell, load) for a medium with solitons of one
/// size d, record transitions tilted by e^lambda; returns log PF eigenvalue.
double finite_log_pf(double qq, int d, double lambda) {
    int dim = 2 * d;
    auto idx0 = [&](int w) { return w; };          // (0, w), w = 0..d-1
    auto idx1 = [&](int w) { return d + w - 1; };  // (1, w), w = 1..d
    std::vector<double> P(static_cast<size_t>(dim * dim), 0.0);
    auto at = [&](int r, int c) -> double& { return P[static_cast<size_t>(r * dim + c)]; };
    at(idx0(0), idx0(0)) = 1 - qq;
    at(idx0(0), idx1(1)) = qq;
    for (int w = 1; w < d; ++w) at(idx0(w), idx0(w - 1)) = 1.0;
    for (int w = 1; w < d; ++w) at(idx1(w), idx1(w + 1)) = 1.0;
    at(idx1(d), idx0(d - 1)) = 1.0;

    // tilt the record transition, then fold d-1 plain steps
    std::vector<double> B = P;
    B[static_cast<size_t>(idx0(0) * dim + idx0(0))] *= std::exp(lambda);
    auto mul = [&](const std::vector<double>& A, const std::vector<double>& C) {
        std::vector<double> R(static_cast<size_t>(dim * dim), 0.0);
        for (int i = 0; i < dim; ++i)
            for (int l = 0; l < dim; ++l) {
                double a = A[static_cast<size_t>(i * dim + l)];
                if (a == 0) continue;
                for (int j = 0; j < dim; ++j)
                    R[static_cast<size_t>(i * dim + j)] += a * C[static_cast<size_t>(l * dim + j)];
            }
        return R;
    };
    for (int s = 0; s < d - 1; ++s) B = mul(B, P);

    std::vector<double> v(static_cast<size_t>(dim), 1.0);
    double lam = 1.0;
    for (int it = 0; it < 200000; ++it) {
        std::vector<double> w(static_cast<size_t>(dim), 0.0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                w[static_cast<size_t>(i)] += B[static_cast<size_t>(i * dim + j)] * v[static_cast<size_t>(j)];
        double norm = 0;
        for (double x : w) norm = std::max(norm, std::fabs(x));
        for (double& x : w) x /= norm;
        if (it > 10 && std::fabs(norm - lam) < 1e-15 * std::max(1.0, std::fabs(lam))) {
            lam = norm;
            break;
        }
        lam = norm;
        v = std::move(w);
    }
    return std::log(lam);
}

}  // namespace

Scalar ScalarTable::g_variance(int k) const {
    std::string why;
    switch (m_route(k, &why)) {
        case MRoute::MarkovAny: {
            Scalar rho = density(k);
            if (rho.exact) {
                Rational r = rho.r;
                return Scalar::of(4 * r * (1 - r) * (1 - 2 * r));
            }
            double r = rho.d;
            return Scalar::approx(4 * r * (1 - r) * (1 - 2 * r));
        }
        case MRoute::FiniteTop:
            return Scalar::of(Rational(0));
        case MRoute::FiniteSecond: {
            int top = q_.top_level(), d = top - k;
            Rational qq = q_.q(top);
            if (d == 1) {
                // (1+4Q) with Q = q/(1-q)^2 is the square of (1+q)/(1-q)
                return Scalar::of(4 * qq * (1 - qq) / rpow(1 + qq, 3));
            }
            double q = static_cast<double>(qq);
            double h = 1e-4;
            double f0 = finite_log_pf(q, d, 0.0);
            double fp = finite_log_pf(q, d, h), fm = finite_log_pf(q, d, -h);
            double fp2 = finite_log_pf(q, d, 2 * h), fm2 = finite_log_pf(q, d, -2 * h);
            double second = (-fp2 + 16 * fp - 30 * f0 + 16 * fm - fm2) / (12 * h * h);
            return Scalar::approx(second);
        }
        case MRoute::Unsupported:
        default:
            throw CapabilityError("g_variance: " + why);
    }
}

Scalar ScalarTable::diffusion(int k) const {
    Scalar g = g_variance(k);
    Scalar vk = velocity(k), r1 = rbar(k);
    bool exact = g.exact && vk.exact && r1.exact;
    Rational re = 0;
    double d = 0;
    if (exact) re = vk.r * vk.r * g.r / (r1.r * r1.r);
    d = vk.value() * vk.value() * g.value() / (r1.value() * r1.value());
    for (int l = 1; l < k; ++l) {
        Scalar vl = velocity(l), vkl = velocity(k - l, l), rl = rbar(l);
        Rational bl = q_.beta(l);
        exact = exact && vl.exact && vkl.exact && rl.exact;
        if (exact) re += 4 * vl.r * vl.r * vkl.r * bl / (rl.r * rl.r);
        d += 4 * vl.value() * vl.value() * vkl.value() * static_cast<double>(bl) /
             (rl.value() * rl.value());
    }
    return exact ? Scalar::of(re) : Scalar::approx(d);
}

double ScalarTable::lambda_M(int k, double lambda) const {
    std::string why;
    switch (m_route(k, &why)) {
        case MRoute::MarkovAny: {
            double rho = density(k).value();
            double c = 1 - 2 * rho;
            double el = std::exp(lambda);
            return std::log(c / (2 * (1 - rho)) * (el + std::sqrt(el * el - 1 + 1 / (c * c))));
        }
        case MRoute::FiniteTop:
            return lambda;
        case MRoute::FiniteSecond: {
            int top = q_.top_level(), d = top - k;
            double q = static_cast<double>(q_.q(top));
            if (d == 1) {
                double A = 1 - q;
                double el = std::exp(lambda);
                return std::log(A * el / 2 + std::sqrt(A * A * el * el / 4 + q));
            }
            return finite_log_pf(q, d, lambda);
        }
        case MRoute::Unsupported:
        default:
            throw CapabilityError("lambda_M: " + why);
    }
}

double ScalarTable::u_exponent(int k, double lambda) const {
    double q = static_cast<double>(q_.q(k));
    if (q == 0) return 0.0;
    if (lambda >= -0.5 * std::log(q)) return kInf;
    return std::log((1 - q) / (1 - std::exp(2 * lambda) * q));
}

double ScalarTable::U(int k, double lambda) const {
    std::vector<double> us(static_cast<size_t>(k + 1), 0.0);
    for (int m = 1; m <= k; ++m) {
        double u = m * lambda;
        for (int l = 1; l < m; ++l) {
            if (!std::isfinite(us[static_cast<size_t>(l)])) return kInf;
            double ul = u_exponent(l, us[static_cast<size_t>(l)]);
            if (!std::isfinite(ul)) return kInf;
            u += (m - l) * ul;
        }
        us[static_cast<size_t>(m)] = u;
    }
    return us[static_cast<size_t>(k)];
}

double ScalarTable::delta(int k) const {
    if (auto it = delta_.find(k); it != delta_.end()) return it->second;
    double out;
    bool unconstrained = true;
    for (int l = 1; l < k; ++l)
        if (q_.q(l) > 0) unconstrained = false;
    if (k == 1 || unconstrained) {
        out = kInf;
    } else {
        double lo = 0.0, hi = 1.0;
        while (std::isfinite(U(k, hi)) && hi < 1e6) hi *= 2;
        if (hi >= 1e6 && std::isfinite(U(k, hi))) {
            out = kInf;
        } else {
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                (std::isfinite(U(k, mid)) ? lo : hi) = mid;
            }
            out = lo;
        }
    }
    delta_.emplace(k, out);
    return out;
}

double ScalarTable::lambda_Y(int k, double lambda) const {
    double u = U(k, lambda);
    if (!std::isfinite(u)) return kInf;
    return lambda_M(k, u);
}

double ScalarTable::rate_function(int k, double u) const {
    if (u < 0) return kInf;
    auto g = [&](double lam) {
        double y = lambda_Y(k, lam);
        return std::isfinite(y) ? lam * u - y : -kInf;
    };
    double dlt = delta(k);
    double hi_cap = std::isfinite(dlt) ? dlt - 1e-12 * std::max(1.0, std::fabs(dlt)) : 60.0;
    double lo_cap = -60.0;
    // bracket the maximum of the concave objective
    double a = std::max(lo_cap, -1.0), c = std::min(hi_cap, 1.0);
    while (a > lo_cap && g(a) > g(a + 1e-3)) a = std::max(lo_cap, a * 2 - c);
    while (c < hi_cap && g(c) > g(c - 1e-3)) c = std::min(hi_cap, c * 2 - a);
    // golden-section search
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = c - phi * (c - a), x2 = a + phi * (c - a);
    double f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 300 && (c - a) > 1e-13 * std::max(1.0, std::fabs(a) + std::fabs(c)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (c - a);
            f2 = g(x2);
        } else {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - phi * (c - a);
            f1 = g(x1);
        }
    }
    double best = std::max(f1, f2);
    if (!std::isfinite(best)) return kInf;
    return std::max(0.0, best);
}

std::string ScalarTable::to_text(int k_max) const {
    std::ostringstream os;
    os << "k     q_k                alpha_k            rbar_k             v_eff_k"
          "            G_k                D_k\n";
    for (int k = 1; k <= k_max; ++k) {
        os << k << "     ";
        auto cell = [&](const Scalar& s) {
            std::ostringstream c;
            c.precision(12);
            c << s.value();
            if (s.exact) c << " (=" << s.r << ")";
            std::string t = c.str();
            t.resize(std::max<size_t>(t.size(), 18), ' ');
            return t + " ";
        };
        os << cell(Scalar::of(q_.q(k))) << cell(Scalar::of(q_.alpha(k))) << cell(rbar(k))
           << cell(velocity(k));
        try {
            os << cell(g_variance(k)) << cell(diffusion(k));
        } catch (const CapabilityError&) {
            os << "unsupported";
        }
        os << "\n";
    }
    return os.str();
}

std::string ScalarTable::to_json(int k_max) const {
    nlohmann::ordered_json j;
    j["class"] = q_.cls() == QClass::Bernoulli  ? "bernoulli"
                 : q_.cls() == QClass::Markov   ? "markov"
                 : q_.cls() == QClass::FiniteSupport ? "finite"
                                                     : "general";
    j["levels"] = q_.levels();
    j["tail_bound"] = q_.tail_bound();
    auto scal = [](const Scalar& s) {
        nlohmann::ordered_json v;
        v["value"] = s.value();
        v["exact"] = s.exact;
        if (s.exact) v["rational"] = s.str();
        return v;
    };
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int k = 1; k <= k_max; ++k) {
        nlohmann::ordered_json row;
        row["k"] = k;
        row["q"] = scal(Scalar::of(q_.q(k)));
        row["alpha"] = scal(Scalar::of(q_.alpha(k)));
        row["beta"] = scal(Scalar::of(q_.beta(k)));
        row["rho_theta_k"] = scal(density(k));
        row["rbar"] = scal(rbar(k));
        row["v_eff"] = scal(velocity(k));
        try {
            row["G"] = scal(g_variance(k));
            row["D"] = scal(diffusion(k));
        } catch (const CapabilityError& e) {
            row["G"] = nullptr;
            row["D"] = nullptr;
            row["unsupported"] = e.what();
        }
        rows.push_back(row);
    }
    j["table"] = rows;
    return j.dump(2);
}

}  // namespace boxball

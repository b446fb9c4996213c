#include "coklab/hall_littlewood.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace coklab::hl {

namespace {

template <typename Num>
Num pow_u(const Num& x, uint32_t e) {
    Num r = 1, b = x;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Branching transition nu -> mu (nu interlacing mu from below).
struct Trans {
    uint32_t to;    // state index of mu
    uint32_t from;  // state index of nu
    uint32_t deg;   // |mu| - |nu|
    uint32_t coeff; // index into the coefficient table
};

// The DP lattice for one (la, mu0) pair: states are subdiagrams of la
// containing mu0, transitions are interlacing pairs.
struct Lattice {
    std::vector<Partition> states;
    std::map<Partition, uint32_t> index;
    std::vector<Trans> trans;
    std::vector<std::pair<Partition, Partition>> coeff_pairs;  // (mu, nu) per coeff index
    uint32_t start = 0, goal = 0;
};

Lattice build_lattice(const Partition& la, const Partition& mu0) {
    Lattice lat;
    for (const Partition& s : subdiagrams(la))
        if (s.contains(mu0)) {
            lat.index.emplace(s, static_cast<uint32_t>(lat.states.size()));
            lat.states.push_back(s);
        }
    lat.start = lat.index.at(mu0);
    lat.goal = lat.index.at(la);

    std::map<std::pair<Partition, Partition>, uint32_t> coeff_index;
    for (uint32_t mi = 0; mi < lat.states.size(); ++mi) {
        const Partition& mu = lat.states[mi];
        // enumerate nu with mu_{i+1} <= nu_i <= mu_i (and nu containing mu0)
        std::vector<uint32_t> lo(mu.length()), hi(mu.length());
        for (std::size_t i = 1; i <= mu.length(); ++i) {
            lo[i - 1] = std::max(mu.part(i + 1), mu0.part(i));
            hi[i - 1] = mu.part(i);
        }
        std::vector<uint32_t> row(mu.length());
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == mu.length()) {
                std::vector<uint32_t> parts;
                for (uint32_t r : row)
                    if (r > 0) parts.push_back(r);
                Partition nu(parts);
                auto it = lat.index.find(nu);
                if (it == lat.index.end()) return;  // lacks mu0
                auto key = std::make_pair(mu, nu);
                auto [cit, fresh] = coeff_index.emplace(key, static_cast<uint32_t>(lat.coeff_pairs.size()));
                if (fresh) lat.coeff_pairs.push_back(key);
                lat.trans.push_back({mi, it->second,
                                     static_cast<uint32_t>(mu.size() - nu.size()), cit->second});
                return;
            }
            for (uint32_t v = lo[i]; v <= hi[i]; ++v) {
                row[i] = v;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    return lat;
}

template <typename Num>
Num psi_phi(Kind kind, const Partition& mu, const Partition& nu, const Num& t) {
    // psi_{mu/nu} = prod over i with m_i(nu) = m_i(mu)+1 of (1 - t^{m_i(nu)})
    // phi_{mu/nu} = prod over i with m_i(mu) = m_i(nu)+1 of (1 - t^{m_i(mu)})
    Num c = 1;
    uint32_t top = mu.empty() ? 0 : mu.parts()[0];
    for (uint32_t i = 1; i <= top; ++i) {
        uint32_t mm = mu.multiplicity(i), mn = nu.multiplicity(i);
        if (kind == Kind::P && mn == mm + 1) c *= 1 - pow_u(t, mn);
        if (kind == Kind::Q && mm == mn + 1) c *= 1 - pow_u(t, mm);
    }
    return c;
}

template <typename Num>
std::vector<Num> coefficient_table(Kind kind, const Lattice& lat, const Num& t) {
    std::vector<Num> out;
    out.reserve(lat.coeff_pairs.size());
    for (const auto& [mu, nu] : lat.coeff_pairs) out.push_back(psi_phi(kind, mu, nu, t));
    return out;
}

// dp <- one more variable with value x
template <typename Num>
void dp_step(const Lattice& lat, const std::vector<Num>& coeffs, const Num& x,
             std::vector<Num>& dp, std::vector<Num>& scratch) {
    std::vector<Num> xpow(1, Num(1));
    scratch.assign(dp.size(), Num(0));
    for (const Trans& tr : lat.trans) {
        if (dp[tr.from] == 0) continue;
        while (xpow.size() <= tr.deg) xpow.push_back(xpow.back() * x);
        scratch[tr.to] += coeffs[tr.coeff] * xpow[tr.deg] * dp[tr.from];
    }
    dp.swap(scratch);
}

}  // namespace

Rational psi_coefficient(const Partition& mu, const Partition& nu, const Rational& t) {
    return psi_phi(Kind::P, mu, nu, t);
}
Rational phi_coefficient(const Partition& mu, const Partition& nu, const Rational& t) {
    return psi_phi(Kind::Q, mu, nu, t);
}

Rational eval(Kind kind, const Partition& la, const Partition& mu,
              const std::vector<Rational>& vars, const Rational& t) {
    if (!la.contains(mu)) return 0;
    if (la == mu) return 1;
    if (vars.empty()) return 0;
    Lattice lat = build_lattice(la, mu);
    std::vector<Rational> coeffs = coefficient_table(kind, lat, t);
    std::vector<Rational> dp(lat.states.size(), Rational(0)), scratch;
    dp[lat.start] = 1;
    for (const Rational& x : vars) dp_step(lat, coeffs, x, dp, scratch);
    return dp[lat.goal];
}

Bounded principal(Kind kind, const Partition& la, const Partition& mu,
                  const SpecDescriptor& spec, const Rational& t, double tol) {
    if (spec.family != SpecDescriptor::Family::Geometric)
        throw std::invalid_argument("principal evaluation requires a geometric specialization");
    if (spec.multiplicity < 1) throw std::invalid_argument("multiplicity must be >= 1");
    if (t <= 0 || t >= 1) throw std::invalid_argument("principal evaluation requires t in (0,1)");
    if (tol <= 0) throw std::invalid_argument("tol must be positive");
    if (!la.contains(mu)) return Bounded::exact(Real(0));
    if (la == mu) return Bounded::exact(Real(1));

    Lattice lat = build_lattice(la, mu);
    std::vector<Real> coeffs = coefficient_table(kind, lat, to_real(t));
    std::vector<Real> dp(lat.states.size(), Real(0)), scratch;
    dp[lat.start] = 1;

    const Real tr = to_real(t);
    Real x = pow_u(tr, spec.start_exp);
    Real last = 0, increment = 0;
    unsigned calm_steps = 0;
    const unsigned step_cap = 100000;
    for (unsigned step = 0; step < step_cap; ++step) {
        for (uint32_t rep = 0; rep < spec.multiplicity; ++rep) {
            dp_step(lat, coeffs, x, dp, scratch);
        }
        x *= tr;
        increment = dp[lat.goal] - last;
        last = dp[lat.goal];
        if (last > 0 && increment <= last * (tol / 10)) {
            if (++calm_steps >= 2) return {last, increment * 10};
        } else {
            calm_steps = 0;
        }
    }
    throw std::runtime_error("principal evaluation did not converge for lambda=" +
                             la.to_string() + " t=" + rational_to_string(t));
}

std::vector<std::pair<Partition, Bounded>> principal_all_skew(Kind kind, const Partition& la,
                                                              const SpecDescriptor& spec,
                                                              const Rational& t, double tol) {
    if (spec.family != SpecDescriptor::Family::Geometric)
        throw std::invalid_argument("principal evaluation requires a geometric specialization");
    if (t <= 0 || t >= 1) throw std::invalid_argument("principal evaluation requires t in (0,1)");

    // backward DP: dp[nu] accumulates Q_{la/nu} over the appended variables,
    // i.e. the forward transition matrix applied on the other side
    Lattice lat = build_lattice(la, Partition{});
    std::vector<Real> coeffs = coefficient_table(kind, lat, to_real(t));
    std::vector<Real> dp(lat.states.size(), Real(0)), scratch;
    dp[lat.goal] = 1;

    const Real tr = to_real(t);
    Real x = pow_u(tr, spec.start_exp);
    std::vector<Real> last(dp.size(), Real(0)), increments(dp.size(), Real(0));
    unsigned calm_steps = 0;
    const unsigned step_cap = 100000;
    std::vector<Real> xpow;
    for (unsigned step = 0; step < step_cap; ++step) {
        for (uint32_t rep = 0; rep < spec.multiplicity; ++rep) {
            xpow.assign(1, Real(1));
            scratch.assign(dp.size(), Real(0));
            for (const Trans& trn : lat.trans) {
                if (dp[trn.to] == 0) continue;
                while (xpow.size() <= trn.deg) xpow.push_back(xpow.back() * x);
                scratch[trn.from] += coeffs[trn.coeff] * xpow[trn.deg] * dp[trn.to];
            }
            dp.swap(scratch);
        }
        x *= tr;
        bool calm = true;
        for (std::size_t i = 0; i < dp.size(); ++i) {
            increments[i] = dp[i] - last[i];
            last[i] = dp[i];
            if (dp[i] > 0 && increments[i] > dp[i] * (tol / 10)) calm = false;
        }
        if (calm) {
            if (++calm_steps >= 2) {
                std::vector<std::pair<Partition, Bounded>> out;
                out.reserve(dp.size());
                for (std::size_t i = 0; i < dp.size(); ++i)
                    out.emplace_back(lat.states[i], Bounded{dp[i], increments[i] * 10});
                return out;
            }
        } else {
            calm_steps = 0;
        }
    }
    throw std::runtime_error("principal_all_skew did not converge for lambda=" + la.to_string());
}

namespace {

Real power_sum(const SpecDescriptor& s, unsigned l, const Real& t) {
    if (s.family == SpecDescriptor::Family::Finite) {
        Real sum = 0;
        for (const Rational& v : s.values) sum += pow_u(to_real(v), l);
        return sum;
    }
    // sum over j >= a of k * t^{jl} = k t^{al} / (1 - t^l)
    Real tl = pow_u(t, l);
    return Real(s.multiplicity) * pow_u(t, s.start_exp * l) / (1 - tl);
}

// largest variable value and a constant U with p_l(spec) <= U * m^l
std::pair<Real, Real> domination(const SpecDescriptor& s, const Real& t) {
    if (s.family == SpecDescriptor::Family::Finite) {
        Real m = 0;
        for (const Rational& v : s.values) {
            if (v < 0) throw std::invalid_argument("finite specialization values must be >= 0");
            m = std::max(m, to_real(v));
        }
        return {m, Real(s.values.size())};
    }
    Real m = pow_u(t, s.start_exp);
    return {m, Real(s.multiplicity) / (1 - t)};
}

}  // namespace

Bounded cauchy_kernel(const SpecDescriptor& a, const SpecDescriptor& b,
                      const Rational& t, double tol) {
    if (t <= 0 || t >= 1) throw std::invalid_argument("cauchy kernel requires t in (0,1)");
    const Real tr = to_real(t);
    auto [ma, ua] = domination(a, tr);
    auto [mb, ub] = domination(b, tr);
    if (ma * mb >= 1) throw std::invalid_argument("cauchy kernel diverges: max x_i * y_j >= 1");
    if (ma == 0 || mb == 0) return Bounded::exact(Real(1));

    const Real r = ma * mb;
    const Real c = ua * ub;
    Real sum = 0;
    for (unsigned l = 1; l < 100000; ++l) {
        Real tl = pow_u(tr, l);
        sum += (1 - tl) / l * power_sum(a, l, tr) * power_sum(b, l, tr);
        Real tail = c * pow_u(r, l + 1) / (1 - r);
        if (tail < tol / 4) {
            // S in [sum, sum + tail], Pi = exp(S)
            Real lo = exp(sum);
            Real hi = lo * exp(tail);
            return {lo, hi - lo};
        }
    }
    throw std::runtime_error("cauchy kernel series did not converge");
}

Bounded measure_prod(const Partition& la, unsigned k, const Rational& t, double tol) {
    if (k < 1) throw std::invalid_argument("measure_prod requires k >= 1");
    Bounded q = principal(Kind::Q, la, Partition{}, SpecDescriptor::geometric(0, k), t, tol / 10);
    Bounded p = principal(Kind::P, la, Partition{}, SpecDescriptor::geometric(1, 1), t, tol / 10);
    Bounded pi = cauchy_kernel(SpecDescriptor::geometric(0, 1), SpecDescriptor::geometric(1, k),
                               t, tol / 10);
    return (q * p) / pi;
}

Bounded measure_joint(const std::vector<Partition>& las, const Rational& t, double tol) {
    if (las.empty()) throw std::invalid_argument("measure_joint requires k >= 1");
    for (std::size_t j = 1; j < las.size(); ++j)
        if (!las[j].contains(las[j - 1])) return Bounded::exact(Real(0));

    Bounded acc = principal(Kind::Q, las[0], Partition{}, SpecDescriptor::geometric(0, 1), t, tol / 10);
    for (std::size_t j = 1; j < las.size(); ++j)
        acc = acc * principal(Kind::Q, las[j], las[j - 1], SpecDescriptor::geometric(0, 1), t, tol / 10);
    acc = acc * principal(Kind::P, las.back(), Partition{}, SpecDescriptor::geometric(1, 1), t, tol / 10);
    Bounded pi = cauchy_kernel(SpecDescriptor::geometric(0, 1),
                               SpecDescriptor::geometric(1, static_cast<uint32_t>(las.size())),
                               t, tol / 10);
    return acc / pi;
}

}  // namespace coklab::hl

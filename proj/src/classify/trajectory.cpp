#include <bbsolve/classify.hpp>

#include <bbsolve/algebra/roots.hpp>
#include <bbsolve/kernels/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <memory>

namespace bbsolve {

using algebra::GaussianRational;

namespace {

// ---- exact jet polynomials in w_0 = y, w_1 = y', ..., w_k = y^(k) ----------------------------

using JetKey = std::vector<int>;
using JetPoly = std::map<JetKey, GaussianRational>;

void jet_add_term(JetPoly& a, const JetKey& key, const GaussianRational& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = a.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            a.erase(it);
    }
}

JetPoly jet_mul(const JetPoly& a, const JetPoly& b)
{
    JetPoly r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            JetKey key(ka.size());
            for (std::size_t i = 0; i < ka.size(); ++i)
                key[i] = ka[i] + kb[i];
            jet_add_term(r, key, ca * cb);
        }
    return r;
}

JetPoly jet_pow(const JetPoly& a, int e, int nv)
{
    JetPoly r;
    jet_add_term(r, JetKey(static_cast<std::size_t>(nv), 0), GaussianRational(1));
    for (int i = 0; i < e; ++i)
        r = jet_mul(r, a);
    return r;
}

JetPoly jet_var(int i, int nv, int power = 1)
{
    JetKey key(static_cast<std::size_t>(nv), 0);
    key[static_cast<std::size_t>(i)] = power;
    JetPoly r;
    jet_add_term(r, key, GaussianRational(1));
    return r;
}

// Total derivative: D w_i = w_{i+1}.
JetPoly jet_total_derivative(const JetPoly& a)
{
    JetPoly r;
    for (const auto& [key, c] : a)
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] == 0)
                continue;
            JetKey nk = key;
            nk[i] -= 1;
            nk[i + 1] += 1;
            jet_add_term(r, nk, c * GaussianRational(static_cast<long>(key[i])));
        }
    return r;
}

JetPoly y_chart_poly(const EquationSpec& spec)
{
    int nv = spec.k + 1;
    JetPoly g;
    for (const auto& [key, a] : spec.P.terms()) {
        JetKey jk(static_cast<std::size_t>(nv), 0);
        jk[0] = key.second;
        jk[static_cast<std::size_t>(spec.k)] += key.first;
        jet_add_term(g, jk, a);
    }
    return g;
}

// P(y^(k), y) * u^((k+1) I + J) for y = 1/u, with the common power of u removed.
JetPoly u_chart_poly(const EquationSpec& spec)
{
    int k = spec.k;
    int nv = k + 1;
    // F_{j+1} = u D F_j - (j+1) u' F_j, y^(j) = F_j / u^(j+1)
    JetPoly f = jet_var(0, nv, 0);
    for (int j = 0; j < k; ++j) {
        JetPoly a = jet_mul(jet_var(0, nv), jet_total_derivative(f));
        JetPoly b = jet_mul(jet_var(1, nv), f);
        for (const auto& [key, c] : b)
            jet_add_term(a, key, -c * GaussianRational(static_cast<long>(j + 1)));
        f = std::move(a);
    }
    int I = spec.P.degree_x();
    int J = spec.P.degree_y();
    JetPoly g;
    for (const auto& [key, a] : spec.P.terms()) {
        int i = key.first;
        int j = key.second;
        JetPoly term = jet_mul(jet_pow(f, i, nv), jet_var(0, nv, (k + 1) * (I - i) + (J - j)));
        for (const auto& [kk, c] : term)
            jet_add_term(g, kk, c * a);
    }
    int common = std::numeric_limits<int>::max();
    for (const auto& [key, c] : g)
        common = std::min(common, key[0]);
    if (common > 0 && common != std::numeric_limits<int>::max()) {
        JetPoly h;
        for (const auto& [key, c] : g) {
            JetKey nk = key;
            nk[0] -= common;
            h.emplace(nk, c);
        }
        g = std::move(h);
    }
    return g;
}

// ---- numeric evaluation ----------------------------------------------------------------------

template <class R> using C = std::complex<R>;

template <class R> C<R> to_c(const GaussianRational& g)
{
    cplx d = algebra::to_complex(g);
    return {static_cast<R>(d.real()), static_cast<R>(d.imag())};
}

template <class R> C<R> convolve(const C<R>* a, const C<R>* b, std::size_t n)
{
    C<R> acc{};
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i] * b[n - 1 - i];
    return acc;
}

template <> C<double> convolve<double>(const C<double>* a, const C<double>* b, std::size_t n)
{
    return kernels::dot_reversed(a, b, n);
}

template <class R> struct CompiledJet {
    struct Mono {
        std::vector<int> factors; // variable index per factor, with repetition
        JetKey exps;
        C<R> coeff;
    };
    int k = 1;
    std::vector<Mono> monos;

    CompiledJet() = default;
    CompiledJet(const JetPoly& g, int k_) : k(k_)
    {
        for (const auto& [key, c] : g) {
            Mono m;
            m.exps = key;
            m.coeff = to_c<R>(c);
            for (std::size_t i = 0; i < key.size(); ++i)
                for (int e = 0; e < key[i]; ++e)
                    m.factors.push_back(static_cast<int>(i));
            monos.push_back(std::move(m));
        }
    }

    static C<R> ipow(C<R> x, int e)
    {
        C<R> r(1);
        for (int i = 0; i < e; ++i)
            r *= x;
        return r;
    }

    C<R> eval(const std::vector<C<R>>& w, R* abs_sum = nullptr) const
    {
        C<R> acc{};
        R s = 0;
        for (const auto& m : monos) {
            C<R> t = m.coeff;
            for (std::size_t i = 0; i < m.exps.size(); ++i)
                t *= ipow(w[i], m.exps[i]);
            acc += t;
            s += std::abs(t);
        }
        if (abs_sum)
            *abs_sum = s;
        return acc;
    }

    // dG / dw_k
    C<R> eval_dk(const std::vector<C<R>>& w) const
    {
        C<R> acc{};
        std::size_t kk = static_cast<std::size_t>(k);
        for (const auto& m : monos) {
            int ek = m.exps[kk];
            if (ek == 0)
                continue;
            C<R> t = m.coeff * static_cast<R>(ek);
            for (std::size_t i = 0; i < m.exps.size(); ++i)
                t *= ipow(w[i], i == kk ? ek - 1 : m.exps[i]);
            acc += t;
        }
        return acc;
    }
};

template <class R> R falling_ratio(int l, int i)
{
    R r = 1;
    for (int t = 0; t < i; ++t)
        r *= static_cast<R>(l - t);
    return r;
}

// Taylor coefficients U_0..U_order of the solution through the jets w (w_i = U^(i)(0)).
template <class R>
std::vector<C<R>> taylor_expand(const CompiledJet<R>& g, const std::vector<C<R>>& w, int order, bool* singular)
{
    int k = g.k;
    int nv = k + 1;
    std::size_t len = static_cast<std::size_t>(order + 1);
    std::vector<C<R>> u(len + static_cast<std::size_t>(k));
    R fact = 1;
    for (int l = 0; l <= k; ++l) {
        if (l > 0)
            fact *= static_cast<R>(l);
        u[static_cast<std::size_t>(l)] = w[static_cast<std::size_t>(l)] / fact;
    }
    C<R> gk = g.eval_dk(w);
    if (gk == C<R>{} || !std::isfinite(std::abs(gk))) {
        *singular = true;
        return u;
    }
    *singular = false;
    // series of each variable w_i(h) = U^(i)(h)
    std::vector<std::vector<C<R>>> var(static_cast<std::size_t>(nv), std::vector<C<R>>(len));
    auto set_var = [&](int i, std::size_t j) {
        var[static_cast<std::size_t>(i)][j] =
            u[j + static_cast<std::size_t>(i)] * falling_ratio<R>(static_cast<int>(j) + i, i);
    };
    // prefix products per monomial
    std::vector<std::vector<std::vector<C<R>>>> pre(g.monos.size());
    for (std::size_t m = 0; m < g.monos.size(); ++m)
        pre[m].assign(g.monos[m].factors.size(), std::vector<C<R>>(len));
    auto fill = [&](std::size_t j) -> C<R> {
        C<R> res{};
        for (std::size_t m = 0; m < g.monos.size(); ++m) {
            const auto& mono = g.monos[m];
            if (mono.factors.empty()) {
                if (j == 0)
                    res += mono.coeff;
                continue;
            }
            auto& pm = pre[m];
            pm[0][j] = var[static_cast<std::size_t>(mono.factors[0])][j];
            for (std::size_t t = 1; t < mono.factors.size(); ++t)
                pm[t][j] = convolve<R>(pm[t - 1].data(), var[static_cast<std::size_t>(mono.factors[t])].data(), j + 1);
            res += mono.coeff * pm.back()[j];
        }
        return res;
    };
    for (int i = 0; i < nv; ++i)
        set_var(i, 0);
    fill(0);
    for (std::size_t j = 1; j + static_cast<std::size_t>(k) <= static_cast<std::size_t>(order); ++j) {
        for (int i = 0; i < k; ++i)
            set_var(i, j);
        var[static_cast<std::size_t>(k)][j] = C<R>{};
        C<R> res = fill(j);
        R scale = falling_ratio<R>(static_cast<int>(j) + k, k);
        u[j + static_cast<std::size_t>(k)] = -res / (gk * scale);
        set_var(k, j);
        fill(j);
    }
    u.resize(len);
    return u;
}

// Derivatives 0..nd of the series at h.
template <class R> std::vector<C<R>> series_jets(const std::vector<C<R>>& u, C<R> h, int nd)
{
    std::vector<C<R>> out(static_cast<std::size_t>(nd + 1));
    int order = static_cast<int>(u.size()) - 1;
    for (int i = 0; i <= nd; ++i) {
        C<R> acc{};
        for (int l = order; l >= i; --l)
            acc = acc * h + u[static_cast<std::size_t>(l)] * falling_ratio<R>(l, i);
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

template <class R> R radius_estimate(const std::vector<C<R>>& u)
{
    int order = static_cast<int>(u.size()) - 1;
    std::vector<int> nz;
    for (int l = order / 2; l <= order; ++l)
        if (std::abs(u[static_cast<std::size_t>(l)]) > 0)
            nz.push_back(l);
    R est = std::numeric_limits<R>::infinity();
    int pairs = 0;
    for (std::size_t t = nz.size(); t >= 2 && pairs < 4; --t, ++pairs) {
        int a = nz[t - 2];
        int b = nz[t - 1];
        R r = std::pow(std::abs(u[static_cast<std::size_t>(a)]) / std::abs(u[static_cast<std::size_t>(b)]),
                       R(1) / static_cast<R>(b - a));
        est = std::min(est, r);
    }
    return est;
}

// 1/a as jets: input and output are derivatives 0..k.
template <class R> std::vector<C<R>> invert_jets(const std::vector<C<R>>& w)
{
    std::size_t n = w.size();
    std::vector<C<R>> a(n), b(n), out(n);
    R fact = 1;
    for (std::size_t l = 0; l < n; ++l) {
        if (l > 0)
            fact *= static_cast<R>(l);
        a[l] = w[l] / fact;
    }
    b[0] = C<R>(1) / a[0];
    for (std::size_t l = 1; l < n; ++l) {
        C<R> acc{};
        for (std::size_t t = 1; t <= l; ++t)
            acc += a[t] * b[l - t];
        b[l] = -acc / a[0];
    }
    fact = 1;
    for (std::size_t l = 0; l < n; ++l) {
        if (l > 0)
            fact *= static_cast<R>(l);
        out[l] = b[l] * fact;
    }
    return out;
}

template <class R> cplx to_d(C<R> x)
{
    return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}

template <class R> C<R> from_d(cplx x)
{
    return {static_cast<R>(x.real()), static_cast<R>(x.imag())};
}

struct GermInfo {
    int n;
    cplx c0;
};

} // namespace

namespace detail {

struct Suspect {
    cplx z;
    std::size_t step;
};

// Taylor integrator over the two charts; shared by continue_trajectory and the sweep.
class IntegratorBase {
public:
    virtual ~IntegratorBase() = default;
    virtual void run(const std::vector<cplx>& path, Trajectory& out) = 0;
    virtual void restart(const Trajectory& t, std::size_t step) = 0;
    std::vector<Suspect> suspects;
};

} // namespace detail

namespace {

template <class R> class Integrator : public detail::IntegratorBase {
public:
    Integrator(const EquationSpec& spec, const std::vector<cplx>& seed_state, cplx z0, const TrajectoryOptions& opt,
               std::vector<GermInfo> germs, int seed_n, double scale)
        : k_(spec.k), opt_(opt), germs_(std::move(germs)), seed_n_(seed_n), scale_(scale)
    {
        gy_ = CompiledJet<R>(y_chart_poly(spec), spec.k);
        gu_ = CompiledJet<R>(u_chart_poly(spec), spec.k);
        z_ = from_d<R>(z0);
        w_.resize(seed_state.size());
        for (std::size_t i = 0; i < seed_state.size(); ++i)
            w_[i] = from_d<R>(seed_state[i]);
        switch_abs_ = opt.switch_abs;
        chart_ = Chart::Y;
        if (opt.invert_poles && std::abs(w_[0]) > switch_abs_)
            to_u();
    }

    void restart(const Trajectory& t, std::size_t step) override
    {
        const auto& s = t.steps[step];
        z_ = from_d<R>(s.z);
        chart_ = s.chart;
        std::vector<C<R>> u(s.taylor.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            u[i] = from_d<R>(s.taylor[i]);
        w_ = series_jets<R>(u, C<R>{}, k_);
    }

    void run(const std::vector<cplx>& path, Trajectory& out) override
    {
        out.k = k_;
        if (seed_pole_ && out.poles.empty()) {
            out.poles.push_back(*seed_pole_);
            best_err_.push_back(0.0);
        }
        std::deque<C<R>> way;
        for (std::size_t seg = 1; seg < path.size(); ++seg)
            way.push_back(from_d<R>(path[seg]));
        int guard = 0;
        while (!way.empty()) {
            if (++guard > opt_.max_steps)
                throw Error(ErrorKind::ToleranceLoss, "trajectory step limit reached");
            auto expansion = expand(out);
            if (!opt_.invert_poles)
                plan_detour(way, out);
            C<R> target = way.front();
            C<R> rem = target - z_;
            bool last = false;
            R rho = expansion.second;
            R h_len = static_cast<R>(opt_.step_factor) * rho;
            if (!(h_len > 0))
                throw Error(ErrorKind::SingularEncounter, "vanishing step size");
            if (std::abs(rem) <= h_len) {
                h_len = std::abs(rem);
                last = true;
            }
            if (h_len < static_cast<R>(1e-12 * scale_) && !last)
                throw Error(ErrorKind::SingularEncounter, "step size underflow near z = " + fmt(z_));
            C<R> h = std::abs(rem) > 0 ? rem / std::abs(rem) * h_len : C<R>{};
            if (!last && chart_ == Chart::U && last_pole_h_)
                h = avoid_pole(h, *last_pole_h_, rho);
            w_ = series_jets<R>(expansion.first, h, k_);
            z_ = last ? target : z_ + h;
            if (opt_.invert_poles)
                switch_chart();
            if (last)
                way.pop_front();
        }
        // final point recorded for state lookups
        expand(out);
    }

    void set_seed_pole(const PoleEvent& ev) { seed_pole_ = ev; }

private:
    static std::string fmt(C<R> z)
    {
        return std::to_string(static_cast<double>(z.real())) + (z.imag() < 0 ? " - " : " + ") +
               std::to_string(std::abs(static_cast<double>(z.imag()))) + "*i";
    }

    // Replaces a straight segment that crosses the avoidance disc of a known pole by an arc.
    void plan_detour(std::deque<C<R>>& way, const Trajectory& out) const
    {
        C<R> a = z_;
        C<R> b = way.front();
        R ra = static_cast<R>(opt_.avoid_radius * scale_);
        R len = std::abs(b - a);
        if (len == 0)
            return;
        C<R> dir = (b - a) / len;
        std::optional<std::pair<R, C<R>>> hit;
        for (const auto& p : out.poles) {
            C<R> pz = from_d<R>(p.z);
            if (std::abs(a - pz) < ra)
                continue;
            C<R> rel = (pz - a) / dir;
            if (std::abs(rel.imag()) >= ra)
                continue;
            R half = std::sqrt(ra * ra - rel.imag() * rel.imag());
            R t1 = rel.real() - half;
            R t2 = rel.real() + half;
            if (t1 < 0 || t2 > len)
                continue;
            if (!hit || t1 < hit->first)
                hit = std::make_pair(t1, pz);
        }
        if (!hit)
            return;
        C<R> pz = hit->second;
        C<R> rel = (pz - a) / dir;
        R rb = static_cast<R>(1.2) * ra;
        R half = std::sqrt(rb * rb - rel.imag() * rel.imag());
        C<R> e1 = a + dir * std::max(rel.real() - half, R(0));
        C<R> e2 = a + dir * std::min(rel.real() + half, len);
        R th1 = std::arg(e1 - pz);
        R th2 = std::arg(e2 - pz);
        R delta = th2 - th1;
        const R pi = std::acos(R(-1));
        while (delta > pi)
            delta -= 2 * pi;
        while (delta <= -pi)
            delta += 2 * pi;
        int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(delta) / static_cast<R>(0.4))));
        std::vector<C<R>> arc;
        arc.push_back(e1);
        for (int i = 1; i < pieces; ++i)
            arc.push_back(pz + std::polar(rb, th1 + delta * static_cast<R>(i) / static_cast<R>(pieces)));
        arc.push_back(e2);
        for (auto it = arc.rbegin(); it != arc.rend(); ++it)
            way.push_front(*it);
    }

    // Pole of order n dominating the y series: the coefficient J of (h - d)^n Y(h) vanishes.
    void estimate_pole(const std::vector<C<R>>& u, std::size_t step, Trajectory& out)
    {
        int order = static_cast<int>(u.size()) - 1;
        std::vector<int> orders;
        for (const auto& g : germs_)
            if (std::find(orders.begin(), orders.end(), g.n) == orders.end())
                orders.push_back(g.n);
        if (std::find(orders.begin(), orders.end(), seed_n_) == orders.end())
            orders.push_back(seed_n_);
        std::sort(orders.begin(), orders.end());
        for (int n : orders) {
            auto root = [&](int J, C<R> d0) -> std::optional<C<R>> {
                C<R> d = d0;
                for (int it = 0; it < 40; ++it) {
                    C<R> f{}, fp{};
                    for (int t = 0; t <= n; ++t) {
                        R binom = 1;
                        for (int q = 0; q < t; ++q)
                            binom = binom * static_cast<R>(n - q) / static_cast<R>(q + 1);
                        int e = n - t;
                        C<R> coef = binom * u[static_cast<std::size_t>(J - t)] * (e % 2 == 0 ? R(1) : R(-1));
                        f += coef * std::pow(d, e);
                        if (e > 0)
                            fp += coef * static_cast<R>(e) * std::pow(d, e - 1);
                    }
                    if (fp == C<R>{})
                        return std::nullopt;
                    C<R> dx = f / fp;
                    d -= dx;
                    if (!std::isfinite(static_cast<double>(std::abs(d))))
                        return std::nullopt;
                    if (std::abs(dx) <= 8 * std::numeric_limits<R>::epsilon() * std::abs(d))
                        break;
                }
                return d;
            };
            int l = order - 1;
            if (std::abs(u[static_cast<std::size_t>(order)]) == 0)
                continue;
            C<R> d0 = u[static_cast<std::size_t>(l)] / u[static_cast<std::size_t>(order)] *
                      (static_cast<R>(n + l) / static_cast<R>(l + 1));
            auto da = root(order, d0);
            auto db = root(order - 1, d0);
            if (!da || !db)
                continue;
            R err = std::abs(*da - *db);
            R dist = std::abs(*da);
            if (err > static_cast<R>(1e-7) * dist) {
                if (err < static_cast<R>(0.05) * dist)
                    suspects.push_back({to_d<R>(z_ + *da), step});
                continue;
            }
            // c0 = ((h - d)^n Y)(d)
            C<R> c0{};
            C<R> pw(1);
            for (int j = 0; j <= order; ++j) {
                C<R> a{};
                for (int t = 0; t <= std::min(n, j); ++t) {
                    R binom = 1;
                    for (int q = 0; q < t; ++q)
                        binom = binom * static_cast<R>(n - q) / static_cast<R>(q + 1);
                    int e = n - t;
                    a += binom * u[static_cast<std::size_t>(j - t)] * std::pow(-*da, e);
                }
                c0 += a * pw;
                pw *= *da;
            }
            PoleEvent ev;
            ev.z = to_d<R>(z_ + *da);
            ev.order = n;
            ev.c0 = to_d<R>(c0);
            ev.err = static_cast<double>(err);
            record_pole(ev, static_cast<double>(err), out);
            return;
        }
    }

    void record_pole(PoleEvent ev, double quality, Trajectory& out)
    {
        for (std::size_t gi = 0; gi < germs_.size(); ++gi)
            if (germs_[gi].n == ev.order && std::abs(germs_[gi].c0 - ev.c0) <= 1e-6 * std::abs(germs_[gi].c0)) {
                ev.germ = static_cast<int>(gi);
                break;
            }
        for (std::size_t pi = 0; pi < out.poles.size(); ++pi) {
            if (std::abs(out.poles[pi].z - ev.z) < std::max(1e-3 * scale_, 100 * (ev.err + out.poles[pi].err))) {
                if (quality < best_err_[pi]) {
                    out.poles[pi] = ev;
                    best_err_[pi] = quality;
                }
                return;
            }
        }
        out.poles.push_back(ev);
        best_err_.push_back(quality);
    }

    // Keeps chart-U expansion points away from the pole, where dG/dw_k degenerates.
    C<R> avoid_pole(C<R> h, C<R> pole, R rho) const
    {
        R r_avoid = static_cast<R>(0.1 * scale_);
        if (std::abs(h - pole) >= r_avoid)
            return h;
        C<R> dir = h / std::abs(h);
        C<R> rel = pole / dir; // pole in the frame of the step direction
        R disc = r_avoid * r_avoid - rel.imag() * rel.imag();
        if (disc <= 0)
            return h;
        R root = std::sqrt(disc);
        R enter = rel.real() - root;
        R leave = rel.real() + root;
        if (leave <= static_cast<R>(0.6) * rho)
            return dir * leave;
        if (enter > static_cast<R>(0.02 * scale_))
            return dir * enter;
        return h;
    }

    const CompiledJet<R>& g() const { return chart_ == Chart::Y ? gy_ : gu_; }

    void to_u()
    {
        w_ = invert_jets<R>(w_);
        chart_ = Chart::U;
    }

    void to_y()
    {
        w_ = invert_jets<R>(w_);
        chart_ = Chart::Y;
    }

    void switch_chart()
    {
        R y_abs = chart_ == Chart::Y ? std::abs(w_[0]) : R(1) / std::abs(w_[0]);
        if (chart_ == Chart::Y && y_abs > static_cast<R>(switch_abs_))
            to_u();
        else if (chart_ == Chart::U && y_abs < static_cast<R>(switch_abs_ / 4))
            to_y();
    }

    // Projects the top jet onto G = 0 and records a step; returns (Taylor coefficients, radius).
    std::pair<std::vector<C<R>>, R> expand(Trajectory& out)
    {
        const auto& G = g();
        R abs_sum = 0;
        C<R> val = G.eval(w_, &abs_sum);
        double defect = abs_sum > 0 ? static_cast<double>(std::abs(val) / abs_sum) : 0.0;
        for (int it = 0; it < 4 && val != C<R>{}; ++it) {
            C<R> d = G.eval_dk(w_);
            if (d == C<R>{})
                break;
            w_[static_cast<std::size_t>(k_)] -= val / d;
            val = G.eval(w_);
        }
        if (defect > 1e4 * opt_.tol)
            throw Error(ErrorKind::ToleranceLoss, "consistency defect " + std::to_string(defect) + " at z = " + fmt(z_));
        bool singular = false;
        auto u = taylor_expand<R>(G, w_, opt_.order, &singular);
        if (singular)
            throw Error(ErrorKind::SingularEncounter, "dP/dp vanishes at z = " + fmt(z_));
        R rho = radius_estimate<R>(u);
        if (!std::isfinite(static_cast<double>(rho)))
            rho = static_cast<R>(scale_);
        rho = std::min(rho, static_cast<R>(scale_));
        TrajectoryStep step;
        step.z = to_d<R>(z_);
        step.chart = chart_;
        step.taylor.reserve(u.size());
        for (const auto& c : u)
            step.taylor.push_back(to_d<R>(c));
        step.radius = static_cast<double>(rho);
        step.defect = defect;
        out.max_defect = std::max(out.max_defect, defect);
        out.steps.push_back(std::move(step));
        last_pole_h_.reset();
        if (chart_ == Chart::U)
            locate_pole(u, rho, out);
        else
            estimate_pole(u, out.steps.size() - 1, out);
        return {std::move(u), rho};
    }

    void locate_pole(const std::vector<C<R>>& u, R rho, Trajectory& out)
    {
        if (std::abs(u[1]) == 0)
            return;
        C<R> h = -static_cast<R>(seed_n_) * u[0] / u[1];
        if (std::abs(h) > static_cast<R>(0.6) * rho)
            return;
        auto newton = [&](int d, C<R> h0) -> std::optional<C<R>> {
            C<R> x = h0;
            for (int it = 0; it < 60; ++it) {
                auto j = series_jets<R>(u, x, d + 1);
                C<R> f = j[static_cast<std::size_t>(d)];
                C<R> fp = j[static_cast<std::size_t>(d + 1)];
                if (fp == C<R>{})
                    return std::nullopt;
                C<R> dx = f / fp;
                x -= dx;
                if (std::abs(dx) <= std::numeric_limits<R>::epsilon() * 4 * (std::abs(x) + rho))
                    return x;
            }
            return std::abs(x) < rho ? std::optional<C<R>>(x) : std::nullopt;
        };
        auto hs = newton(seed_n_ - 1, h);
        if (!hs || std::abs(*hs) > static_cast<R>(0.6) * rho)
            return;
        // order = number of vanishing derivatives at the root
        int max_order = 8;
        auto jets = series_jets<R>(u, *hs, max_order + 1);
        R norm = 0;
        for (std::size_t l = 0; l < u.size(); ++l)
            norm = std::max(norm, std::abs(u[l]) * std::pow(rho, static_cast<R>(l)));
        int order = 0;
        R fact = 1;
        while (order <= max_order) {
            if (order > 0)
                fact *= static_cast<R>(order);
            R scaled = std::abs(jets[static_cast<std::size_t>(order)]) / fact * std::pow(rho, static_cast<R>(order));
            if (scaled > static_cast<R>(1e-7) * norm)
                break;
            ++order;
        }
        if (order == 0 || order > max_order || std::abs(*hs) > static_cast<R>(0.5) * rho)
            return;
        if (order != seed_n_) {
            auto refined = newton(order - 1, *hs);
            if (!refined)
                return;
            hs = refined;
            jets = series_jets<R>(u, *hs, max_order + 1);
        }
        R ofact = 1;
        for (int l = 2; l <= order; ++l)
            ofact *= static_cast<R>(l);
        C<R> c0 = ofact / jets[static_cast<std::size_t>(order)];
        // the expansion point must see the leading behaviour (z - z*)^n / c0
        C<R> lead = u[0] * c0 / std::pow(-*hs, order);
        if (!(std::abs(lead - C<R>(1)) < static_cast<R>(0.5)))
            return;
        last_pole_h_ = *hs;
        PoleEvent ev;
        ev.z = to_d<R>(z_ + *hs);
        ev.order = order;
        ev.c0 = to_d<R>(c0);
        ev.err = static_cast<double>(std::numeric_limits<R>::epsilon()) * 1e3 * scale_;
        record_pole(ev, -static_cast<double>(std::abs(*hs)), out);
    }

    int k_;
    TrajectoryOptions opt_;
    std::vector<GermInfo> germs_;
    int seed_n_;
    double scale_;
    double switch_abs_ = 0;
    CompiledJet<R> gy_, gu_;
    Chart chart_ = Chart::Y;
    C<R> z_;
    std::vector<C<R>> w_;
    std::vector<double> best_err_;
    std::optional<C<R>> last_pole_h_;
    std::optional<PoleEvent> seed_pole_;
};

std::vector<GermInfo> germ_infos(const std::vector<LaurentSeries>& germs)
{
    std::vector<GermInfo> r;
    for (const auto& g : germs)
        r.push_back({g.n, g.coeffs.empty() ? cplx{} : g.coeffs[0].to_complex()});
    return r;
}

std::unique_ptr<detail::IntegratorBase> make_integrator(const EquationSpec& spec, const LaurentSeries& seed, cplx z0,
                                                        TrajectoryOptions opt, const std::vector<LaurentSeries>& germs,
                                                        double scale)
{
    auto state = germ_state(seed, z0);
    if (opt.switch_abs <= 0) {
        double c0 = seed.coeffs.empty() ? 1.0 : std::abs(seed.coeffs[0].to_complex());
        opt.switch_abs = c0 / std::pow(0.2 * scale, seed.n);
    }
    auto infos = germ_infos(germs.empty() ? std::vector<LaurentSeries>{seed} : germs);
    PoleEvent ev;
    ev.z = 0;
    ev.order = seed.n;
    ev.c0 = seed.coeffs.empty() ? cplx{} : seed.coeffs[0].to_complex();
    for (std::size_t gi = 0; gi < infos.size(); ++gi)
        if (infos[gi].n == ev.order && std::abs(infos[gi].c0 - ev.c0) <= 1e-12 * std::abs(ev.c0)) {
            ev.germ = static_cast<int>(gi);
            break;
        }
    if (opt.extended) {
        auto r = std::make_unique<Integrator<long double>>(spec, state, z0, opt, infos, seed.n, scale);
        r->set_seed_pole(ev);
        return r;
    }
    auto r = std::make_unique<Integrator<double>>(spec, state, z0, opt, infos, seed.n, scale);
    r->set_seed_pole(ev);
    return r;
}

} // namespace

std::vector<cplx> germ_state(const LaurentSeries& seed, cplx z)
{
    std::vector<cplx> out(static_cast<std::size_t>(seed.k + 1));
    for (std::size_t j = 0; j < seed.coeffs.size(); ++j) {
        cplx c = seed.coeffs[j].to_complex();
        if (c == cplx{})
            continue;
        long e = static_cast<long>(j) - seed.n;
        for (int i = 0; i <= seed.k; ++i) {
            double f = 1;
            for (int t = 0; t < i; ++t)
                f *= static_cast<double>(e - t);
            if (f == 0)
                continue;
            out[static_cast<std::size_t>(i)] += c * f * std::pow(z, static_cast<double>(e - i));
        }
    }
    return out;
}

double germ_radius(const LaurentSeries& seed)
{
    double est = std::numeric_limits<double>::infinity();
    std::size_t n = seed.coeffs.size();
    double c0 = seed.coeffs.empty() ? 1.0 : std::abs(seed.coeffs[0].to_complex());
    if (c0 == 0)
        c0 = 1;
    for (std::size_t j = std::max<std::size_t>(static_cast<std::size_t>(seed.n) + 2, n / 2); j < n; ++j) {
        double a = std::abs(seed.coeffs[j].to_complex()) / c0;
        if (a == 0)
            continue;
        est = std::min(est, std::pow(a, -1.0 / static_cast<double>(j)));
    }
    return std::isfinite(est) ? est : 1.0;
}

std::optional<std::vector<cplx>> Trajectory::state_at(cplx z) const
{
    const TrajectoryStep* best = nullptr;
    double best_d = 0;
    for (const auto& s : steps) {
        double d = std::abs(z - s.z);
        if (d > 0.5 * s.radius)
            continue;
        // prefer the y chart when both are available
        double key = d / s.radius + (s.chart == Chart::U ? 0.25 : 0.0);
        if (!best || key < best_d) {
            best = &s;
            best_d = key;
        }
    }
    if (!best)
        return std::nullopt;
    auto jets = series_jets<double>(best->taylor, z - best->z, k);
    if (best->chart == Chart::U)
        jets = invert_jets<double>(jets);
    return jets;
}

Trajectory continue_trajectory(const EquationSpec& spec, const LaurentSeries& seed, const std::vector<cplx>& path,
                               const TrajectoryOptions& opt, const std::vector<LaurentSeries>& germs)
{
    if (path.empty())
        throw Error(ErrorKind::PreconditionViolation, "empty path");
    double scale = germ_radius(seed);
    auto integ = make_integrator(spec, seed, path[0], opt, germs, scale);
    Trajectory t;
    t.k = spec.k;
    integ->run(path, t);
    return t;
}

namespace {

std::vector<cplx> ring_path(double r, double r_next, cplx rot)
{
    std::vector<cplx> pts = {{r, 0}, {r, r}, {-r, r}, {-r, -r}, {r, -r}, {r, 0}, {r_next, 0}};
    for (auto& p : pts)
        p *= rot;
    return pts;
}

} // namespace

SweepResult sweep_for_periods(const EquationSpec& spec, const LaurentSeries& seed, const std::vector<LaurentSeries>& germs,
                              const SweepOptions& opt)
{
    SweepResult res;
    double scale = germ_radius(seed);
    res.scale = scale;
    double dr = opt.ring_spacing * scale;
    cplx rot = std::polar(1.0, opt.rotation);
    double r0 = 0.37 * dr;
    // a singular encounter perturbs the sweep by rotating it
    std::unique_ptr<detail::IntegratorBase> integ;
    for (int attempt = 0; attempt < 3; ++attempt) {
        rot = std::polar(1.0, opt.rotation + 0.173 * attempt);
        std::vector<cplx> path = {cplx(r0, 0) * rot};
        for (int s = 0; s < opt.rings; ++s) {
            auto ring = ring_path((s + 0.37) * dr, (s + 1.37) * dr, rot);
            path.insert(path.end(), ring.begin(), ring.end());
        }
        integ = make_integrator(spec, seed, path[0], opt.trajectory, germs, scale);
        res.trajectory = Trajectory{};
        res.trajectory.k = spec.k;
        try {
            integ->run(path, res.trajectory);
            break;
        } catch (const Error& e) {
            res.notes.push_back(std::string("sweep attempt ") + std::to_string(attempt + 1) + " stopped: " + e.what());
        }
    }
    Trajectory& t = res.trajectory;
    // refine suspected poles the path did not cross
    double outer = (opt.rings - 1 + 0.37) * dr;
    std::vector<detail::Suspect> todo;
    for (const auto& s : integ->suspects) {
        cplx zl = s.z / rot;
        if (std::max(std::abs(zl.real()), std::abs(zl.imag())) > outer)
            continue;
        bool known = false;
        for (const auto& p : t.poles)
            if (std::abs(p.z - s.z) < 0.15 * scale)
                known = true;
        for (const auto& q : todo)
            if (std::abs(q.z - s.z) < 0.15 * scale)
                known = true;
        if (!known)
            todo.push_back(s);
    }
    int side_failures = 0;
    for (const auto& s : todo) {
        bool known = false;
        for (const auto& p : t.poles)
            if (std::abs(p.z - s.z) < 0.15 * scale)
                known = true;
        if (known)
            continue;
        // nearest recorded y-chart step as the start of a side path through the suspect
        std::size_t best = s.step;
        double bd = std::abs(t.steps[best].z - s.z);
        for (std::size_t i = 0; i < t.steps.size(); ++i) {
            double d = std::abs(t.steps[i].z - s.z);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        cplx start = t.steps[best].z;
        cplx dir = s.z - start;
        double len = std::abs(dir);
        if (len == 0)
            continue;
        cplx end = s.z + dir / len * (0.1 * scale);
        try {
            integ->restart(t, best);
            integ->run({start, end}, t);
        } catch (const Error&) {
            ++side_failures;
        }
    }
    if (side_failures > 0)
        res.notes.push_back(std::to_string(side_failures) + " side paths toward suspected poles failed");
    // poles beyond the outer ring are seen from one side only
    double reach = outer + 0.5 * dr;
    t.poles.erase(std::remove_if(t.poles.begin(), t.poles.end(),
                                 [&](const PoleEvent& p) {
                                     cplx zl = p.z / rot;
                                     return std::max(std::abs(zl.real()), std::abs(zl.imag())) > reach;
                                 }),
                  t.poles.end());
    std::sort(t.poles.begin(), t.poles.end(), [](const PoleEvent& a, const PoleEvent& b) {
        return algebra::root_order_less(a.z, b.z);
    });
    try {
        res.periods = detect_periods(t.poles, opt.period_tol, &t);
    } catch (const Error& e) {
        res.periods.rank = 0;
        res.periods.notes.push_back(e.what());
    }
    return res;
}

} // namespace bbsolve

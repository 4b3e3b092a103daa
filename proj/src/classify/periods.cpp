#include <bbsolve/classify.hpp>

#include <algorithm>
#include <cmath>

namespace bbsolve {

namespace {

double angle_key(cplx t)
{
    return std::abs(std::arg(t));
}

// Among vectors of equal length (within rel) prefers the smallest |arg|, then positive arg.
bool prefer(cplx a, cplx b, double rel = 1e-9)
{
    double la = std::abs(a);
    double lb = std::abs(b);
    if (std::abs(la - lb) > rel * std::max(la, lb))
        return la < lb;
    double ka = angle_key(a);
    double kb = angle_key(b);
    if (std::abs(ka - kb) > 1e-9)
        return ka < kb;
    return std::arg(a) > std::arg(b);
}

bool collinear(cplx a, cplx b, double tol)
{
    return std::abs((b / a).imag()) <= tol * std::abs(b / a);
}

double state_distance(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    double num = 0;
    double den = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(a[i]));
    }
    return num / den;
}

} // namespace

std::pair<cplx, cplx> reduce_basis(cplx t1, cplx t2)
{
    for (int it = 0; it < 100; ++it) {
        if (std::abs(t2) < std::abs(t1))
            std::swap(t1, t2);
        double mu = std::round((t2 * std::conj(t1)).real() / std::norm(t1));
        if (mu == 0)
            break;
        t2 -= mu * t1;
    }
    // canonical representatives of the shortest vectors
    std::vector<cplx> firsts = {t1, -t1};
    if (std::abs(std::abs(t2) - std::abs(t1)) <= 1e-9 * std::abs(t1)) {
        firsts.push_back(t2);
        firsts.push_back(-t2);
    }
    for (cplx c : {t1 + t2, t1 - t2})
        if (std::abs(std::abs(c) - std::abs(t1)) <= 1e-9 * std::abs(t1)) {
            firsts.push_back(c);
            firsts.push_back(-c);
        }
    cplx best1 = firsts[0];
    for (cplx c : firsts)
        if (prefer(c, best1))
            best1 = c;
    // second vector: shortest lattice vector not collinear with best1, Im(T2/T1) > 0
    std::vector<cplx> seconds;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            cplx c = static_cast<double>(a) * t1 + static_cast<double>(b) * t2;
            if (std::abs(c) == 0 || collinear(best1, c, 1e-9))
                continue;
            if ((c / best1).imag() <= 0)
                continue;
            seconds.push_back(c);
        }
    cplx best2 = seconds.empty() ? t2 : seconds[0];
    for (cplx c : seconds) {
        double lc = std::abs(c);
        double lb = std::abs(best2);
        if (lc < lb * (1 - 1e-9) || (std::abs(lc - lb) <= 1e-9 * lb && std::abs((c / best1).real()) < std::abs((best2 / best1).real())))
            best2 = c;
    }
    return {best1, best2};
}

PeriodResult detect_periods(const std::vector<PoleEvent>& poles, double tol, const Trajectory* trajectory)
{
    if (poles.size() < 2)
        throw Error(ErrorKind::Inconclusive, "fewer than two poles located");
    PeriodResult out;
    cplx center{};
    for (const auto& p : poles)
        center += p.z;
    center /= static_cast<double>(poles.size());
    double hull = 0;
    for (const auto& p : poles)
        hull = std::max(hull, std::abs(p.z - center));
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t j = i + 1; j < poles.size(); ++j)
            min_sep = std::min(min_sep, std::abs(poles[i].z - poles[j].z));
    double match = tol * min_sep;

    auto is_pole = [&](cplx z) {
        for (const auto& p : poles)
            if (std::abs(p.z - z) <= match)
                return true;
        return false;
    };
    // candidate differences, shortest first
    std::vector<cplx> cand;
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t j = 0; j < poles.size(); ++j) {
            if (i == j)
                continue;
            cplx d = poles[j].z - poles[i].z;
            bool dup = false;
            for (cplx c : cand)
                if (std::abs(c - d) <= match)
                    dup = true;
            if (!dup)
                cand.push_back(d);
        }
    std::sort(cand.begin(), cand.end(), [](cplx a, cplx b) { return prefer(a, b); });

    auto pole_consistent = [&](cplx t) {
        int hits = 0;
        for (const auto& p : poles) {
            cplx q = p.z + t;
            if (std::abs(q - center) > 0.8 * hull)
                continue;
            if (!is_pole(q))
                return false;
            ++hits;
        }
        return hits >= 1;
    };
    int best_points = 0;
    auto state_verified = [&](cplx t) {
        if (!trajectory)
            return true;
        int ok = 0;
        int tested = 0;
        for (const auto& s : trajectory->steps) {
            if (s.chart != Chart::Y)
                continue;
            auto a = trajectory->state_at(s.z);
            auto b = trajectory->state_at(s.z + t);
            if (!a || !b)
                continue;
            ++tested;
            if (state_distance(*a, *b) <= tol)
                ++ok;
            else
                return false;
            if (tested >= 8)
                break;
        }
        if (ok >= 3)
            best_points = std::min(best_points == 0 ? ok : best_points, ok);
        return ok >= 3;
    };

    std::vector<cplx> periods;
    for (cplx t : cand) {
        if (periods.size() == 2)
            break;
        if (!periods.empty() && collinear(periods[0], t, tol))
            continue;
        if (!pole_consistent(t))
            continue;
        if (!state_verified(t)) {
            out.notes.push_back("candidate period rejected by state comparison");
            continue;
        }
        periods.push_back(t);
    }
    if (periods.empty()) {
        out.notes.push_back("no lattice vector verified");
        return out;
    }
    out.verified_points = best_points;
    if (periods.size() == 1) {
        cplx t = periods[0];
        bool on_imag_axis = std::abs(t.real()) <= 1e-9 * std::abs(t);
        if (on_imag_axis ? t.imag() < 0 : t.real() < 0)
            t = -t;
        out.rank = 1;
        out.periods = {t};
    } else {
        auto [t1, t2] = reduce_basis(periods[0], periods[1]);
        out.rank = 2;
        out.periods = {t1, t2};
    }
    // least-squares refinement over all pole differences that fit the lattice
    std::size_t r = out.periods.size();
    std::vector<std::vector<double>> ata(r, std::vector<double>(r, 0.0));
    std::vector<cplx> atb(r);
    double worst = 0;
    int fitted = 0;
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t j = i + 1; j < poles.size(); ++j) {
            cplx d = poles[j].z - poles[i].z;
            std::vector<double> coef(r);
            cplx approx{};
            if (r == 1) {
                coef[0] = std::round((d / out.periods[0]).real());
            } else {
                // solve d = a T1 + b T2 in reals
                cplx t1 = out.periods[0], t2 = out.periods[1];
                double det = t1.real() * t2.imag() - t1.imag() * t2.real();
                coef[0] = std::round((d.real() * t2.imag() - d.imag() * t2.real()) / det);
                coef[1] = std::round((t1.real() * d.imag() - t1.imag() * d.real()) / det);
            }
            for (std::size_t a = 0; a < r; ++a)
                approx += coef[a] * out.periods[a];
            double miss = std::abs(approx - d);
            if (miss > match)
                continue;
            ++fitted;
            worst = std::max(worst, miss);
            for (std::size_t a = 0; a < r; ++a) {
                atb[a] += coef[a] * d;
                for (std::size_t b = 0; b < r; ++b)
                    ata[a][b] += coef[a] * coef[b];
            }
        }
    if (fitted > 0) {
        if (r == 1 && ata[0][0] > 0) {
            out.periods[0] = atb[0] / ata[0][0];
        } else if (r == 2) {
            double det = ata[0][0] * ata[1][1] - ata[0][1] * ata[1][0];
            if (std::abs(det) > 0) {
                cplx t1 = (ata[1][1] * atb[0] - ata[0][1] * atb[1]) / det;
                cplx t2 = (ata[0][0] * atb[1] - ata[1][0] * atb[0]) / det;
                out.periods = {t1, t2};
            }
        }
    }
    for (std::size_t a = 0; a < r; ++a)
        out.errors.push_back(std::max(worst, 1e-15 * std::abs(out.periods[a])));
    out.notes.push_back(std::to_string(fitted) + " pole differences fit the lattice");
    return out;
}

} // namespace bbsolve

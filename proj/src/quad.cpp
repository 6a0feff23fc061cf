#include "anharmonic/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "anharmonic/errors.hpp"

namespace anharmonic::quad {

bool Bounds::finite() const noexcept { return std::isfinite(lower) && std::isfinite(upper); }

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Maps an axis onto a finite parameter interval. Infinite ends use
// x = origin + u / (1 - u^2).
struct AxisMap {
    double u_lo = 0.0;
    double u_hi = 1.0;
    double origin = 0.0;
    bool identity = true;

    static AxisMap make(Bounds b) {
        AxisMap m;
        const bool lo_inf = std::isinf(b.lower);
        const bool hi_inf = std::isinf(b.upper);
        if (!lo_inf && !hi_inf) {
            m.u_lo = b.lower;
            m.u_hi = b.upper;
            return m;
        }
        m.identity = false;
        if (lo_inf && hi_inf) {
            m.u_lo = -1.0;
            m.u_hi = 1.0;
        } else if (hi_inf) {
            m.origin = b.lower;
            m.u_lo = 0.0;
            m.u_hi = 1.0;
        } else {
            m.origin = b.upper;
            m.u_lo = -1.0;
            m.u_hi = 0.0;
        }
        return m;
    }

    // Returns x(u) and writes dx/du.
    double operator()(double u, double& jac) const {
        if (identity) {
            jac = 1.0;
            return u;
        }
        const double d = 1.0 - u * u;
        jac = (1.0 + u * u) / (d * d);
        return origin + u / d;
    }
};

void validate(const Options& opts) {
    if (!(opts.abs_tol > 0.0) || !(opts.rel_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (opts.initial_splits == 0) throw std::invalid_argument("initial_splits must be >= 1");
}

void validate(Bounds b) {
    if (!(b.lower < b.upper)) {
        throw std::invalid_argument("integration bounds must satisfy lower < upper");
    }
}

struct Segment {
    double a;
    double b;
    double value;
    double error;
    std::size_t id;
};

struct WorseFirst {
    template <class T>
    bool operator()(const T& l, const T& r) const {
        if (l.error != r.error) return l.error < r.error;
        return l.id > r.id;
    }
};

template <class F>
Segment gk15(const F& g, double a, double b, std::size_t id) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = g(centre);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = g(centre - dx);
        f2[j] = g(centre + dx);
        const double s = f1[j] + f2[j];
        resk += kWgk[j] * s;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double hl = std::abs(half);
    resasc *= hl;
    resabs *= hl;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * resabs, err);
    }
    return {a, b, resk * half, err, id};
}

template <class T>
void resum(const std::vector<T>& cells, double& value, double& error) {
    value = 0.0;
    error = 0.0;
    for (const auto& c : cells) {
        value += c.value;
        error += c.error;
    }
}

// Exposes the heap's storage so results can be summed in a fixed order.
template <class T>
class CellHeap : public std::priority_queue<T, std::vector<T>, WorseFirst> {
public:
    const std::vector<T>& storage() const { return this->c; }
};

// Running sums drift; recompute them from scratch on an amortised schedule.
template <class T>
void resum_all(const CellHeap<T>& heap, const std::vector<T>& frozen, double& value,
               double& error) {
    double v = 0.0;
    double e = 0.0;
    resum(heap.storage(), v, e);
    double fv = 0.0;
    double fe = 0.0;
    resum(frozen, fv, fe);
    value = v + fv;
    error = e + fe;
}

template <class T>
QuadResult finish(const CellHeap<T>& heap, const std::vector<T>& frozen, std::size_t evals) {
    std::vector<T> all(heap.storage());
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const T& l, const T& r) { return l.id < r.id; });
    QuadResult out;
    resum(all, out.value, out.abs_error);
    out.evaluations = evals;
    return out;
}

// Genz-Malik degree 7 rule with embedded degree 5 rule, specialised to 2D.
constexpr double kLambda2 = 0.35856858280031809199064515390793749545406372969943;  // sqrt(9/70)
constexpr double kLambda4 = 0.94868329805051379959966806332981556011586654179756;  // sqrt(9/10)
constexpr double kLambda5 = 0.68824720161168529772162873429362352512689535661564;  // sqrt(9/19)
constexpr double kW1 = (12824.0 - 9120.0 * 2 + 400.0 * 4) / 19683.0;
constexpr double kW2 = 980.0 / 6561.0;
constexpr double kW3 = (1820.0 - 400.0 * 2) / 19683.0;
constexpr double kW4 = 200.0 / 19683.0;
constexpr double kW5 = 6859.0 / 19683.0 / 4.0;
constexpr double kE1 = (729.0 - 950.0 * 2 + 50.0 * 4) / 729.0;
constexpr double kE2 = 245.0 / 486.0;
constexpr double kE3 = (265.0 - 100.0 * 2) / 1458.0;
constexpr double kE4 = 25.0 / 729.0;
constexpr double kRatio = (kLambda2 * kLambda2) / (kLambda4 * kLambda4);

constexpr std::size_t kGmPoints = 17;

struct Cell {
    double cx;
    double cp;
    double hx;
    double hp;
    double value;
    double error;
    int split_axis;
    std::size_t id;
};

template <class G>
Cell genz_malik(const G& g, double cx, double cp, double hx, double hp, std::size_t id) {
    const double f0 = g(cx, cp);
    const double fx2p = g(cx + kLambda2 * hx, cp);
    const double fx2m = g(cx - kLambda2 * hx, cp);
    const double fp2p = g(cx, cp + kLambda2 * hp);
    const double fp2m = g(cx, cp - kLambda2 * hp);
    const double fx4p = g(cx + kLambda4 * hx, cp);
    const double fx4m = g(cx - kLambda4 * hx, cp);
    const double fp4p = g(cx, cp + kLambda4 * hp);
    const double fp4m = g(cx, cp - kLambda4 * hp);

    const double sum2 = fx2p + fx2m + fp2p + fp2m;
    const double sum3 = fx4p + fx4m + fp4p + fp4m;
    const double diff_x = std::abs(fx2p + fx2m - 2.0 * f0 - kRatio * (fx4p + fx4m - 2.0 * f0));
    const double diff_p = std::abs(fp2p + fp2m - 2.0 * f0 - kRatio * (fp4p + fp4m - 2.0 * f0));

    const double ax4 = kLambda4 * hx;
    const double ap4 = kLambda4 * hp;
    const std::array<double, 4> d4{g(cx + ax4, cp + ap4), g(cx + ax4, cp - ap4),
                                   g(cx - ax4, cp + ap4), g(cx - ax4, cp - ap4)};
    const double sum4 = d4[0] + d4[1] + d4[2] + d4[3];
    const double ax5 = kLambda5 * hx;
    const double ap5 = kLambda5 * hp;
    const std::array<double, 4> d5{g(cx + ax5, cp + ap5), g(cx + ax5, cp - ap5),
                                   g(cx - ax5, cp + ap5), g(cx - ax5, cp - ap5)};
    const double sum5 = d5[0] + d5[1] + d5[2] + d5[3];

    const double vol = 4.0 * hx * hp;
    const double r7 = vol * (kW1 * f0 + kW2 * sum2 + kW3 * sum3 + kW4 * sum4 + kW5 * sum5);
    const double r5 = vol * (kE1 * f0 + kE2 * sum2 + kE3 * sum3 + kE4 * sum4);

    int axis = 0;
    const double dmax = std::max(diff_x, diff_p);
    if (std::abs(diff_x - diff_p) <= 1e-12 * dmax) {
        axis = hp > hx ? 1 : 0;
    } else {
        axis = diff_p > diff_x ? 1 : 0;
    }
    double err = std::abs(r7 - r5);
    // Nodes on both sides of a support edge (some exactly zero, some not): the
    // 7/5 difference can vanish by accident there, so fall back on the spread
    // between r7 and the plain node average.
    const double nodes[] = {f0,    fx2p,  fx2m,  fp2p,  fp2m,  fx4p,  fx4m,  fp4p, fp4m,
                            d4[0], d4[1], d4[2], d4[3], d5[0], d5[1], d5[2], d5[3]};
    bool zero = false;
    bool nonzero = false;
    for (double v : nodes) (v == 0.0 ? zero : nonzero) = true;
    if (zero && nonzero) {
        const double mean = (f0 + sum2 + sum3 + sum4 + sum5) / static_cast<double>(kGmPoints);
        err = std::max(err, std::abs(r7 - vol * mean));
    }
    return {cx, cp, hx, hp, r7, err, axis, id};
}

// Halves c along its preferred axis. The 7/5 difference can be accidentally
// small on an under-resolved cell; when the children disagree with the parent
// by more than its estimate, they inherit half that disagreement.
template <class G>
std::pair<Cell, Cell> bisect(const G& g, const Cell& c, std::size_t& next_id) {
    Cell a{};
    Cell b{};
    if (c.split_axis == 0) {
        const double hh = 0.5 * c.hx;
        a = genz_malik(g, c.cx - hh, c.cp, hh, c.hp, next_id++);
        b = genz_malik(g, c.cx + hh, c.cp, hh, c.hp, next_id++);
    } else {
        const double hh = 0.5 * c.hp;
        a = genz_malik(g, c.cx, c.cp - hh, c.hx, hh, next_id++);
        b = genz_malik(g, c.cx, c.cp + hh, c.hx, hh, next_id++);
    }
    const double miss = std::abs(a.value + b.value - c.value);
    if (miss > c.error) {
        a.error = std::max(a.error, 0.5 * miss);
        b.error = std::max(b.error, 0.5 * miss);
    }
    return {a, b};
}

}  // namespace

QuadResult integrate_1d(const Integrand1d& f, Bounds region, const Options& opts) {
    validate(opts);
    validate(region);
    const AxisMap map = AxisMap::make(region);
    auto g = [&](double u) {
        double jac = 1.0;
        const double x = map(u, jac);
        if (!std::isfinite(x) || !std::isfinite(jac)) return 0.0;
        return f(x) * jac;
    };

    std::size_t next_id = 0;
    const std::size_t n0 = opts.initial_splits;
    std::size_t evals = 15 * n0;
    CellHeap<Segment> heap;
    std::vector<Segment> frozen;
    const double step = (map.u_hi - map.u_lo) / static_cast<double>(n0);
    for (std::size_t i = 0; i < n0; ++i) {
        const double a = map.u_lo + step * static_cast<double>(i);
        const double b = i + 1 == n0 ? map.u_hi : a + step;
        heap.push(gk15(g, a, b, next_id++));
    }
    double total = 0.0;
    double total_err = 0.0;
    resum_all(heap, frozen, total, total_err);
    std::size_t iter = 0;
    std::size_t next_resum = 256;

    while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (heap.empty()) {
            const QuadResult best = finish(heap, frozen, evals);
            throw NonConvergence("integrate_1d: roundoff prevents further subdivision", best.value,
                                 best.abs_error);
        }
        if (evals + 30 > opts.max_evals) {
            const QuadResult best = finish(heap, frozen, evals);
            throw NonConvergence("integrate_1d: evaluation budget exhausted", best.value,
                                 best.abs_error);
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            worst.b - worst.a <= 8.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            frozen.push_back(worst);
            continue;
        }
        const Segment left = gk15(g, worst.a, mid, next_id++);
        const Segment right = gk15(g, mid, worst.b, next_id++);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (++iter >= next_resum) {
            resum_all(heap, frozen, total, total_err);
            next_resum = iter + std::max<std::size_t>(256, heap.size());
        }
    }
    return finish(heap, frozen, evals);
}

QuadResult integrate_2d(const Integrand2d& f, const Box& region, const Options& opts) {
    validate(opts);
    validate(region.x);
    validate(region.p);
    const AxisMap mx = AxisMap::make(region.x);
    const AxisMap mp = AxisMap::make(region.p);
    auto g = [&](double u, double v) {
        double jx = 1.0;
        double jp = 1.0;
        const double x = mx(u, jx);
        const double p = mp(v, jp);
        if (!std::isfinite(x) || !std::isfinite(p) || !std::isfinite(jx * jp)) return 0.0;
        return f(x, p) * jx * jp;
    };

    std::size_t next_id = 0;
    const std::size_t n0 = opts.initial_splits;
    std::size_t evals = kGmPoints * n0 * n0;
    CellHeap<Cell> heap;
    std::vector<Cell> frozen;
    const double hx0 = 0.5 * (mx.u_hi - mx.u_lo) / static_cast<double>(n0);
    const double hp0 = 0.5 * (mp.u_hi - mp.u_lo) / static_cast<double>(n0);
    // Every starting cell is split once so that its estimate gets the
    // parent-children cross-check below.
    for (std::size_t i = 0; i < n0; ++i) {
        for (std::size_t j = 0; j < n0; ++j) {
            const Cell c = genz_malik(g, mx.u_lo + hx0 * (2.0 * static_cast<double>(i) + 1.0),
                                      mp.u_lo + hp0 * (2.0 * static_cast<double>(j) + 1.0), hx0,
                                      hp0, next_id++);
            const auto [a, b] = bisect(g, c, next_id);
            heap.push(a);
            heap.push(b);
        }
    }
    evals *= 3;
    double total = 0.0;
    double total_err = 0.0;
    resum_all(heap, frozen, total, total_err);
    std::size_t iter = 0;
    std::size_t next_resum = 256;

    while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (heap.empty()) {
            const QuadResult best = finish(heap, frozen, evals);
            throw NonConvergence("integrate_2d: roundoff prevents further subdivision", best.value,
                                 best.abs_error);
        }
        if (evals + 2 * kGmPoints > opts.max_evals) {
            const QuadResult best = finish(heap, frozen, evals);
            throw NonConvergence("integrate_2d: evaluation budget exhausted", best.value,
                                 best.abs_error);
        }
        const Cell worst = heap.top();
        heap.pop();
        const double h = worst.split_axis == 0 ? worst.hx : worst.hp;
        const double c = worst.split_axis == 0 ? worst.cx : worst.cp;
        if (h <= 8.0 * kEps * std::max(1.0, std::abs(c))) {
            frozen.push_back(worst);
            continue;
        }
        const auto [a, b] = bisect(g, worst, next_id);
        evals += 2 * kGmPoints;
        total += a.value + b.value - worst.value;
        total_err += a.error + b.error - worst.error;
        heap.push(a);
        heap.push(b);
        if (++iter >= next_resum) {
            resum_all(heap, frozen, total, total_err);
            next_resum = iter + std::max<std::size_t>(256, heap.size());
        }
    }
    return finish(heap, frozen, evals);
}

}  // namespace anharmonic::quad

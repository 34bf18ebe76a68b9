#include "laser/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

#include "laser/poly_basis.hpp"

namespace laser {

namespace {

// ---------------------------------------------------------------------------
// Packed incremental QR factor for least squares with d <= degree+1 columns.
// Layout: R (d*d, row-major, upper triangle used), z = Q^T y head (d), rho2
// (residual sum of squares). Rows are folded in with Givens rotations; two
// factors over disjoint row sets merge by folding one factor's rows into the
// other, which is how complements built from a prefix and a suffix are costed
// at O(d^2) per split.
// ---------------------------------------------------------------------------

int state_size(int d) { return d * d + d + 1; }

void st_reset(double* s, int d) { std::memset(s, 0, sizeof(double) * state_size(d)); }

void st_add_row(double* s, int d, double* phi, double yi) {
    double* R = s;
    double* z = s + d * d;
    for (int j = 0; j < d; ++j) {
        const double b = phi[j];
        if (b == 0.0) continue;
        const double a = R[j * d + j];
        const double r = std::sqrt(a * a + b * b);
        const double c = a / r, sn = b / r;
        R[j * d + j] = r;
        for (int k = j + 1; k < d; ++k) {
            const double t1 = R[j * d + k], t2 = phi[k];
            R[j * d + k] = c * t1 + sn * t2;
            phi[k] = c * t2 - sn * t1;
        }
        const double t1 = z[j];
        z[j] = c * t1 + sn * yi;
        yi = c * yi - sn * t1;
    }
    s[d * d + d] += yi * yi;
}

void st_merge(double* s, int d, const double* other) {
    const double* R = other;
    const double* z = other + d * d;
    double phi[8];
    for (int j = 0; j < d; ++j) {
        bool nonzero = z[j] != 0.0;
        for (int k = 0; k < d; ++k) {
            phi[k] = k < j ? 0.0 : R[j * d + k];
            nonzero = nonzero || phi[k] != 0.0;
        }
        if (nonzero) st_add_row(s, d, phi, z[j]);
    }
    s[d * d + d] += other[d * d + d];
}

double st_rho2(const double* s, int d) { return s[d * d + d]; }

void validate_window(const IntInterval& I, int n, const char* op) {
    if (I.empty()) throw std::invalid_argument(std::string(op) + ": empty interval");
    if (I.lo < 1 || I.hi > n)
        throw std::invalid_argument(std::string(op) + ": interval [" + std::to_string(I.lo) +
                                    "," + std::to_string(I.hi) + "] outside [1," +
                                    std::to_string(n) + "]");
}

}  // namespace

// ---------------------------------------------------------------------------
// Free-standing Q forms (projection route; independent of the scan engine).
// ---------------------------------------------------------------------------

double q_form(std::span<const double> theta, const IntInterval& inner, const IntInterval& I,
              int degree, std::span<const double> design) {
    const int n = static_cast<int>(theta.size());
    validate_window(I, n, "q_form");
    validate_window(inner, n, "q_form");
    if (!I.contains(inner))
        throw std::invalid_argument("q_form: inner part not contained in the window");

    if (inner == I) return 0.0;

    auto part_rss = [&](const IndexSet& S) {
        std::vector<double> v(static_cast<std::size_t>(S.size()));
        for (int k = 0; k < S.size(); ++k)
            v[static_cast<std::size_t>(k)] = theta[static_cast<std::size_t>(S[k] - 1)];
        return rss(build_basis(S, degree, design), v);
    };

    const IndexSet set_I(I, n);
    const double q = part_rss(set_I) - part_rss(IndexSet(inner, n)) - part_rss(set_I.minus(inner));
    return std::max(q, 0.0);
}

double q_form_r0_closed(std::span<const double> theta, const IntInterval& inner,
                        const IntInterval& I) {
    const int n = static_cast<int>(theta.size());
    validate_window(I, n, "q_form_r0_closed");
    validate_window(inner, n, "q_form_r0_closed");
    if (!I.contains(inner))
        throw std::invalid_argument("q_form_r0_closed: inner part not contained in the window");
    if (inner == I) return 0.0;

    double s1 = 0.0, s_all = 0.0;
    for (int i = I.lo; i <= I.hi; ++i) s_all += theta[static_cast<std::size_t>(i - 1)];
    for (int i = inner.lo; i <= inner.hi; ++i) s1 += theta[static_cast<std::size_t>(i - 1)];
    const double m1 = inner.length();
    const double m2 = I.length() - inner.length();
    const double diff = s1 / m1 - (s_all - s1) / m2;
    return (m1 * m2 / static_cast<double>(I.length())) * diff * diff;
}

// ---------------------------------------------------------------------------
// DiscrepancyEngine
// ---------------------------------------------------------------------------

DiscrepancyEngine::DiscrepancyEngine(std::span<const double> y, int degree,
                                     std::span<const double> design)
    : n_(static_cast<int>(y.size())),
      degree_(degree),
      y_(y.begin(), y.end()),
      x_(resolve_design(design, n_)) {
    if (n_ < 1) throw std::invalid_argument("DiscrepancyEngine: empty data");
    if (degree_ < 0) throw std::invalid_argument("DiscrepancyEngine: negative degree");
    recip_.resize(static_cast<std::size_t>(n_) + 1, 0.0);
    for (int k = 1; k <= n_; ++k) recip_[static_cast<std::size_t>(k)] = 1.0 / k;
}

void DiscrepancyEngine::load_window(const IntInterval& I) {
    if (loaded_ == I) return;
    loaded_ = I;
    const int m = I.length();
    wy_.resize(static_cast<std::size_t>(m));
    wt_.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) wy_[static_cast<std::size_t>(k)] = y_[static_cast<std::size_t>(I.lo - 1 + k)];

    if (degree_ == 0) {
        double mu = 0.0;
        for (double v : wy_) mu += v;
        mu /= m;
        ps_.resize(static_cast<std::size_t>(m) + 1);
        ps_[0] = 0.0;
        for (int k = 0; k < m; ++k)
            ps_[static_cast<std::size_t>(k) + 1] = ps_[static_cast<std::size_t>(k)] +
                                                   (wy_[static_cast<std::size_t>(k)] - mu);
        tot_ = ps_[static_cast<std::size_t>(m)];
        return;
    }

    double xmin = x_[static_cast<std::size_t>(I.lo - 1)], xmax = xmin;
    for (int k = 0; k < m; ++k) {
        const double xv = x_[static_cast<std::size_t>(I.lo - 1 + k)];
        xmin = std::min(xmin, xv);
        xmax = std::max(xmax, xv);
    }
    const double mid = 0.5 * (xmin + xmax);
    const double hw = xmax > xmin ? 0.5 * (xmax - xmin) : 1.0;
    for (int k = 0; k < m; ++k)
        wt_[static_cast<std::size_t>(k)] = (x_[static_cast<std::size_t>(I.lo - 1 + k)] - mid) / hw;

    const int d = degree_ + 1;
    const int ss = state_size(d);
    qr_pre_.resize(static_cast<std::size_t>(ss) * (m + 1));
    qr_suf_.resize(static_cast<std::size_t>(ss) * (m + 1));
    scratch_.resize(static_cast<std::size_t>(ss));

    double phi[8];
    auto fill_phi = [&](int k) {
        double p = 1.0;
        const double t = wt_[static_cast<std::size_t>(k)];
        for (int j = 0; j < d; ++j) {
            phi[j] = p;
            p *= t;
        }
    };

    st_reset(qr_pre_.data(), d);
    for (int k = 0; k < m; ++k) {
        double* cur = qr_pre_.data() + static_cast<std::size_t>(ss) * (k + 1);
        std::memcpy(cur, qr_pre_.data() + static_cast<std::size_t>(ss) * k, sizeof(double) * ss);
        fill_phi(k);
        st_add_row(cur, d, phi, wy_[static_cast<std::size_t>(k)]);
    }
    st_reset(qr_suf_.data() + static_cast<std::size_t>(ss) * m, d);
    for (int k = m - 1; k >= 0; --k) {
        double* cur = qr_suf_.data() + static_cast<std::size_t>(ss) * k;
        std::memcpy(cur, qr_suf_.data() + static_cast<std::size_t>(ss) * (k + 1),
                    sizeof(double) * ss);
        fill_phi(k);
        st_add_row(cur, d, phi, wy_[static_cast<std::size_t>(k)]);
    }
}

DiscrepancyEngine::ScanOutcome DiscrepancyEngine::scan(const IntInterval& I, Variant variant,
                                                       double abort_above_q) {
    const int m = I.length();
    ScanOutcome out;
    if (m <= degree_ + 1) {  // every part interpolates: all Q vanish
        out.best_q = 0.0;
        out.arg_p = 0;
        out.arg_q = m == 1 ? m - 1 : 0;
        return out;
    }
    load_window(I);

    const int d = degree_ + 1;
    const int ss = state_size(d);

    auto q_r0 = [&](int p, int q) {
        const double s1 = ps_[static_cast<std::size_t>(q) + 1] - ps_[static_cast<std::size_t>(p)];
        const int m1 = q - p + 1;
        const double s2 = tot_ - s1;
        return s1 * s1 * recip_[static_cast<std::size_t>(m1)] +
               s2 * s2 * recip_[static_cast<std::size_t>(m - m1)] -
               tot_ * tot_ * recip_[static_cast<std::size_t>(m)];
    };

    const double* pre = qr_pre_.data();
    const double* suf = qr_suf_.data();
    const double rss_window =
        degree_ == 0 ? 0.0 : st_rho2(pre + static_cast<std::size_t>(ss) * m, d);

    auto q_qr = [&](const double* part_state, int p, int q) {
        double* tmp = scratch_.data();
        std::memcpy(tmp, pre + static_cast<std::size_t>(ss) * p, sizeof(double) * ss);
        st_merge(tmp, d, suf + static_cast<std::size_t>(ss) * (q + 1));
        return rss_window - st_rho2(part_state, d) - st_rho2(tmp, d);
    };

    auto consider = [&](double qv, int p, int q) {
        ++out.n_scanned;
        if (qv > out.best_q) {
            out.best_q = qv;
            out.arg_p = p;
            out.arg_q = q;
            if (out.best_q > abort_above_q) {
                out.aborted = true;
                return true;
            }
        }
        return false;
    };

    if (variant == Variant::full) {
        if (degree_ == 0) {
            for (int p = 0; p < m; ++p)
                for (int q = p; q < m; ++q) {
                    if (p == 0 && q == m - 1) continue;
                    if (consider(q_r0(p, q), p, q)) return out;
                }
        } else {
            std::vector<double> part(static_cast<std::size_t>(ss));
            double phi[8];
            for (int p = 0; p < m; ++p) {
                st_reset(part.data(), d);
                for (int q = p; q < m; ++q) {
                    double pw = 1.0;
                    const double t = wt_[static_cast<std::size_t>(q)];
                    for (int j = 0; j < d; ++j) {
                        phi[j] = pw;
                        pw *= t;
                    }
                    st_add_row(part.data(), d, phi, wy_[static_cast<std::size_t>(q)]);
                    if (p == 0 && q == m - 1) continue;
                    if (consider(q_qr(part.data(), p, q), p, q)) return out;
                }
            }
        }
    } else {
        // Dyadic parts: length 2^j aligned to the window start, plus the
        // suffix of each dyadic length. Start-major, then length-major scan
        // order preserves the smallest-start/smallest-length tie rule.
        std::vector<double> part(static_cast<std::size_t>(ss));
        double phi[8];
        for (int p = 0; p < m; ++p) {
            for (int len = 1; len <= m; len <<= 1) {
                const bool aligned = p % len == 0 && p + len <= m;
                const bool suffix = p + len == m;
                if (!aligned && !suffix) continue;
                const int q = p + len - 1;
                if (p == 0 && q == m - 1) continue;
                double qv;
                if (degree_ == 0) {
                    qv = q_r0(p, q);
                } else {
                    st_reset(part.data(), d);
                    for (int k = p; k <= q; ++k) {
                        double pw = 1.0;
                        const double t = wt_[static_cast<std::size_t>(k)];
                        for (int j = 0; j < d; ++j) {
                            phi[j] = pw;
                            pw *= t;
                        }
                        st_add_row(part.data(), d, phi, wy_[static_cast<std::size_t>(k)]);
                    }
                    qv = q_qr(part.data(), p, q);
                }
                if (consider(qv, p, q)) return out;
            }
        }
    }
    if (out.arg_p < 0) {  // single-split windows (m == 1 handled above)
        out.best_q = 0.0;
        out.arg_p = 0;
        out.arg_q = 0;
    }
    return out;
}

DiscrepancyEngine::ExactRec DiscrepancyEngine::record(const IntInterval& I,
                                                      const ScanOutcome& s) const {
    return ExactRec{std::sqrt(std::max(s.best_q, 0.0)), I.lo + s.arg_p, I.lo + s.arg_q,
                    s.n_scanned};
}

DiscrepancyResult DiscrepancyEngine::materialize(const IntInterval& I, Variant variant,
                                                 const ExactRec& rec) const {
    DiscrepancyResult res;
    res.t_value = rec.t_value;
    res.n_splits_scanned = rec.n_scanned;
    res.variant = variant;
    res.argmax.inner = IntInterval(rec.arg_lo, rec.arg_hi);
    if (!(res.argmax.inner == I)) res.argmax.outer = IndexSet(I, n_).minus(res.argmax.inner);
    return res;
}

DiscrepancyResult DiscrepancyEngine::t_exact(const IntInterval& I, Variant variant) {
    validate_window(I, n_, "t_exact");
    auto& cache = variant == Variant::full ? exact_full_ : exact_dyadic_;
    const std::uint64_t k = key(I);
    auto it = cache.find(k);
    if (it == cache.end()) {
        const ScanOutcome out = scan(I, variant, std::numeric_limits<double>::infinity());
        it = cache.emplace(k, record(I, out)).first;
    }
    return materialize(I, variant, it->second);
}

double DiscrepancyEngine::t_plain(const IntInterval& I, Variant variant) {
    validate_window(I, n_, "t_plain");
    const ScanOutcome out = scan(I, variant, std::numeric_limits<double>::infinity());
    return std::sqrt(std::max(out.best_q, 0.0));
}

bool DiscrepancyEngine::is_good(const IntInterval& I, double lambda, Variant variant,
                                double* t_out) {
    validate_window(I, n_, "is_good");
    auto& cache = variant == Variant::full ? exact_full_ : exact_dyadic_;
    auto& lb = variant == Variant::full ? lower_bound_full_ : lower_bound_dyadic_;
    const std::uint64_t k = key(I);

    if (auto it = cache.find(k); it != cache.end()) {
        if (t_out) *t_out = it->second.t_value;
        return it->second.t_value <= lambda;
    }
    if (auto it = lb.find(k); it != lb.end() && it->second > lambda) {
        if (t_out) *t_out = it->second;
        return false;
    }
    if (variant == Variant::full) {
        // A dyadic split family is a subset of the full family, so its T is a
        // certified lower bound; it rejects long windows in O(|I| log |I|).
        if (auto it = exact_dyadic_.find(k); it != exact_dyadic_.end()) {
            if (it->second.t_value > lambda) {
                auto& slot = lb[k];
                slot = std::max(slot, it->second.t_value);
                if (t_out) *t_out = it->second.t_value;
                return false;
            }
        } else if (I.length() > 4 * (degree_ + 2)) {
            const ScanOutcome dy = scan(I, Variant::dyadic, lambda * lambda);
            if (dy.aborted) {
                const double witness = std::sqrt(dy.best_q);
                auto& slot = lb[k];
                slot = std::max(slot, witness);
                if (t_out) *t_out = witness;
                return false;
            }
            exact_dyadic_.emplace(k, record(I, dy));  // completed, hence <= lambda
        }
    }

    const ScanOutcome out = scan(I, variant, lambda * lambda);
    if (out.aborted) {
        const double witness = std::sqrt(out.best_q);
        auto& slot = lb[k];
        slot = std::max(slot, witness);
        if (t_out) *t_out = witness;
        return false;
    }
    const ExactRec rec = record(I, out);
    cache.emplace(k, rec);
    if (t_out) *t_out = rec.t_value;
    return rec.t_value <= lambda;
}

// ---------------------------------------------------------------------------
// Free functions over the engine
// ---------------------------------------------------------------------------

DiscrepancyResult t_stat(std::span<const double> theta, const IntInterval& I, int degree,
                         Variant variant, std::span<const double> design) {
    DiscrepancyEngine engine(theta, degree, design);
    return engine.t_exact(I, variant);
}

double effective_noise(std::span<const double> eps, int degree, Variant variant) {
    const int n = static_cast<int>(eps.size());
    if (n < 1) throw std::invalid_argument("effective_noise: empty input");
    DiscrepancyEngine engine(eps, degree);
    double best = 0.0;
    if (variant == Variant::full) {
        for (int lo = 1; lo <= n; ++lo)
            for (int hi = lo + degree + 1; hi <= n; ++hi)
                best = std::max(best, engine.t_plain(IntInterval(lo, hi), Variant::full));
        return best;
    }
    // Dyadic interval grid mirroring the dyadic part family: every dyadic
    // length at aligned positions, plus the suffix of each dyadic length.
    for (int len = 2; len <= n; len <<= 1) {
        if (len <= degree + 1) continue;
        for (int lo = 1; lo + len - 1 <= n; lo += len)
            best = std::max(best, engine.t_plain(IntInterval(lo, lo + len - 1), Variant::dyadic));
        const int lo = n - len + 1;
        if (lo >= 1 && (lo - 1) % len != 0)
            best = std::max(best, engine.t_plain(IntInterval(lo, n), Variant::dyadic));
    }
    return best;
}

}  // namespace laser

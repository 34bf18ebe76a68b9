// The Q quadratic form and the local discrepancy statistic T.
//
// For a contiguous window I and a contiguous part I1 with complement
// I2 = I \ I1 (at most two contiguous runs, projected as a single index set),
//
//   Q(theta; I1, I) = rss(I) - rss(I1) - rss(I2),
//
// the residual-sum-of-squares gain from fitting the parts separately.
// T(theta, I) is the maximum of sqrt(Q) over candidate parts: every
// contiguous I1 in the full variant, or dyadic-length aligned parts plus
// dyadic-length suffixes in the dyadic variant. The dyadic candidate family
// is a subset of the full one, so T_dyadic <= T_full on identical inputs.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "laser/interval.hpp"

namespace laser {

enum class Variant { full, dyadic };

/// A two-part split of a window: contiguous inner part and its complement.
/// `outer` is absent only in the degenerate case inner == I (where Q := 0).
struct Split {
    IntInterval inner;
    std::optional<IndexSet> outer;
};

struct DiscrepancyResult {
    double t_value = 0.0;
    Split argmax;
    long n_splits_scanned = 0;
    Variant variant = Variant::full;
};

/// Q(theta; inner, I) via the RSS-difference route, clamped at zero.
/// `theta` is the full ambient vector (1-based indices i map to theta[i-1]).
double q_form(std::span<const double> theta, const IntInterval& inner, const IntInterval& I,
              int degree, std::span<const double> design = {});

/// Degree-0 closed form (|I1||I2|/|I|) * (mean(I1) - mean(I2))^2, used as an
/// independent check of q_form at degree 0.
double q_form_r0_closed(std::span<const double> theta, const IntInterval& inner,
                        const IntInterval& I);

/// Max of sqrt(Q) over the variant's candidate parts. Ties break to the first
/// split in scan order: smallest start, then smallest length.
DiscrepancyResult t_stat(std::span<const double> theta, const IntInterval& I, int degree,
                         Variant variant, std::span<const double> design = {});

/// Max of T(eps, I) over contiguous sub-intervals I of [1, n]. The full
/// variant searches every interval (O(n^4) split evaluations: test scale
/// only); the dyadic variant restricts I to dyadic lengths at aligned
/// positions plus dyadic-length suffixes, and uses dyadic split scans.
double effective_noise(std::span<const double> eps, int degree, Variant variant);

/// Split-scan engine over one data vector: exact T per window with caching,
/// plus an early-abort goodness test for bandwidth selection. Degree 0 runs
/// on centered prefix sums; degree >= 1 runs an incremental Givens QR over
/// window-local coordinates with prefix/suffix factor snapshots, so each
/// split costs O(degree^2) after O(|I| * degree) preparation per window.
class DiscrepancyEngine {
  public:
    DiscrepancyEngine(std::span<const double> y, int degree,
                      std::span<const double> design = {});

    /// Exact scan (cached per interval and variant).
    DiscrepancyResult t_exact(const IntInterval& I, Variant variant);

    /// Exact scan, value only, bypassing the caches (bulk sweeps).
    double t_plain(const IntInterval& I, Variant variant);

    /// Decide T(I) <= lambda without necessarily completing the scan.
    /// On `true`, `t_out` (if given) is the exact T; on `false` it is a
    /// witness value: the sqrt(Q) of some scanned split exceeding lambda.
    /// For the full variant a dyadic T > lambda short-circuits the scan
    /// (dyadic splits are full splits, so it is a valid witness).
    bool is_good(const IntInterval& I, double lambda, Variant variant,
                 double* t_out = nullptr);

    int n() const { return n_; }
    int degree() const { return degree_; }
    const std::vector<double>& data() const { return y_; }
    const std::vector<double>& design() const { return x_; }

  private:
    struct ScanOutcome {
        double best_q = -1.0;
        int arg_p = -1, arg_q = -1;  // window-local 0-based part bounds
        long n_scanned = 0;
        bool aborted = false;
    };
    struct ExactRec {
        double t_value;
        int arg_lo, arg_hi;  // 1-based sample indices of the argmax part
        long n_scanned;
    };

    void load_window(const IntInterval& I);
    ScanOutcome scan(const IntInterval& I, Variant variant, double abort_above_q);
    ExactRec record(const IntInterval& I, const ScanOutcome& s) const;
    DiscrepancyResult materialize(const IntInterval& I, Variant variant,
                                  const ExactRec& rec) const;
    static std::uint64_t key(const IntInterval& I) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(I.lo)) << 32) |
               static_cast<std::uint32_t>(I.hi);
    }

    int n_;
    int degree_;
    std::vector<double> y_;
    std::vector<double> x_;
    std::vector<double> recip_;  // 1/k lookups for the degree-0 kernel

    // Window-local scratch, reused across scans.
    IntInterval loaded_{1, 0};
    std::vector<double> wy_, wt_;          // window data and local coordinates
    std::vector<double> ps_;               // degree 0: prefix sums of centered data
    double tot_ = 0.0;
    std::vector<double> qr_pre_, qr_suf_;  // degree >= 1: packed factor snapshots
    std::vector<double> scratch_;          // one packed factor for complements

    std::unordered_map<std::uint64_t, ExactRec> exact_full_, exact_dyadic_;
    std::unordered_map<std::uint64_t, double> lower_bound_full_, lower_bound_dyadic_;
};

}  // namespace laser

#include "dynrmat/zero_test.hpp"

#include <algorithm>
#include <sstream>

#include "dynrmat/errors.hpp"
#include "dynrmat/prng.hpp"

namespace dynrmat {

namespace {

ZeroVerdict sampled(const ScalarExpr& e, const ZeroOptions& opts) {
    int nvars = std::max(opts.nvars, e.min_nvars());
    SplitMix64 rng(opts.seed ^ 0x5a17ed0fULL);
    auto [num_deg, den_deg] = e.degree_bound();
    // distinct sample values per coordinate: at least the 2*10^4 integer ones
    const double sample_space = 2.0e4;
    ZeroVerdict v;
    v.exact = false;
    int done = 0;
    int pole_redraws = 0;
    while (done < opts.trials) {
        std::vector<Rational> pt(nvars);
        for (auto& x : pt) x = rng.sample_coordinate();
        Rational val;
        try {
            val = e.eval(pt);
        } catch (const DivisionByZero&) {
            if (++pole_redraws > 100 * opts.trials) {
                v.zero = false;
                v.note = "sampling aborted: could not avoid poles";
                return v;
            }
            continue;
        }
        if (!val.is_zero()) {
            v.zero = false;
            v.witness = std::move(pt);
            v.witness_value = val;
            return v;
        }
        ++done;
    }
    v.zero = true;
    std::ostringstream os;
    os << "sampled zero: " << opts.trials << " trials, per-trial failure bound <= deg/|S| = "
       << (num_deg + den_deg) << "/" << static_cast<long>(sample_space) << ", seed " << opts.seed;
    v.note = os.str();
    return v;
}

} // namespace

ZeroVerdict test_zero(const ScalarExpr& e, const ZeroOptions& opts) {
    if (e.is_const()) {
        ZeroVerdict v;
        v.zero = e.const_value().is_zero();
        v.exact = true;
        if (!v.zero) {
            v.witness = std::vector<Rational>{};
            v.witness_value = e.const_value();
        }
        return v;
    }
    if (opts.mode == ZeroMode::SampledOnly) return sampled(e, opts);
    int nvars = std::max(opts.nvars, e.min_nvars());
    try {
        RationalForm f = e.rational_form(nvars, opts.term_budget);
        ZeroVerdict v;
        v.zero = f.num.is_zero();
        v.exact = true;
        if (!v.zero) v.note = "exact: numerator has " + std::to_string(f.num.term_count()) + " monomial(s)";
        return v;
    } catch (const ExpansionTooLarge&) {
        if (opts.mode == ZeroMode::ExactOnly) throw;
        return sampled(e, opts);
    }
}

} // namespace dynrmat

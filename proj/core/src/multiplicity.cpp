#include "gmra/multiplicity.hpp"

#include <algorithm>

namespace gmra {

MultiplicityFunction::MultiplicityFunction(PiecewiseFn<int> mu, int dilation, Rational origin)
    : mu_(std::move(mu)), n_(dilation), c_(0), origin_(std::move(origin)) {
    if (n_ < 2) {
        throw std::invalid_argument("MultiplicityFunction: dilation N must be at least 2");
    }
    for (int v : mu_.values()) {
        if (v < 0) {
            throw std::invalid_argument("MultiplicityFunction: values must be nonnegative");
        }
        c_ = std::max(c_, v);
    }
    if (c_ < 1) {
        throw std::invalid_argument("MultiplicityFunction: ess sup must be at least 1");
    }
}

PiecewiseFn<int> MultiplicityFunction::branch(int l) const { return pullback_branch(mu_, n_, l, origin_); }

PiecewiseFn<int> MultiplicityFunction::preimage_sum() const {
    PiecewiseFn<int> total = PiecewiseFn<int>::constant(0);
    for (int l = 0; l < n_; ++l) {
        total = zip_map(total, branch(l), std::plus<>{});
    }
    return total;
}

NegativeConjugate::NegativeConjugate(Cell cell, int mu_value, int preimage_sum)
    : std::domain_error("conjugate multiplicity negative on " + cell.str() + ": mu = " + std::to_string(mu_value) +
                        " exceeds preimage sum " + std::to_string(preimage_sum)),
      cell_(std::move(cell)),
      mu_value_(mu_value),
      preimage_sum_(preimage_sum) {}

ConsistencyReport check_consistency(const MultiplicityFunction& mf) {
    const auto sum = mf.preimage_sum();
    const auto joint = common_refinement(sum.partition(), mf.function().partition());
    ConsistencyReport report;
    for (std::size_t k = 0; k < joint.size(); ++k) {
        const TorusPoint x(joint.breakpoints()[k]);
        const int mu = mf(x);
        const int s = sum(x);
        if (mu > s) {
            report.pass = false;
            report.violating_cell = joint.cell(k);
            report.mu_value = mu;
            report.preimage_sum = s;
            break;
        }
    }
    return report;
}

ConjugateMultiplicity conjugate(const MultiplicityFunction& mf) {
    const auto report = check_consistency(mf);
    if (!report.pass) {
        throw NegativeConjugate(*report.violating_cell, report.mu_value, report.preimage_sum);
    }
    auto tilde = zip_map(mf.preimage_sum(), mf.function(), std::minus<>{}).simplified();
    const int d = *std::max_element(tilde.values().begin(), tilde.values().end());
    return {std::move(tilde), d};
}

LevelSets level_sets(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm) {
    LevelSets out;
    for (int i = 1; i <= mf.c(); ++i) {
        out.s.push_back(IntervalSet::where(mf.function(), [i](int v) { return v >= i; }));
    }
    for (int k = 1; k <= cm.d; ++k) {
        out.s_tilde.push_back(IntervalSet::where(cm.function, [k](int v) { return v >= k; }));
    }
    return out;
}

PiecewiseFn<int> fiber_dimension(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm) {
    return zip_map(mf.function(), cm.function, std::plus<>{});
}

PiecewiseFn<int> bundle_dimension(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm) {
    return pullback_dilate(fiber_dimension(mf, cm), mf.dilation());
}

IndexPartitions index_partitions(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm) {
    IndexPartitions out;
    const auto bundle = bundle_dimension(mf, cm);
    const auto fiber = fiber_dimension(mf, cm);
    const auto levels = level_sets(mf, cm);
    const int top = mf.c() + cm.d;
    for (int j = 0; j <= top; ++j) {
        out.t[j] = IntervalSet::where(bundle, [j](int v) { return v == j; });
        out.z[j] = IntervalSet::where(fiber, [j](int v) { return v == j; });
        for (int i = 1; i <= mf.c(); ++i) {
            out.ti[{i, j}] = levels.s[static_cast<std::size_t>(i - 1)].intersect(out.t[j]);
        }
    }
    return out;
}

std::vector<std::size_t> cells_near(const Partition& partition, const TorusPoint& p, const Rational& radius) {
    std::vector<std::size_t> out;
    const Rational half(1, 2);
    for (std::size_t k = 0; k < partition.size(); ++k) {
        if (radius >= half) {
            out.push_back(k);
            continue;
        }
        const Cell c = partition.cell(k);
        const Rational lo = p.value() - radius;
        const Rational hi = p.value() + radius;
        for (int shift = -1; shift <= 1; ++shift) {
            if (c.lo + shift < hi && c.hi + shift > lo) {
                out.push_back(k);
                break;
            }
        }
    }
    return out;
}

std::vector<TorusPoint> dilation_lattice(int n) {
    std::vector<TorusPoint> out;
    for (int l = 0; l < n; ++l) {
        out.emplace_back(Rational(l, n));
    }
    return out;
}

}  // namespace gmra

#pragma once

// Generalized filter banks, M-systems and the unitary matrix field they
// generate.
//
// Filter values are stored in units of √N: a stored value u means the
// filter value √N·u. In these units the low-pass condition reads
// h_{1,1}(0) = 1, the orthogonality relations have right-hand sides
// δ·χ instead of N·δ·χ, and the matrix K_{i,λ_x(l,j)}(x) is read off the
// stored values directly. Filters that are (rational)·√N are therefore
// exact.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmra/matrix.hpp"
#include "gmra/multiplicity.hpp"
#include "gmra/scalar.hpp"
#include "gmra/torus.hpp"

namespace gmra {

inline constexpr double kDefaultTolerance = 1e-12;

template <FilterScalar S>
using Filter = PiecewiseFn<S>;

template <FilterScalar S>
using UnitaryField = PiecewiseFn<Matrix<S>>;

/// Low-pass h (c × c) and high-pass g (d × c) generalized filters;
/// h[i][j] holds h_{i+1,j+1}.
template <FilterScalar S>
struct GeneralizedFilterBank {
    MultiplicityFunction mf;
    ConjugateMultiplicity cm;
    std::vector<std::vector<Filter<S>>> h;
    std::vector<std::vector<Filter<S>>> g;

    /// All-zero bank of the right shape for mf.
    static GeneralizedFilterBank zeros(MultiplicityFunction mf);
};

/// The flattened family (M_1, ..., M_{c+d}); component(i, j) is the
/// restriction of M_{i+1} to the copy S_{j+1} inside ⊔ S_j.
template <FilterScalar S>
class MSystem {
public:
    MSystem(MultiplicityFunction mf, ConjugateMultiplicity cm, std::vector<std::vector<Filter<S>>> components);

    [[nodiscard]] const MultiplicityFunction& mf() const { return mf_; }
    [[nodiscard]] const ConjugateMultiplicity& cm() const { return cm_; }
    [[nodiscard]] int c() const { return mf_.c(); }
    [[nodiscard]] int d() const { return cm_.d; }
    [[nodiscard]] std::size_t rank() const { return components_.size(); }
    [[nodiscard]] const Filter<S>& component(std::size_t i, std::size_t j) const { return components_[i][j]; }
    [[nodiscard]] const std::vector<std::vector<Filter<S>>>& components() const { return components_; }
    [[nodiscard]] const S& value(std::size_t i, std::size_t j, const TorusPoint& y) const {
        return components_[i][j](y);
    }

    /// Common refinement of every component partition.
    [[nodiscard]] Partition joint_partition() const;

    friend bool operator==(const MSystem&, const MSystem&) = default;

private:
    MultiplicityFunction mf_;
    ConjugateMultiplicity cm_;
    std::vector<std::vector<Filter<S>>> components_;
};

struct Preimage {
    int l = 0;           ///< branch, 0 <= l < N
    int j = 0;           ///< copy index, 1 <= j <= μ(point)
    Rational point;      ///< (x̂ + l)/N reduced mod 1

    friend bool operator==(const Preimage&, const Preimage&) = default;
};

/// Preimages (l, j) of x under Π_N in lexicographic order; position k in
/// the list is λ_x(l, j) − 1.
std::vector<Preimage> preimage_list(const MultiplicityFunction& mf, const TorusPoint& x);

/// Component indices (0-based, into M_1..M_{c+d}) of the rows that survive
/// at a point whose image has μ = mu and μ̃ = mu_tilde:
/// h_1..h_mu followed by g_1..g_mu_tilde.
std::vector<std::size_t> fiber_rows(int mu, int mu_tilde, int c);

/// Partition of T on which every quantity built from preimages of x is
/// constant: breakpoints of μ, μ̃, the labelling origin and N·b for every
/// upstairs breakpoint b.
Partition preimage_partition(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm,
                             const std::vector<Partition>& upstairs);

/// Thrown when the matrix field of an M-system fails unitarity (or a
/// forced-zero entry is nonzero) on some cell.
class NotUnitary : public std::runtime_error {
public:
    NotUnitary(Cell cell, double residual, const std::string& reason);
    [[nodiscard]] const Cell& cell() const { return cell_; }
    [[nodiscard]] double residual() const { return residual_; }

private:
    Cell cell_;
    double residual_;
};

/// Thrown by flatten() when a bank breaks its defining relations.
class InvalidFilterBank : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Verdict for one family of identities.
struct Verdict {
    Verdict() = default;
    explicit Verdict(std::string n) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    double worst_residual = 0.0;
    std::optional<Cell> worst_cell;
    std::string detail;

    void record(double residual, const Cell& cell, bool ok, std::string why = {});
};

struct OrthogonalityReport {
    Verdict ortho1{"ortho1"};
    Verdict ortho2{"ortho2"};
    Verdict ortho3{"ortho3"};
    Verdict support{"support"};
    Verdict lowpass{"low-pass"};
    /// Constancy of every filter near 0. Informational: sampled smooth
    /// filters legitimately fail it.
    Verdict regularity{"regularity-at-0"};

    [[nodiscard]] bool relations_hold() const {
        return ortho1.pass && ortho2.pass && ortho3.pass && support.pass;
    }
    [[nodiscard]] bool pass() const { return relations_hold() && lowpass.pass; }
};

template <FilterScalar S>
OrthogonalityReport verify_orthogonality(const GeneralizedFilterBank<S>& bank, double tolerance = kDefaultTolerance);

/// Validates the bank (relations and supports) and re-indexes it.
template <FilterScalar S>
MSystem<S> flatten(const GeneralizedFilterBank<S>& bank, double tolerance = kDefaultTolerance);

template <FilterScalar S>
GeneralizedFilterBank<S> unflatten(const MSystem<S>& m);

/// The fiber matrix K_{i,λ_x(l,j)}(x) = M_i(r_{(l,j)}(x)) in √N units,
/// rows ordered as fiber_rows(μ(x), μ̃(x), c).
template <FilterScalar S>
Matrix<S> fiber_matrix(const MSystem<S>& m, const TorusPoint& x);

/// Largest magnitude among entries forced to vanish at the preimages of x.
template <FilterScalar S>
double forced_zero_residual(const MSystem<S>& m, const TorusPoint& x);

struct UnitarityReport {
    Verdict unitarity{"unitarity"};
    Verdict forced_zeros{"forced-zero"};
    [[nodiscard]] bool pass() const { return unitarity.pass && forced_zeros.pass; }
};

template <FilterScalar S>
UnitarityReport check_unitary_field(const MSystem<S>& m, double tolerance = kDefaultTolerance);

/// Matrix field of the M-system. Throws NotUnitary on the first failing
/// cell. Exact scalars are compared exactly.
template <FilterScalar S>
UnitaryField<S> assemble_unitary(const MSystem<S>& m, double tolerance = kDefaultTolerance);

/// Reads an M-system back off a matrix field: the inverse of
/// assemble_unitary.
template <FilterScalar S>
MSystem<S> msystem_from_field(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm,
                              const UnitaryField<S>& field);

/// Column relations Σ_{i=1}^{c+d} M_i(r_{(l,j)}(x)) M̄_i(r_{(l',j')}(x)) = δδ
/// over all c + d components, forced zeros included.
template <FilterScalar S>
Verdict verify_column_orthogonality(const MSystem<S>& m, double tolerance = kDefaultTolerance);

/// max over cells and components of |a − b|.
template <FilterScalar S>
double max_residual(const MSystem<S>& a, const MSystem<S>& b);

template <FilterScalar S>
MSystem<Complex> to_numeric(const MSystem<S>& m);

struct RandomBankOptions {
    /// Extra random breakpoints inserted into each cell away from 0.
    int splits_per_cell = 1;
};

/// Random bank over μ: a Haar-random unitary on each cell of the fiber
/// partition, read back through λ_x. Cells touching 0 carry the canonical
/// low-pass matrix (see lowpass_seed) so the low-pass condition holds.
GeneralizedFilterBank<Complex> generate_random_bank(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm,
                                                    std::uint64_t seed, const RandomBankOptions& options = {});

/// Permutation matrix of dimension μ(0)+μ̃(0) with row 1 on column
/// λ_0(0,1), the remaining low-pass rows on the l >= 1 columns and the
/// high-pass rows on what is left. Throws std::domain_error when
/// μ(0) − 1 > μ̃(0), in which case no bank satisfies the low-pass condition.
Matrix<Complex> lowpass_seed(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm);

/// Haar-distributed n × n unitary.
template <class Rng>
Matrix<Complex> random_unitary(std::size_t n, Rng& rng);

}  // namespace gmra

#include "gmra/detail/random_unitary.hpp"

// Acceptance run: one PASS/FAIL line per criterion, with wall time and the
// budget it must fit in. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gmra/cli/cli.hpp"
#include "gmra/cli/documents.hpp"
#include "gmra/gmra.hpp"
#include "support/generators.hpp"

namespace {

using namespace gmra;
using gmra::cli::Json;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& why) {
        if (!ok && pass) {
            pass = false;
            detail = why;
        }
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

// Integer matrices the Journé cross-section must reproduce on each region.
struct Expected {
    const char* name;
    std::vector<std::pair<Rational, Rational>> arcs;
    std::vector<std::vector<int>> matrix;
};

std::vector<Expected> journe_expectations() {
    return {
        {"P1", {{Rational(-1, 7), Rational(1, 7)}}, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}},
        {"P2", {{Rational(1, 7), Rational(2, 7)}, {Rational(-2, 7), Rational(-1, 7)}}, {{1, 0}, {0, 1}}},
        {"P3", {{Rational(2, 7), Rational(3, 7)}, {Rational(-3, 7), Rational(-2, 7)}}, {{1}}},
        {"P4", {{Rational(3, 7), Rational(1, 2)}, {Rational(-1, 2), Rational(-3, 7)}}, {{0, 1}, {1, 0}}},
    };
}

int run_cli(const std::vector<std::string>& args, const std::string& input, std::string& output) {
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err);
    output = out.str();
    return code;
}

Outcome criterion_1() {
    Outcome o;
    std::string bank;
    o.require(run_cli({"example", "journe"}, "", bank) == 0, "example journe failed");
    for (const auto& e : journe_expectations()) {
        for (const auto& [lo, hi] : e.arcs) {
            // Probe both ends and the midpoint of every arc.
            const Rational width = hi - lo;
            for (const Rational& p : {lo, lo + width / 2, hi - width / 64}) {
                std::string out;
                const int code = run_cli({"msystem-matrix", "--at", TorusPoint(p).value().str()}, bank, out);
                o.require(code == 0, std::string(e.name) + ": msystem-matrix exit " + std::to_string(code));
                if (code != 0) {
                    continue;
                }
                const Json r = Json::parse(out);
                const Json& m = r.at("matrix");
                bool same = m.size() == e.matrix.size();
                for (std::size_t i = 0; same && i < m.size(); ++i) {
                    same = m[i].size() == e.matrix[i].size();
                    for (std::size_t j = 0; same && j < m[i].size(); ++j) {
                        same = m[i][j][0] == std::to_string(e.matrix[i][j]) && m[i][j][1] == "0";
                    }
                }
                o.require(same, std::string(e.name) + ": wrong matrix at " + p.str());
            }
        }
    }
    if (o.pass) {
        o.detail = "4 regions, 21 probe points, integer entries";
    }
    return o;
}

// μ for the Journé example, evaluated from the printed table.
int journe_mu(const Rational& x) {
    const Rational t = x.frac();
    const int values[] = {2, 1, 0, 1, 0, 1, 2};
    const long k = (t * 7).floor().get_si();
    return values[k];
}

Outcome criterion_2() {
    Outcome o;
    const auto mf = journe_multiplicity();
    const auto cm = conjugate(mf);
    o.require(cm.d == 1, "d != 1");
    o.require(cm.function.simplified().values() == std::vector<int>{1}, "conjugate is not identically 1");
    // Cells of the refinement by sevenths and fourteenths; check at every
    // cell midpoint and left end.
    int cells = 0;
    for (int k = 0; k < 14; ++k) {
        for (const Rational& x : {Rational(k, 14), Rational(2 * k + 1, 28)}) {
            const int lhs = mf(TorusPoint(x)) + cm(TorusPoint(x));
            const int rhs = journe_mu(x / 2) + journe_mu((x + 1) / 2);
            o.require(lhs == rhs, "identity fails at " + x.str());
            o.require(mf(TorusPoint(x)) == journe_mu(x), "mu differs from the table at " + x.str());
            ++cells;
        }
    }
    if (o.pass) {
        o.detail = "conjugate == 1, identity exact at " + std::to_string(cells) + " points";
    }
    return o;
}

bool in_arcs(const Rational& x, const std::vector<std::pair<Rational, Rational>>& arcs) {
    const Rational t = x.frac();
    for (const auto& [lo, hi] : arcs) {
        for (const Rational& shift : {Rational(0), Rational(1), Rational(-1)}) {
            if (lo + shift <= t && t < hi + shift) {
                return true;
            }
        }
    }
    return false;
}

Outcome criterion_3() {
    Outcome o;
    const auto bank = journe_bank();
    const auto rep = verify_orthogonality(bank);
    o.require(rep.ortho1.pass && rep.ortho1.worst_residual == 0.0, "ortho1");
    o.require(rep.ortho2.pass && rep.ortho2.worst_residual == 0.0, "ortho2");
    o.require(rep.ortho3.pass && rep.ortho3.worst_residual == 0.0, "ortho3");
    o.require(rep.support.pass, "support");
    const auto m = flatten(bank);
    const auto col = verify_column_orthogonality(m);
    o.require(col.pass && col.worst_residual == 0.0, "column orthogonality");

    // Independent evaluation of the relations, filters in √2 units, at the
    // midpoints of the 1/56 grid (every filter breakpoint and its
    // half-translate lie on the 1/28 grid).
    using Arcs = std::vector<std::pair<Rational, Rational>>;
    const Arcs h11{{Rational(-2, 7), Rational(-1, 4)}, {Rational(-1, 7), Rational(1, 7)}, {Rational(1, 4), Rational(2, 7)}};
    const Arcs h21{{Rational(3, 7), Rational(4, 7)}};
    const Arcs g11{{Rational(-1, 4), Rational(-1, 7)}, {Rational(1, 7), Rational(1, 4)}};
    const Arcs g12{{Rational(-1, 7), Rational(1, 7)}};
    const Arcs none{};
    const std::vector<std::vector<const Arcs*>> h{{&h11, &none}, {&h21, &none}};
    const std::vector<std::vector<const Arcs*>> g{{&g11, &g12}};
    const Arcs s1{{Rational(-2, 7), Rational(2, 7)}, {Rational(3, 7), Rational(4, 7)}};
    const Arcs s2{{Rational(-1, 7), Rational(1, 7)}};
    const std::vector<const Arcs*> s{&s1, &s2};
    auto val = [&](const Arcs* a, const Rational& x) { return in_arcs(x, *a) ? 1 : 0; };
    for (int k = 0; k < 56; ++k) {
        const Rational x(2 * k + 1, 112);
        for (int i = 0; i < 2; ++i) {
            for (int i2 = 0; i2 < 2; ++i2) {
                int sum = 0;
                for (int j = 0; j < 2; ++j) {
                    for (int l = 0; l < 2; ++l) {
                        const Rational y = (x + l) / 2;
                        sum += val(h[i][j], y) * val(h[i2][j], y);
                    }
                }
                const int expect = i == i2 ? val(s[i], x) : 0;
                o.require(sum == expect, "independent ortho1 fails at " + x.str());
            }
            int cross = 0;
            for (int j = 0; j < 2; ++j) {
                for (int l = 0; l < 2; ++l) {
                    const Rational y = (x + l) / 2;
                    cross += val(h[i][j], y) * val(g[0][j], y);
                }
            }
            o.require(cross == 0, "independent ortho3 fails at " + x.str());
        }
    }
    if (o.pass) {
        o.detail = "all relations exact; independent check on 56 points";
    }
    return o;
}

Outcome criterion_4() {
    Outcome o;
    std::mt19937_64 rng(20240401);
    double worst = 0.0;
    int banks = 0;
    for (int mu_index = 0; mu_index < 20; ++mu_index) {
        const auto mf = gmra::testing::random_multiplicity(rng);
        const auto cm = conjugate(mf);
        for (int b = 0; b < 5; ++b) {
            const auto bank = generate_random_bank(mf, cm, rng());
            const auto field = assemble_unitary(flatten(bank));
            for (const auto& k : field.values()) {
                // ‖K*K − I‖ computed directly from the entries.
                for (std::size_t r = 0; r < k.cols(); ++r) {
                    for (std::size_t c = 0; c < k.cols(); ++c) {
                        Complex dot{};
                        for (std::size_t i = 0; i < k.rows(); ++i) {
                            dot += std::conj(k(i, r)) * k(i, c);
                        }
                        worst = std::max(worst, std::abs(dot - Complex(r == c ? 1.0 : 0.0)));
                    }
                }
            }
            ++banks;
        }
    }
    o.require(worst <= 1e-12, "residual " + fmt(worst));
    o.detail = std::to_string(banks) + " banks over 20 mu, worst |K*K - I| = " + fmt(worst);
    return o;
}

Outcome criterion_5() {
    Outcome o;
    std::mt19937_64 rng(77);
    double worst_round = 0.0;
    double worst_identity = 0.0;
    for (int p = 0; p < 100; ++p) {
        const auto mf = gmra::testing::random_multiplicity(rng);
        const auto m = gmra::testing::random_msystem(mf, rng());
        const auto target = gmra::testing::random_msystem(mf, rng());
        const auto k = connecting_element(m, target);
        worst_round = std::max(worst_round, max_residual(act(k, m), target));
        const auto self = connecting_element(m, m);
        worst_identity = std::max(worst_identity, max_residual(self, LoopElement<Complex>::identity(mf, m.cm())));
    }
    o.require(worst_round <= 1e-12, "round trip residual " + fmt(worst_round));
    o.require(worst_identity <= 1e-13, "self-connection residual " + fmt(worst_identity));
    o.detail = "100 pairs, round trip " + fmt(worst_round) + ", self " + fmt(worst_identity);
    return o;
}

Outcome criterion_6() {
    Outcome o;
    std::mt19937_64 rng(4242);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto mf = gmra::testing::random_multiplicity(rng);
        const auto cm = conjugate(mf);
        const auto m = gmra::testing::random_msystem(mf, rng());
        const auto k1 = random_loop_element(mf, cm, rng());
        const auto k2 = random_loop_element(mf, cm, rng());
        worst = std::max(worst, max_residual(act(compose(k1, k2), m), act(k1, act(k2, m))));
    }
    o.require(worst <= 1e-12, "residual " + fmt(worst));
    o.detail = "50 triples, worst " + fmt(worst);
    return o;
}

Outcome criterion_7() {
    Outcome o;
    const int n = 2;
    const double root = std::numbers::sqrt2;
    const auto mf = unit_multiplicity(n);
    const auto cm = conjugate(mf);
    const auto k = random_loop_element(mf, cm, 99);
    // True classical filter values m_i(x) (not normalized).
    auto classical = [&](const ClassicalMSystem& msys, std::size_t i, const Rational& x) {
        const auto& f = msys.filters[i];
        if (f.is_piecewise()) {
            return f.piecewise().at(x).to_complex() * root;
        }
        Complex sum{};
        for (const auto& [v, a] : f.trig().coefficients()) {
            sum += a * std::polar(1.0, -2.0 * std::numbers::pi * (x * v).frac().to_double());
        }
        return sum;
    };
    double worst_act = 0.0;
    double worst_connect = 0.0;
    const ClassicalMSystem systems[] = {haar_msystem(), shannon_msystem()};
    std::vector<MSystem<Complex>> embedded;
    for (const auto& msys : systems) {
        const auto m = embed_classical(msys);
        embedded.push_back(m);
        const auto moved = act(k, m);
        for (long j = 0; j < 4096; ++j) {
            const Rational x(j, 4096);
            const auto& kx = k(TorusPoint(x * n));
            for (std::size_t r = 0; r < 2; ++r) {
                Complex expect{};
                for (std::size_t c = 0; c < 2; ++c) {
                    expect += kx(r, c) * classical(msys, c, x);
                }
                worst_act = std::max(worst_act, std::abs(moved.value(r, 0, TorusPoint(x)) * root - expect));
            }
        }
    }
    // Haar → Shannon connecting section against the classical formula.
    const auto connect = connecting_element(embedded[0], embedded[1]);
    for (long j = 0; j < 4096; ++j) {
        const Rational x(j, 4096);
        const auto& kx = connect(TorusPoint(x));
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                Complex expect{};
                for (int l = 0; l < n; ++l) {
                    const Rational y = (x + l) / n;
                    expect += classical(systems[1], r, y) * std::conj(classical(systems[0], c, y));
                }
                expect /= static_cast<double>(n);
                worst_connect = std::max(worst_connect, std::abs(kx(r, c) - expect));
            }
        }
    }
    o.require(worst_act <= 1e-12, "action residual " + fmt(worst_act));
    o.require(worst_connect <= 1e-12, "connecting residual " + fmt(worst_connect));
    o.detail = "2^12 grid, action " + fmt(worst_act) + ", connecting " + fmt(worst_connect);
    return o;
}

Outcome criterion_8() {
    Outcome o;
    const auto haar = haar_msystem();
    const auto shannon = shannon_msystem();
    const auto hl = check_classical_lowpass(haar.filters[0], 2);
    const auto sl = check_classical_lowpass(shannon.filters[0], 2);
    o.require(hl.value_at_zero.pass && hl.power_sum.pass && hl.cohen.pass, "Haar low-pass");
    o.require(sl.value_at_zero.pass && sl.power_sum.pass && sl.cohen.pass && sl.exact, "Shannon low-pass");
    const auto hh = check_classical_highpass(haar);
    const auto sh = check_classical_highpass(shannon);
    o.require(hh.pass && hh.worst_residual <= 1e-12, "Haar unitarity " + fmt(hh.worst_residual));
    o.require(sh.pass && sh.worst_residual == 0.0, "Shannon unitarity not exact");
    o.detail = "Haar power-sum " + fmt(hl.power_sum.worst_residual) + ", unitarity " + fmt(hh.worst_residual) +
               "; Shannon exact";
    return o;
}

Outcome criterion_9() {
    Outcome o;
    const auto shannon = shannon_msystem();
    const auto haar = haar_msystem();
    const Rational step(1, 1024);
    for (int depth = 1; depth <= 16; ++depth) {
        // The depth-J product is 2^J periodic; use [−2, 2] or its largest
        // sub-window of one period.
        const Rational reach = depth == 1 ? Rational(1) : Rational(2);
        const auto phi = scaling_function(shannon.filters[0], 2, depth, make_grid(-reach, reach, step));
        for (std::size_t k = 0; k < phi.size(); ++k) {
            const Rational x = phi.point(k);
            const bool inside = Rational(-1, 2) <= x && x < Rational(1, 2);
            o.require(phi.values[k] == Complex(inside ? 1.0 : 0.0), "Shannon phi wrong at " + x.str());
        }
    }
    const auto grid = make_grid(Rational(-64), Rational(64), step);
    const auto phi16 = scaling_function(haar.filters[0], 2, 16, grid);
    const double norm = phi16.norm_squared();
    o.require(norm >= 0.99 && norm <= 1.01, "Haar norm " + fmt(norm));
    for (int depth = 7; depth < 16; ++depth) {
        const auto lhs = scaling_function(haar.filters[0], 2, depth + 1, grid);
        const auto rhs = deepen(scaling_function(haar.filters[0], 2, depth, grid), haar.filters[0], 2, depth + 1);
        o.require(lhs.values == rhs.values, "telescoping fails at depth " + std::to_string(depth));
    }
    o.detail = "Shannon exact for J=1..16, Haar |phi_16|^2 = " + fmt(norm) + ", telescoping bitwise";
    return o;
}

Outcome criterion_10() {
    Outcome o;
    const auto psi = shannon_wavelet();
    const auto s = frame_sum(psi, {psi}, 2, {-2, 2}, {-8, 8});
    o.require(std::abs(s.sum - 1.0) <= 1e-12, "Shannon sum " + fmt(s.sum));
    const IndicatorWavelet f({{Rational(2, 7), Rational(1, 2)}});
    const auto j = frame_sum(f, {journe_wavelet()}, 2, {-6, 6}, {-64, 64});
    o.require(std::abs(j.target - 3.0 / 14.0) <= 1e-15, "Journe target");
    o.require(j.ratio() >= 0.98, "Journe ratio " + fmt(j.ratio()));
    o.detail = "Shannon |sum - 1| = " + fmt(std::abs(s.sum - 1.0)) + ", Journe ratio " + fmt(j.ratio());
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "Journe matrix reproduction", 1, criterion_1},
        {2, "Journe consistency", 1, criterion_2},
        {3, "Orthogonality suite", 1, criterion_3},
        {4, "Randomized unitarity", 30, criterion_4},
        {5, "Transitivity round trip", 60, criterion_5},
        {6, "Group-action axioms", 30, criterion_6},
        {7, "Classical consistency", 10, criterion_7},
        {8, "Classical filter conditions", 5, criterion_8},
        {9, "Scaling/wavelet construction", 30, criterion_9},
        {10, "Frame diagnostics", 120, criterion_10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_s) {
            o.require(false, "over budget");
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ["
                  << std::fixed << std::setprecision(3) << seconds << "s / " << std::setprecision(0) << c.budget_s
                  << "s] " << o.detail << std::defaultfloat << '\n';
    }
    return failures == 0 ? 0 : 1;
}

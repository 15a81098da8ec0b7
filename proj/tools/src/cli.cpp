#include "gmra/cli/cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gmra/cli/documents.hpp"

namespace gmra::cli {

namespace {

struct Io {
    std::istream& in;
    std::ostream& out;
    bool stdin_used = false;

    Json read(const std::string& path) {
        std::string text;
        if (path.empty() || path == "-") {
            if (stdin_used) {
                throw SchemaError("standard input can supply only one document");
            }
            stdin_used = true;
            text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        } else {
            std::ifstream file(path);
            if (!file) {
                throw SchemaError("cannot open " + path);
            }
            text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
        }
        return parse_document(text);
    }

    void emit(const Json& doc) { out << doc.dump(2) << '\n'; }
};

Json report(std::string_view command) {
    Json r = header("report");
    r["command"] = std::string(command);
    return r;
}

int verdict_exit(bool pass) { return pass ? kExitPass : kExitFail; }

// Copies the name and cell of the first failing check to the top level.
void name_first_failure(Json& r, const Json& checks) {
    for (const auto& c : checks) {
        if (!c.value("pass", true)) {
            r["equation"] = c.value("name", "");
            r["cell"] = c.contains("worst_cell") ? c["worst_cell"] : Json();
            return;
        }
    }
}

Rational parse_rational(const std::string& text, const char* option) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument&) {
        throw SchemaError(std::string(option) + ": expected a rational p/q, got \"" + text + "\"");
    }
}

std::optional<Rational> optional_rational(const std::string& text, const char* option) {
    if (text.empty()) {
        return std::nullopt;
    }
    return parse_rational(text, option);
}

bool is_exact(const Json& doc) {
    if (kind_of(doc) == "classical-msystem") {
        return classical_from_json(doc).all_piecewise();
    }
    return scalar_of(doc) == "exact";
}

template <class F>
int dispatch(bool exact, F&& f) {
    return exact ? f.template operator()<ExactComplex>() : f.template operator()<Complex>();
}

template <FilterScalar S>
MSystem<S> load_msystem(const Json& doc, double tolerance, int grid_exponent) {
    const std::string kind = kind_of(doc);
    if (kind == "classical-msystem") {
        const auto msys = classical_from_json(doc);
        if constexpr (ScalarTraits<S>::exact) {
            return embed_classical_exact(msys);
        } else {
            return embed_classical(msys, grid_exponent);
        }
    }
    if constexpr (!ScalarTraits<S>::exact) {
        if (scalar_of(doc) == "exact") {
            return to_numeric(load_msystem<ExactComplex>(doc, tolerance, grid_exponent));
        }
    }
    if (kind == "bank") {
        return flatten(bank_from_json<S>(doc), tolerance);
    }
    if (kind == "msystem") {
        return msystem_from_json<S>(doc);
    }
    throw SchemaError("expected a bank, msystem or classical-msystem document, got \"" + kind + "\"");
}

template <FilterScalar S>
LoopElement<S> load_loop(const Json& doc) {
    if constexpr (!ScalarTraits<S>::exact) {
        if (scalar_of(doc) == "exact") {
            return to_numeric(loop_from_json<ExactComplex>(doc));
        }
    }
    return loop_from_json<S>(doc);
}

Json int_fn(const PiecewiseFn<int>& f) {
    Json bps = Json::array();
    Json vals = Json::array();
    for (std::size_t k = 0; k < f.cells(); ++k) {
        bps.push_back(f.partition().breakpoints()[k].str());
        vals.push_back(f.values()[k]);
    }
    return Json{{"breakpoints", std::move(bps)}, {"values", std::move(vals)}};
}

std::string row_label(std::size_t row, int c) {
    const auto ci = static_cast<std::size_t>(c);
    return row < ci ? "h" + std::to_string(row + 1) : "g" + std::to_string(row - ci + 1);
}

// ---------------------------------------------------------------- mu-*

int mu_check(Io& io, const std::string& path, const std::string& radius_text) {
    const auto mf = multiplicity_from_json(io.read(path));
    const auto radius = optional_rational(radius_text, "--radius");
    Json r = report("mu-check");
    const auto consistency = check_consistency(mf);
    Json cons{{"pass", consistency.pass}};
    if (consistency.violating_cell) {
        cons["violating_cell"] = consistency.violating_cell->str();
        cons["mu"] = consistency.mu_value;
        cons["preimage_sum"] = consistency.preimage_sum;
    }
    const auto near = check_constant_near(mf.function(), dilation_lattice(mf.dilation()), radius);
    Json checks = Json::array();
    for (const auto& c : near.checks) {
        checks.push_back(Json{{"point", c.point.value().str()}, {"radius", c.radius.str()}, {"pass", c.pass}});
    }
    const bool pass = consistency.pass && near.pass;
    r["pass"] = pass;
    r["N"] = mf.dilation();
    r["c"] = mf.c();
    if (consistency.pass) {
        r["d"] = conjugate(mf).d;
    }
    r["consistency"] = std::move(cons);
    r["constant_near_lattice"] = std::move(checks);
    io.emit(r);
    return verdict_exit(pass);
}

int mu_conjugate(Io& io, const std::string& path) {
    const auto mf = multiplicity_from_json(io.read(path));
    Json r = report("mu-conjugate");
    try {
        const auto cm = conjugate(mf);
        const auto fiber = fiber_dimension(mf, cm);
        r["pass"] = true;
        r["c"] = mf.c();
        r["d"] = cm.d;
        r["conjugate"] = int_fn(cm.function);
        r["preimage_sum"] = int_fn(mf.preimage_sum().simplified());
        r["mu_plus_conjugate"] = int_fn(fiber.simplified());
        io.emit(r);
        return kExitPass;
    } catch (const NegativeConjugate& e) {
        r["pass"] = false;
        r["equation"] = "consistency";
        r["cell"] = e.cell().str();
        r["mu"] = e.mu_value();
        r["preimage_sum"] = e.preimage_sum();
        io.emit(r);
        return kExitFail;
    }
}

int mu_levelsets(Io& io, const std::string& path) {
    const auto mf = multiplicity_from_json(io.read(path));
    const auto cm = conjugate(mf);
    const auto ls = level_sets(mf, cm);
    const auto parts = index_partitions(mf, cm);
    Json r = report("mu-levelsets");
    r["pass"] = true;
    r["c"] = mf.c();
    r["d"] = cm.d;
    Json s = Json::object();
    for (std::size_t i = 0; i < ls.s.size(); ++i) {
        s[std::to_string(i + 1)] = Json{{"set", ls.s[i].str()}, {"measure", ls.s[i].measure().str()}};
    }
    Json st = Json::object();
    for (std::size_t i = 0; i < ls.s_tilde.size(); ++i) {
        st[std::to_string(i + 1)] = Json{{"set", ls.s_tilde[i].str()}, {"measure", ls.s_tilde[i].measure().str()}};
    }
    Json t = Json::object();
    for (const auto& [j, set] : parts.t) {
        t[std::to_string(j)] = set.str();
    }
    Json ti = Json::object();
    for (const auto& [ij, set] : parts.ti) {
        ti[std::to_string(ij.first) + "," + std::to_string(ij.second)] = set.str();
    }
    Json z = Json::object();
    for (const auto& [j, set] : parts.z) {
        z[std::to_string(j)] = set.str();
    }
    r["S"] = std::move(s);
    r["S_tilde"] = std::move(st);
    r["T"] = std::move(t);
    r["T_ij"] = std::move(ti);
    r["Z"] = std::move(z);
    io.emit(r);
    return kExitPass;
}

// ---------------------------------------------------------------- msystem-*

template <FilterScalar S>
bool verify_bank(const GeneralizedFilterBank<S>& bank, double tolerance, Json& checks) {
    const auto ortho = verify_orthogonality(bank, tolerance);
    for (const auto* v : {&ortho.ortho1, &ortho.ortho2, &ortho.ortho3, &ortho.support, &ortho.lowpass}) {
        checks.push_back(to_json(*v));
    }
    Json regularity = to_json(ortho.regularity);
    regularity["informational"] = true;
    checks.push_back(std::move(regularity));
    if (!ortho.relations_hold()) {
        return false;
    }
    const auto m = flatten(bank, tolerance);
    const auto unitary = check_unitary_field(m, tolerance);
    const auto columns = verify_column_orthogonality(m, tolerance);
    checks.push_back(to_json(unitary.unitarity));
    checks.push_back(to_json(unitary.forced_zeros));
    Json col = to_json(columns);
    col["name"] = "column-orthogonality";
    checks.push_back(std::move(col));
    return ortho.pass() && unitary.pass() && columns.pass;
}

int msystem_verify(Io& io, const std::string& path, double tolerance, int grid_exponent) {
    const Json doc = io.read(path);
    const std::string kind = kind_of(doc);
    Json r = report("msystem-verify");
    Json checks = Json::array();
    bool pass = true;
    if (kind == "classical-msystem") {
        const auto msys = classical_from_json(doc);
        if (msys.filters.empty()) {
            throw SchemaError("classical-msystem: no filters");
        }
        ClassicalCheckOptions options;
        options.tolerance = tolerance;
        options.grid_exponent = std::min(grid_exponent, 16);
        const auto low = check_classical_lowpass(msys.filters[0], msys.n, options);
        const auto high = check_classical_highpass(msys, options);
        for (const auto* v : {&low.value_at_zero, &low.power_sum, &low.regularity, &low.cohen, &high}) {
            checks.push_back(to_json(*v));
        }
        pass = low.pass() && high.pass;
        r["scalar"] = msys.all_piecewise() ? "exact" : "float";
        if (pass) {
            Json embedded = Json::array();
            const bool ok = dispatch(msys.all_piecewise(), [&]<class S>() {
                return verify_bank(unflatten(load_msystem<S>(doc, tolerance, grid_exponent)), tolerance, embedded);
            });
            r["embedded"] = std::move(embedded);
            pass = pass && ok;
        }
    } else if (kind == "bank" || kind == "msystem") {
        r["scalar"] = scalar_of(doc);
        pass = dispatch(is_exact(doc), [&]<class S>() {
            const auto bank = kind == "bank" ? bank_from_json<S>(doc) : unflatten(msystem_from_json<S>(doc));
            return verify_bank(bank, tolerance, checks);
        });
    } else {
        throw SchemaError("msystem-verify: expected a bank, msystem or classical-msystem document");
    }
    r["pass"] = pass;
    name_first_failure(r, checks);
    if (!r.contains("equation") && r.contains("embedded")) {
        name_first_failure(r, r["embedded"]);
    }
    r["checks"] = std::move(checks);
    io.emit(r);
    return verdict_exit(pass);
}

template <FilterScalar S>
Json matrix_entry(const MSystem<S>& m, const TorusPoint& x, const Cell& cell, double tolerance, bool& pass) {
    const auto& mf = m.mf();
    const auto& cm = m.cm();
    const auto k = fiber_matrix(m, x);
    Json rows = Json::array();
    for (auto row : fiber_rows(mf(x), cm(x), mf.c())) {
        rows.push_back(row_label(row, mf.c()));
    }
    Json cols = Json::array();
    for (const auto& p : preimage_list(mf, x)) {
        cols.push_back("(" + std::to_string(p.l) + "," + std::to_string(p.j) + ")");
    }
    const double residual = k.unitarity_residual();
    const bool unitary = ScalarTraits<S>::exact ? k.is_exactly_unitary() : residual <= tolerance;
    const double zeros = forced_zero_residual(m, x);
    const bool zeros_ok = ScalarTraits<S>::exact ? zeros == 0.0 : zeros <= tolerance;
    pass = pass && unitary && zeros_ok;
    Json e{{"cell", cell.str()}, {"mu", mf(x)}, {"mu_tilde", cm(x)}, {"rows", std::move(rows)},
           {"columns", std::move(cols)}};
    e["matrix"] = matrix_to_json(k);
    e["unitary"] = unitary;
    e["unitarity_residual"] = residual;
    e["forced_zero_residual"] = zeros;
    return e;
}

int msystem_matrix(Io& io, const std::string& path, const std::string& at, double tolerance, int grid_exponent) {
    const Json doc = io.read(path);
    const auto point = optional_rational(at, "--at");
    return dispatch(is_exact(doc), [&]<class S>() {
        const auto m = load_msystem<S>(doc, tolerance, grid_exponent);
        const auto part = preimage_partition(m.mf(), m.cm(), {m.joint_partition()});
        Json r = report("msystem-matrix");
        r["scalar"] = ScalarTraits<S>::name;
        bool pass = true;
        if (point) {
            const TorusPoint x(*point);
            r["at"] = point->str();
            r.update(matrix_entry(m, x, part.cell(part.locate(x)), tolerance, pass));
        } else {
            Json cells = Json::array();
            for (std::size_t k = 0; k < part.size(); ++k) {
                cells.push_back(matrix_entry(m, TorusPoint(part.breakpoints()[k]), part.cell(k), tolerance, pass));
            }
            r["cells"] = std::move(cells);
        }
        r["pass"] = pass;
        io.emit(r);
        return verdict_exit(pass);
    });
}

int msystem_random(Io& io, const std::string& mu_path, std::uint64_t seed, int splits) {
    const auto mf = mu_path.empty() ? journe_multiplicity() : multiplicity_from_json(io.read(mu_path));
    const auto cm = conjugate(mf);
    RandomBankOptions options;
    options.splits_per_cell = splits;
    io.emit(to_json(generate_random_bank(mf, cm, seed, options)));
    return kExitPass;
}

// ---------------------------------------------------------------- loop-*

int loop_act(Io& io, const std::string& loop_path, const std::string& msys_path, double tolerance,
             int grid_exponent) {
    const Json kdoc = io.read(loop_path);
    const Json mdoc = io.read(msys_path);
    return dispatch(is_exact(kdoc) && is_exact(mdoc), [&]<class S>() {
        const auto k = load_loop<S>(kdoc);
        const auto m = load_msystem<S>(mdoc, tolerance, grid_exponent);
        io.emit(to_json(act(k, m, tolerance)));
        return kExitPass;
    });
}

int loop_connect(Io& io, const std::string& from_path, const std::string& to_path, double tolerance,
                 int grid_exponent) {
    const Json a = io.read(from_path);
    const Json b = io.read(to_path);
    return dispatch(is_exact(a) && is_exact(b), [&]<class S>() {
        const auto from = load_msystem<S>(a, tolerance, grid_exponent);
        const auto to = load_msystem<S>(b, tolerance, grid_exponent);
        io.emit(to_json(connecting_element(from, to, tolerance)));
        return kExitPass;
    });
}

int loop_verify(Io& io, const std::string& path, const std::string& radius_text, double tolerance) {
    const Json doc = io.read(path);
    const auto radius = optional_rational(radius_text, "--radius");
    return dispatch(is_exact(doc), [&]<class S>() {
        const auto rep = is_loop_element(load_loop<S>(doc), radius, tolerance);
        Json r = report("loop-verify");
        r["pass"] = rep.pass();
        r["radius"] = rep.radius.str();
        const Json checks = Json::array({to_json(rep.unitarity), to_json(rep.dimension),
                                         to_json(rep.identity_at_zero), to_json(rep.constant_near_zero)});
        name_first_failure(r, checks);
        r["checks"] = checks;
        io.emit(r);
        return verdict_exit(rep.pass());
    });
}

int loop_compose(Io& io, const std::string& first, const std::string& second) {
    const Json a = io.read(first);
    const Json b = io.read(second);
    return dispatch(is_exact(a) && is_exact(b), [&]<class S>() {
        io.emit(to_json(compose(load_loop<S>(a), load_loop<S>(b))));
        return kExitPass;
    });
}

// ---------------------------------------------------------------- wavelets

ClassicalMSystem named_classical(Io& io, const std::string& name) {
    if (name == "haar") {
        return haar_msystem();
    }
    if (name == "shannon") {
        return shannon_msystem();
    }
    return classical_from_json(io.read(name));
}

void write_csv(std::ostream& out, const FrequencyGridFn& g, const char* label) {
    out << "x," << label << "_re," << label << "_im," << label << "_abs\n";
    out << std::setprecision(17);
    for (std::size_t k = 0; k < g.size(); ++k) {
        out << g.x(k) << ',' << g.values[k].real() << ',' << g.values[k].imag() << ',' << std::abs(g.values[k])
            << '\n';
    }
}

int scaling(Io& io, const std::string& filter, int depth, const std::string& lo, const std::string& hi,
            const std::string& step, int wavelet, const std::string& format) {
    const auto msys = named_classical(io, filter);
    if (msys.filters.empty()) {
        throw SchemaError("scaling: the m-system has no filters");
    }
    auto grid = make_grid(parse_rational(lo, "--lo"), parse_rational(hi, "--hi"), parse_rational(step, "--grid-step"));
    auto phi = scaling_function(msys.filters[0], msys.n, depth, std::move(grid));
    FrequencyGridFn out = phi;
    const char* label = "phi";
    if (wavelet > 0) {
        const auto family = wavelet_family(msys, phi);
        if (static_cast<std::size_t>(wavelet) > family.size()) {
            throw SchemaError("--wavelet must be between 1 and N-1");
        }
        out = family[static_cast<std::size_t>(wavelet - 1)];
        label = "psi";
    }
    if (format == "json") {
        io.emit(to_json(out));
    } else {
        write_csv(io.out, out, label);
    }
    return kExitPass;
}

int frame_check(Io& io, const std::string& wavelet, const std::string& f_path, int jmax, int vmax,
                double min_ratio) {
    if (jmax < 0 || vmax < 0) {
        throw SchemaError("--jmax and --vmax must be nonnegative");
    }
    const IndicatorWavelet psi = wavelet == "journe" ? journe_wavelet() : shannon_wavelet();
    const Json doc = io.read(f_path);
    const Range j_range{-jmax, jmax};
    const Range v_range{-vmax, vmax};
    FrameSum sum;
    std::string path;
    if (kind_of(doc) == "indicator") {
        sum = frame_sum(indicator_from_json(doc), {psi}, 2, j_range, v_range);
        path = "closed-form";
    } else if (kind_of(doc) == "grid-function") {
        const auto f = grid_from_json(doc);
        const auto& ivs = psi.intervals();
        const Rational lo = Rational(mpq_class((ivs.front().first / f.step).floor())) * f.step;
        const Rational hi = Rational(mpq_class((ivs.back().second / f.step).floor() + 1)) * f.step;
        sum = frame_sum(f, {psi.sample(lo, hi, f.step)}, 2, j_range, v_range);
        path = "quadrature";
    } else {
        throw SchemaError("frame-check: --f must be an indicator or grid-function document");
    }
    const bool pass = sum.ratio() >= min_ratio;
    Json r = report("frame-check");
    r["pass"] = pass;
    r["wavelet"] = wavelet;
    r["path"] = path;
    r["j_range"] = Json::array({j_range.lo, j_range.hi});
    r["v_range"] = Json::array({v_range.lo, v_range.hi});
    r["sum"] = sum.sum;
    r["target"] = sum.target;
    r["ratio"] = sum.ratio();
    r["min_ratio"] = min_ratio;
    io.emit(r);
    return verdict_exit(pass);
}

int example(Io& io, const std::string& name, const std::string& as) {
    if (name == "journe") {
        if (as == "multiplicity") {
            io.emit(to_json(journe_multiplicity()));
        } else if (as == "msystem") {
            io.emit(to_json(journe_msystem()));
        } else if (as == "wavelet") {
            io.emit(to_json(journe_wavelet()));
        } else {
            io.emit(to_json(journe_bank()));
        }
        return kExitPass;
    }
    const auto msys = name == "haar" ? haar_msystem() : shannon_msystem();
    if (as == "multiplicity") {
        io.emit(to_json(unit_multiplicity(2)));
    } else if (as == "wavelet" && name == "shannon") {
        io.emit(to_json(shannon_wavelet()));
    } else if (as == "msystem") {
        if (msys.all_piecewise()) {
            io.emit(to_json(embed_classical_exact(msys)));
        } else {
            io.emit(to_json(embed_classical(msys)));
        }
    } else {
        io.emit(to_json(msys));
    }
    return kExitPass;
}

Json failure(const std::string& command, const std::string& equation, const std::string& message) {
    Json r = report(command);
    r["pass"] = false;
    r["equation"] = equation;
    r["error"] = message;
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized multiresolution analysis toolkit", "gmra"};
    app.require_subcommand(1);
    Io io{in, out};
    std::function<int()> action;

    double tolerance = kDefaultTolerance;
    int grid_exponent = 13;
    std::string input;
    std::string radius;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tolerance", tolerance, "Residual tolerance for float data")->capture_default_str();
    };

    auto* mu_check_cmd = app.add_subcommand("mu-check", "Consistency and neighbourhood checks for mu");
    mu_check_cmd->add_option("input", input, "multiplicity document (default: stdin)");
    mu_check_cmd->add_option("--radius", radius, "Constancy radius p/q around each l/N");
    mu_check_cmd->callback([&] { action = [&] { return mu_check(io, input, radius); }; });

    auto* mu_conj_cmd = app.add_subcommand("mu-conjugate", "Conjugate multiplicity");
    mu_conj_cmd->add_option("input", input, "multiplicity document (default: stdin)");
    mu_conj_cmd->callback([&] { action = [&] { return mu_conjugate(io, input); }; });

    auto* mu_ls_cmd = app.add_subcommand("mu-levelsets", "Level sets S_i, S~_k, T_j, T_ij, Z_j");
    mu_ls_cmd->add_option("input", input, "multiplicity document (default: stdin)");
    mu_ls_cmd->callback([&] { action = [&] { return mu_levelsets(io, input); }; });

    auto* verify_cmd = app.add_subcommand("msystem-verify", "Orthogonality and unitarity of a filter bank");
    verify_cmd->add_option("input", input, "bank, msystem or classical-msystem document (default: stdin)");
    verify_cmd->add_option("--grid-exponent", grid_exponent, "Sampling exponent p (grid k/2^p) for trig filters")
        ->capture_default_str();
    add_common(verify_cmd);
    verify_cmd->callback([&] { action = [&] { return msystem_verify(io, input, tolerance, grid_exponent); }; });

    std::string at;
    auto* matrix_cmd = app.add_subcommand("msystem-matrix", "Cross-section matrix K(x)");
    matrix_cmd->add_option("input", input, "bank, msystem or classical-msystem document (default: stdin)");
    matrix_cmd->add_option("--at", at, "Point p/q; all cells when omitted");
    matrix_cmd->add_option("--grid-exponent", grid_exponent, "Sampling exponent for trig filters")
        ->capture_default_str();
    add_common(matrix_cmd);
    matrix_cmd->callback([&] { action = [&] { return msystem_matrix(io, input, at, tolerance, grid_exponent); }; });

    std::uint64_t seed = 0;
    int splits = 1;
    std::string mu_path;
    auto* random_cmd = app.add_subcommand("msystem-random", "Random filter bank over mu");
    random_cmd->add_option("--seed", seed, "64-bit seed")->required();
    random_cmd->add_option("--mu", mu_path, "multiplicity document (default: the Journe mu)");
    random_cmd->add_option("--splits", splits, "Random breakpoints per cell")->capture_default_str();
    random_cmd->callback([&] { action = [&] { return msystem_random(io, mu_path, seed, splits); }; });

    std::string loop_path;
    std::string msys_path;
    auto* act_cmd = app.add_subcommand("loop-act", "Apply a loop element to an M-system");
    act_cmd->add_option("--loop", loop_path, "loop-element document")->required();
    act_cmd->add_option("--msystem", msys_path, "M-system document (default: stdin)");
    act_cmd->add_option("--grid-exponent", grid_exponent, "Sampling exponent for trig filters")->capture_default_str();
    add_common(act_cmd);
    act_cmd->callback([&] { action = [&] { return loop_act(io, loop_path, msys_path, tolerance, grid_exponent); }; });

    std::string from_path;
    std::string to_path;
    auto* connect_cmd = app.add_subcommand("loop-connect", "Loop element carrying one M-system to another");
    connect_cmd->add_option("--from", from_path, "source M-system")->required();
    connect_cmd->add_option("--to", to_path, "target M-system")->required();
    connect_cmd->add_option("--grid-exponent", grid_exponent, "Sampling exponent for trig filters")
        ->capture_default_str();
    add_common(connect_cmd);
    connect_cmd->callback(
        [&] { action = [&] { return loop_connect(io, from_path, to_path, tolerance, grid_exponent); }; });

    auto* lverify_cmd = app.add_subcommand("loop-verify", "Loop-group membership");
    lverify_cmd->add_option("input", input, "loop-element document (default: stdin)");
    lverify_cmd->add_option("--radius", radius, "Radius p/q of the identity neighbourhood of 0");
    add_common(lverify_cmd);
    lverify_cmd->callback([&] { action = [&] { return loop_verify(io, input, radius, tolerance); }; });

    std::string first;
    std::string second;
    auto* compose_cmd = app.add_subcommand("loop-compose", "Pointwise product K1 K2");
    compose_cmd->add_option("first", first, "K1 (\"-\" for stdin)")->required();
    compose_cmd->add_option("second", second, "K2 (\"-\" for stdin)")->required();
    compose_cmd->callback([&] { action = [&] { return loop_compose(io, first, second); }; });

    std::string filter = "haar";
    int depth = 16;
    std::string lo = "-2";
    std::string hi = "2";
    std::string step = "1/1024";
    int wavelet_index = 0;
    std::string format = "csv";
    auto* scaling_cmd = app.add_subcommand("scaling", "Truncated scaling function (CSV)");
    scaling_cmd->add_option("--filter", filter, "haar, shannon or a classical-msystem file")->capture_default_str();
    scaling_cmd->add_option("--depth", depth, "Number of factors J")->capture_default_str();
    scaling_cmd->add_option("--lo", lo, "Grid start p/q")->capture_default_str();
    scaling_cmd->add_option("--hi", hi, "Grid end p/q")->capture_default_str();
    scaling_cmd->add_option("--grid-step", step, "Grid step p/q")->capture_default_str();
    scaling_cmd->add_option("--wavelet", wavelet_index, "Emit Psi_k instead of Phi");
    scaling_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    scaling_cmd->callback(
        [&] { action = [&] { return scaling(io, filter, depth, lo, hi, step, wavelet_index, format); }; });

    std::string wavelet = "journe";
    std::string f_path;
    int jmax = 6;
    int vmax = 64;
    double min_ratio = 0.0;
    auto* frame_cmd = app.add_subcommand("frame-check", "Truncated frame sum against the norm of f");
    frame_cmd->add_option("--wavelet", wavelet, "journe or shannon")
        ->check(CLI::IsMember({"journe", "shannon"}))
        ->capture_default_str();
    frame_cmd->add_option("--f", f_path, "indicator or grid-function document (default: stdin)");
    frame_cmd->add_option("--jmax", jmax, "Scales j in [-jmax, jmax]")->capture_default_str();
    frame_cmd->add_option("--vmax", vmax, "Translations v in [-vmax, vmax]")->capture_default_str();
    frame_cmd->add_option("--min-ratio", min_ratio, "Fail when sum/|f|^2 is below this")->capture_default_str();
    frame_cmd->callback([&] { action = [&] { return frame_check(io, wavelet, f_path, jmax, vmax, min_ratio); }; });

    std::string example_name;
    std::string as = "default";
    auto* example_cmd = app.add_subcommand("example", "Write a built-in fixture");
    example_cmd->add_option("name", example_name, "journe, haar or shannon")
        ->required()
        ->check(CLI::IsMember({"journe", "haar", "shannon"}));
    example_cmd->add_option("--as", as, "bank|msystem|multiplicity|wavelet")
        ->check(CLI::IsMember({"default", "bank", "msystem", "multiplicity", "wavelet"}));
    example_cmd->callback([&] { action = [&] { return example(io, example_name, as); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) {
            return kExitPass;
        }
        err << app.help();
        return kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return action();
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NegativeConjugate& e) {
        io.emit(failure(command, "consistency", e.what()));
        return kExitFail;
    } catch (const NotUnitary& e) {
        io.emit(failure(command, "unitarity", e.what()));
        return kExitFail;
    } catch (const InvalidFilterBank& e) {
        io.emit(failure(command, "orthogonality", e.what()));
        return kExitFail;
    } catch (const DimensionMismatch& e) {
        io.emit(failure(command, "dimension", e.what()));
        return kExitFail;
    } catch (const std::domain_error& e) {
        io.emit(failure(command, "domain", e.what()));
        return kExitFail;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace gmra::cli
